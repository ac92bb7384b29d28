#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace namecast {

// Given-name lexicon: lowercased name -> probability the name is male.
// File format: UTF-8 CSV, header "name,p_male".
class NameLexicon {
public:
    static NameLexicon from_csv(std::string_view bytes);
    static NameLexicon from_file(const std::string& path);

    bool contains(std::string_view name) const;
    std::optional<double> p_male(std::string_view name) const;

    // Gender of a mention surface: exact lookup, then the first token of a
    // multi-token surface ("Kevin Lomax" -> "Kevin"). Unknown -> 0.5.
    double surface_p_male(std::string_view surface) const;

    std::size_t size() const { return names_.size(); }
    void insert(std::string_view name, double p_male);

private:
    std::map<std::string, double> names_;
};

}  // namespace namecast
