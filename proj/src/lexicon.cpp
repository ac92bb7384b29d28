#include "namecast/lexicon.hpp"

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"
#include "namecast/text.hpp"

namespace namecast {

NameLexicon NameLexicon::from_csv(std::string_view bytes) {
    NameLexicon lex;
    std::vector<std::string> lines = split_lines(bytes);
    if (lines.empty()) throw ParseError("name lexicon: empty file");
    if (trim(lines[0]) != "name,p_male")
        throw ParseError("name lexicon: expected header 'name,p_male'");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        std::vector<std::string> fields = split_csv_line(lines[i]);
        if (fields.size() != 2)
            throw ParseError("name lexicon: row " + std::to_string(i + 1) + " needs 2 fields");
        double p = parse_double(fields[1], "name lexicon row " + std::to_string(i + 1));
        if (p < 0.0 || p > 1.0)
            throw ParseError("name lexicon: row " + std::to_string(i + 1) +
                             " p_male outside [0,1]");
        lex.insert(trim(fields[0]), p);
    }
    return lex;
}

NameLexicon NameLexicon::from_file(const std::string& path) {
    return from_csv(read_file(path));
}

void NameLexicon::insert(std::string_view name, double p) {
    names_[lowercase(name)] = p;
}

bool NameLexicon::contains(std::string_view name) const {
    return names_.count(lowercase(name)) > 0;
}

std::optional<double> NameLexicon::p_male(std::string_view name) const {
    auto it = names_.find(lowercase(name));
    if (it == names_.end()) return std::nullopt;
    return it->second;
}

double NameLexicon::surface_p_male(std::string_view surface) const {
    if (auto p = p_male(surface)) return *p;
    std::size_t space = surface.find(' ');
    if (space != std::string_view::npos)
        if (auto p = p_male(surface.substr(0, space))) return *p;
    return 0.5;
}

}  // namespace namecast
