#include "namecast/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"

namespace namecast {

ConstraintSet build_constraints(const std::vector<NameMention>& mentions,
                                const CharacterRoster& roster,
                                const std::map<int, double>& gender_probs, int n_instances,
                                int window) {
    if (window < 1) throw ConfigError("constraint window must be at least 1");

    ConstraintSet out;
    out.n = n_instances;
    out.prior = roster.prior;
    out.p_male_audio = gender_probs;

    std::set<std::pair<int, int>> positives;
    std::set<std::pair<int, int>> negatives;
    std::vector<ConstraintSet::MiTarget> mi;

    for (const NameMention& m : mentions) {
        int cls = roster.class_of(m.surface);
        if (cls < 0) continue;  // surface did not survive roster filtering
        int i = m.segment_pos;
        if (i < 0 || i >= n_instances) continue;

        switch (m.ref_type) {
            case RefType::First:
                positives.emplace(i, cls);
                break;
            case RefType::Second:
                for (int delta = 1; delta <= window; ++delta) {
                    double s = 1.0 / (1.0 + delta);
                    if (i - delta >= 0) mi.push_back({i - delta, cls, s});
                    if (i + delta < n_instances) mi.push_back({i + delta, cls, s});
                }
                break;
            case RefType::Third:
                for (int t : {i - 1, i, i + 1})
                    if (t >= 0 && t < n_instances) negatives.emplace(t, cls);
                break;
        }
    }

    // positive evidence dominates
    for (const auto& p : positives) negatives.erase(p);
    std::erase_if(mi, [&](const ConstraintSet::MiTarget& t) {
        return positives.count({t.instance, t.cls}) > 0;
    });

    out.positives.assign(positives.begin(), positives.end());
    out.negatives.assign(negatives.begin(), negatives.end());
    std::sort(mi.begin(), mi.end());
    out.mi_targets = std::move(mi);
    return out;
}

std::map<int, double> load_gender_probs(std::string_view bytes) {
    std::vector<std::string> lines = split_lines(bytes);
    if (lines.empty()) throw ParseError("gender probabilities: empty file");
    if (trim(lines[0]) != "segment_pos,p_male")
        throw ParseError("gender probabilities: expected header 'segment_pos,p_male'");

    std::map<int, double> out;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        std::vector<std::string> fields = split_csv_line(lines[row]);
        std::string where = "gender probabilities row " + std::to_string(row + 1);
        if (fields.size() != 2) throw ParseError(where + ": needs 2 fields");
        int pos = static_cast<int>(parse_int(fields[0], where));
        double p = parse_double(fields[1], where);
        if (!std::isfinite(p) || p < 0.0 || p > 1.0)
            throw ParseError(where + ": p_male outside [0,1]");
        if (!out.emplace(pos, p).second)
            throw ParseError(where + ": duplicate segment_pos " + std::to_string(pos));
    }
    return out;
}

}  // namespace namecast
