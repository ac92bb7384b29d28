#include "namecast/evaluation.hpp"

#include <algorithm>
#include <cstdio>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"
#include "namecast/rng.hpp"

namespace namecast {

const std::string& AliasMap::resolve(const std::string& name) const {
    auto it = pairs.find(name);
    return it == pairs.end() ? name : it->second;
}

PrfScores weighted_prf(const std::vector<std::string>& predictions, const GoldAnnotation& gold,
                       const AliasMap& aliases) {
    for (const auto& [pos, _] : gold.labels)
        if (pos < 0 || pos >= static_cast<int>(predictions.size()))
            throw ParseError("evaluation: gold position " + std::to_string(pos) +
                             " has no prediction (" + std::to_string(predictions.size()) +
                             " predictions)");

    // confusion counts over gold positions, predictions alias-resolved
    std::map<std::string, long long> support, predicted, correct;
    for (const auto& [pos, gold_name] : gold.labels) {
        const std::string& pred = aliases.resolve(predictions[pos]);
        ++support[gold_name];
        ++predicted[pred];
        if (pred == gold_name) ++correct[gold_name];
    }

    long long total = 0;
    for (const auto& [_, s] : support) total += s;

    PrfScores out;
    for (const auto& [name, sup] : support) {
        long long tp = correct.count(name) ? correct[name] : 0;
        long long pred_count = predicted.count(name) ? predicted[name] : 0;
        double p = pred_count > 0 ? static_cast<double>(tp) / pred_count : 0.0;
        double r = static_cast<double>(tp) / sup;
        double f = p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
        double w = static_cast<double>(sup) / total;
        out.precision += w * p;
        out.recall += w * r;
        out.fscore += w * f;
    }
    return out;
}

EvalReport make_report(const std::vector<std::pair<std::string, PrfScores>>& per_video) {
    EvalReport report;
    report.per_video = per_video;
    for (const auto& [_, s] : per_video) {
        report.aggregate.precision += s.precision;
        report.aggregate.recall += s.recall;
        report.aggregate.fscore += s.fscore;
    }
    if (!per_video.empty()) {
        double n = static_cast<double>(per_video.size());
        report.aggregate.precision /= n;
        report.aggregate.recall /= n;
        report.aggregate.fscore /= n;
    }
    return report;
}

BaselineKind parse_baseline_kind(std::string_view name) {
    if (name == "B1") return BaselineKind::B1;
    if (name == "B2") return BaselineKind::B2;
    if (name == "B3") return BaselineKind::B3;
    throw ConfigError("unknown baseline kind '" + std::string(name) + "' (use B1, B2 or B3)");
}

std::vector<std::string> baseline(BaselineKind kind, const CharacterRoster& roster,
                                  int n_segments, const std::map<int, double>& gender_probs,
                                  std::uint64_t seed) {
    const int k = roster.size();
    if (k == 0) throw ParseError("baseline: empty roster");

    std::vector<std::string> out;
    out.reserve(n_segments);

    if (kind == BaselineKind::B1) {
        int best = 0;
        for (int j = 1; j < k; ++j)
            if (roster.prior[j] > roster.prior[best]) best = j;
        out.assign(n_segments, roster.clusters[best].canonical);
        return out;
    }

    Rng rng(seed);
    for (int i = 0; i < n_segments; ++i) {
        std::vector<double> weights = roster.prior;
        if (kind == BaselineKind::B3) {
            auto it = gender_probs.find(i);
            double p_audio = it == gender_probs.end() ? 0.5 : it->second;
            std::vector<double> restricted(k, 0.0);
            double mass = 0;
            for (int j = 0; j < k; ++j) {
                double p_name = roster.clusters[j].p_male_name;
                bool same_side = (p_audio > 0.5 && p_name > 0.5) || (p_audio < 0.5 && p_name < 0.5);
                if (same_side) {
                    restricted[j] = roster.prior[j];
                    mass += roster.prior[j];
                }
            }
            if (mass > 0) weights = restricted;
        }
        out.push_back(roster.clusters[rng.sample_discrete(weights)].canonical);
    }
    return out;
}

GoldAnnotation load_gold(std::string_view bytes) {
    std::vector<std::string> lines = split_lines(bytes);
    if (lines.empty()) throw ParseError("gold file: empty");
    if (trim(lines[0]) != "segment_pos,speaker")
        throw ParseError("gold file: expected header 'segment_pos,speaker'");
    GoldAnnotation gold;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        std::vector<std::string> fields = split_csv_line(lines[row]);
        std::string where = "gold row " + std::to_string(row + 1);
        if (fields.size() != 2) throw ParseError(where + ": needs 2 fields");
        int pos = static_cast<int>(parse_int(fields[0], where));
        std::string name = trim(fields[1]);
        if (name.empty()) throw ParseError(where + ": empty speaker name");
        if (!gold.labels.emplace(pos, name).second)
            throw ParseError(where + ": duplicate segment_pos");
    }
    return gold;
}

AliasMap load_aliases(std::string_view bytes) {
    std::vector<std::string> lines = split_lines(bytes);
    if (lines.empty()) throw ParseError("alias file: empty");
    if (trim(lines[0]) != "alias,gold_name")
        throw ParseError("alias file: expected header 'alias,gold_name'");
    AliasMap aliases;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        std::vector<std::string> fields = split_csv_line(lines[row]);
        std::string where = "alias row " + std::to_string(row + 1);
        if (fields.size() != 2) throw ParseError(where + ": needs 2 fields");
        aliases.pairs[trim(fields[0])] = trim(fields[1]);
    }
    // no chains: targets may not themselves be aliased to something else
    for (const auto& [alias, gold] : aliases.pairs) {
        auto hop = aliases.pairs.find(gold);
        if (hop != aliases.pairs.end() && hop->second != gold)
            throw ParseError("alias file: chained alias '" + alias + "' -> '" + gold + "' -> '" +
                             hop->second + "'");
    }
    return aliases;
}

std::string format_report_csv(const EvalReport& report) {
    std::string out = "video,weighted_precision,weighted_recall,weighted_fscore\n";
    auto row = [&](const std::string& name, const PrfScores& s) {
        out += name;
        out += ',';
        out += format_double(s.precision);
        out += ',';
        out += format_double(s.recall);
        out += ',';
        out += format_double(s.fscore);
        out += '\n';
    };
    for (const auto& [name, scores] : report.per_video) row(name, scores);
    row("aggregate", report.aggregate);
    return out;
}

std::string format_report_summary(const EvalReport& report) {
    std::string out;
    char buf[160];
    for (const auto& [name, s] : report.per_video) {
        std::snprintf(buf, sizeof(buf), "%-24s P %.4f  R %.4f  F %.4f\n", name.c_str(),
                      s.precision, s.recall, s.fscore);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "%-24s P %.4f  R %.4f  F %.4f\n", "aggregate",
                  report.aggregate.precision, report.aggregate.recall, report.aggregate.fscore);
    out += buf;
    return out;
}

}  // namespace namecast
