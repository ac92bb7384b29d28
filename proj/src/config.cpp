#include "namecast/config.hpp"

#include <filesystem>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"

namespace namecast {

namespace {

std::vector<std::string> split_semicolons(const std::string& value) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        std::size_t semi = value.find(';', start);
        std::string piece =
            trim(semi == std::string::npos ? value.substr(start) : value.substr(start, semi - start));
        if (!piece.empty()) out.push_back(piece);
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

double config_double(const std::string& value, const std::string& key) {
    try {
        return parse_double(value, key);
    } catch (const ParseError&) {
        throw ConfigError("config key '" + key + "': bad numeric value '" + value + "'");
    }
}

long long config_int(const std::string& value, const std::string& key) {
    try {
        return parse_int(value, key);
    } catch (const ParseError&) {
        throw ConfigError("config key '" + key + "': bad integer value '" + value + "'");
    }
}

}  // namespace

std::string PipelineConfig::resolve_path(const std::string& p) const {
    if (p.empty()) return p;
    std::filesystem::path fp(p);
    if (fp.is_absolute() || base_dir.empty()) return p;
    return (std::filesystem::path(base_dir) / fp).string();
}

PipelineConfig parse_config(std::string_view text, const std::string& base_dir) {
    PipelineConfig cfg;
    cfg.base_dir = base_dir;

    std::vector<std::string> lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::string line = lines[ln];
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(ln + 1) +
                              ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(ln + 1) + ": empty key");

        if (key == "srt") cfg.srt = value;
        else if (key == "lexicon") cfg.lexicon = value;
        else if (key == "embeddings_text") cfg.embeddings_text = value;
        else if (key == "embeddings_acoustic") cfg.embeddings_acoustic = value;
        else if (key == "embeddings_visual") cfg.embeddings_visual = value;
        else if (key == "gender_probs") cfg.gender_probs = value;
        else if (key == "gold") cfg.gold = value;
        else if (key == "aliases") cfg.aliases = value;
        else if (key == "predictions") cfg.predictions = value;
        else if (key == "trace") cfg.trace = value;
        else if (key == "report") cfg.report = value;
        else if (key == "roster") cfg.roster = value;
        else if (key == "synth_dir") cfg.synth_dir = value;
        else if (key == "lambda1") cfg.lambdas.initial = config_double(value, key);
        else if (key == "lambda2") cfg.lambdas.mi = config_double(value, key);
        else if (key == "lambda3") cfg.lambdas.negative = config_double(value, key);
        else if (key == "lambda4") cfg.lambdas.gender = config_double(value, key);
        else if (key == "lambda5") cfg.lambdas.distribution = config_double(value, key);
        else if (key == "alpha_text") cfg.modality_weights.text = config_double(value, key);
        else if (key == "alpha_acoustic") cfg.modality_weights.acoustic = config_double(value, key);
        else if (key == "alpha_visual") cfg.modality_weights.visual = config_double(value, key);
        else if (key == "window") cfg.window = static_cast<int>(config_int(value, key));
        else if (key == "top_k") cfg.top_k = static_cast<int>(config_int(value, key));
        else if (key == "step_size") cfg.solver.step_size = config_double(value, key);
        else if (key == "max_iters") cfg.solver.max_iters = static_cast<int>(config_int(value, key));
        else if (key == "tolerance") cfg.solver.tolerance = config_double(value, key);
        else if (key == "backtrack") cfg.solver.backtrack = config_double(value, key);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(config_int(value, key));
        else if (key == "baseline") cfg.baseline_kind = value;
        else if (key == "first_triggers") cfg.reference_rules.first_triggers = split_semicolons(value);
        else if (key == "greeting_triggers") cfg.reference_rules.greeting_triggers = split_semicolons(value);
        else if (key == "synth_characters") cfg.synth.characters = static_cast<int>(config_int(value, key));
        else if (key == "synth_segments") cfg.synth.segments = static_cast<int>(config_int(value, key));
        else if (key == "synth_label_rate") cfg.synth.label_rate = config_double(value, key);
        else if (key == "synth_second_rate") cfg.synth.second_rate = config_double(value, key);
        else if (key == "synth_third_rate") cfg.synth.third_rate = config_double(value, key);
        else if (key == "synth_dim_text") cfg.synth.dim_text = static_cast<int>(config_int(value, key));
        else if (key == "synth_dim_acoustic") cfg.synth.dim_acoustic = static_cast<int>(config_int(value, key));
        else if (key == "synth_dim_visual") cfg.synth.dim_visual = static_cast<int>(config_int(value, key));
        else if (key == "synth_sigma_text") cfg.synth.sigma_text = config_double(value, key);
        else if (key == "synth_sigma_acoustic") cfg.synth.sigma_acoustic = config_double(value, key);
        else if (key == "synth_sigma_visual") cfg.synth.sigma_visual = config_double(value, key);
        else if (key == "synth_visual_coverage") cfg.synth.visual_coverage = config_double(value, key);
        else if (key == "synth_gender_accuracy") cfg.synth.gender_accuracy = config_double(value, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }

    cfg.synth.seed = cfg.seed;
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::string text = read_file(path);
    std::string dir = std::filesystem::path(path).parent_path().string();
    return parse_config(text, dir);
}

}  // namespace namecast
