#include "namecast/pipeline.hpp"

#include <filesystem>
#include <iostream>
#include <set>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"
#include "namecast/reference.hpp"
#include "namecast/synth.hpp"

namespace namecast {

namespace {

std::string require_key(const std::string& value, const char* key) {
    if (value.empty()) throw ConfigError(std::string("missing config key '") + key + "'");
    return value;
}

}  // namespace

PipelineData prepare(const PipelineConfig& cfg) {
    PipelineData data;

    std::string srt_path = cfg.resolve_path(require_key(cfg.srt, "srt"));
    data.segments = clean_segments(parse_srt(read_file(srt_path)));

    std::string lex_path = cfg.resolve_path(require_key(cfg.lexicon, "lexicon"));
    data.lexicon = NameLexicon::from_file(lex_path);

    data.mentions = extract_mentions(data.segments, data.lexicon);
    for (NameMention& m : data.mentions)
        m.ref_type = classify_reference(data.segments[m.segment_pos].clean_text, m,
                                        cfg.reference_rules);

    std::vector<NameCluster> clusters = cluster_names(data.mentions, data.lexicon);
    data.roster = build_roster(clusters, data.mentions);

    if (!cfg.gender_probs.empty())
        data.gender_probs = load_gender_probs(read_file(cfg.resolve_path(cfg.gender_probs)));
    return data;
}

SimilarityGraph build_graph(const PipelineConfig& cfg,
                            const std::vector<SubtitleSegment>& segments) {
    std::vector<ModalityVectors> mods;

    if (!cfg.embeddings_text.empty())
        mods.push_back(load_embeddings(read_file(cfg.resolve_path(cfg.embeddings_text)),
                                       Modality::Text));
    else if (cfg.modality_weights.text > 0)
        mods.push_back(compute_tfidf(segments));

    if (!cfg.embeddings_acoustic.empty())
        mods.push_back(load_embeddings(read_file(cfg.resolve_path(cfg.embeddings_acoustic)),
                                       Modality::Acoustic));
    if (!cfg.embeddings_visual.empty())
        mods.push_back(load_embeddings(read_file(cfg.resolve_path(cfg.embeddings_visual)),
                                       Modality::Visual));

    return fuse_similarities(static_cast<int>(segments.size()), mods, cfg.modality_weights,
                             cfg.top_k);
}

ConstraintSet build_movie_constraints(const PipelineConfig& cfg, const PipelineData& data) {
    return build_constraints(data.mentions, data.roster, data.gender_probs,
                             static_cast<int>(data.segments.size()), cfg.window);
}

void run_extract_names(const PipelineConfig& cfg) {
    PipelineData data = prepare(cfg);
    std::string out = cfg.resolve_path(require_key(cfg.roster, "roster"));
    write_file(out, format_roster_csv(data.roster));
}

SolveResult run_solve(const PipelineConfig& cfg, bool force_trace) {
    std::string pred_path = cfg.resolve_path(require_key(cfg.predictions, "predictions"));
    if (force_trace && cfg.trace.empty()) throw ConfigError("missing config key 'trace'");

    PipelineData data = prepare(cfg);
    SimilarityGraph graph = build_graph(cfg, data.segments);
    ConstraintSet constraints = build_movie_constraints(cfg, data);

    SolveResult result = solve_pgd(constraints, graph, data.roster, cfg.lambdas, cfg.solver);

    write_file(pred_path, format_predictions_csv(predict_names(result.f, data.roster)));
    if (!cfg.trace.empty())
        write_file(cfg.resolve_path(cfg.trace), format_trace_csv(result.trace));
    return result;
}

EvalReport run_evaluate(const PipelineConfig& cfg) {
    std::string pred_path = cfg.resolve_path(require_key(cfg.predictions, "predictions"));
    std::vector<std::string> predictions = load_predictions_csv(read_file(pred_path));

    GoldAnnotation gold = load_gold(read_file(cfg.resolve_path(require_key(cfg.gold, "gold"))));
    AliasMap aliases;
    if (!cfg.aliases.empty()) aliases = load_aliases(read_file(cfg.resolve_path(cfg.aliases)));

    std::string video = std::filesystem::path(cfg.srt.empty() ? pred_path : cfg.srt)
                            .stem()
                            .string();
    PrfScores scores = weighted_prf(predictions, gold, aliases);
    EvalReport report = make_report({{video, scores}});

    std::string report_path = cfg.resolve_path(require_key(cfg.report, "report"));
    write_file(report_path, format_report_csv(report));
    std::cout << format_report_summary(report);
    return report;
}

void run_baseline(const PipelineConfig& cfg) {
    PipelineData data = prepare(cfg);
    BaselineKind kind = parse_baseline_kind(cfg.baseline_kind);
    std::vector<std::string> names =
        baseline(kind, data.roster, static_cast<int>(data.segments.size()), data.gender_probs,
                 cfg.seed);
    std::string pred_path = cfg.resolve_path(require_key(cfg.predictions, "predictions"));
    write_file(pred_path, format_predictions_csv(names));
}

void run_synth(const PipelineConfig& cfg) {
    std::string dir = cfg.resolve_path(require_key(cfg.synth_dir, "synth_dir"));
    SynthMovie movie = generate(cfg.synth);
    write_synth_dir(movie, cfg.synth, dir);
}

int run_subcommand(const std::string& subcommand, const std::string& config_path) {
    static const std::set<std::string> known = {"extract-names", "solve",    "trace",
                                                "evaluate",      "baseline", "synth"};
    if (!known.count(subcommand)) {
        std::cerr << "unknown subcommand '" << subcommand << "'\n";
        return 1;
    }
    try {
        PipelineConfig cfg = load_config(config_path);
        if (subcommand == "extract-names") {
            run_extract_names(cfg);
        } else if (subcommand == "solve") {
            run_solve(cfg, false);
        } else if (subcommand == "trace") {
            run_solve(cfg, true);
        } else if (subcommand == "evaluate") {
            run_evaluate(cfg);
        } else if (subcommand == "baseline") {
            run_baseline(cfg);
        } else {
            run_synth(cfg);
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

std::string format_predictions_csv(const std::vector<std::string>& names) {
    std::string out = "segment_pos,name\n";
    for (std::size_t i = 0; i < names.size(); ++i)
        out += std::to_string(i) + "," + names[i] + "\n";
    return out;
}

std::vector<std::string> load_predictions_csv(std::string_view bytes) {
    std::vector<std::string> lines = split_lines(bytes);
    if (lines.empty()) throw ParseError("predictions: empty file");
    if (trim(lines[0]) != "segment_pos,name")
        throw ParseError("predictions: expected header 'segment_pos,name'");
    std::vector<std::string> names;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        std::vector<std::string> fields = split_csv_line(lines[row]);
        std::string where = "predictions row " + std::to_string(row + 1);
        if (fields.size() != 2) throw ParseError(where + ": needs 2 fields");
        long long pos = parse_int(fields[0], where);
        if (pos != static_cast<long long>(names.size()))
            throw ParseError(where + ": positions must be dense from 0");
        names.push_back(trim(fields[1]));
    }
    return names;
}

std::string format_roster_csv(const CharacterRoster& roster) {
    std::string out = "canonical,aliases,count_first,count_second,count_third,p_male_name,prior\n";
    for (int j = 0; j < roster.size(); ++j) {
        const NameCluster& c = roster.clusters[j];
        out += c.canonical;
        out += ',';
        std::string joined;
        for (const std::string& alias : c.aliases) {
            if (!joined.empty()) joined += ';';
            joined += alias;
        }
        out += joined;
        out += ',';
        out += std::to_string(c.count_first);
        out += ',';
        out += std::to_string(c.count_second);
        out += ',';
        out += std::to_string(c.count_third);
        out += ',';
        out += format_double(c.p_male_name);
        out += ',';
        out += format_double(roster.prior[j]);
        out += '\n';
    }
    return out;
}

}  // namespace namecast
