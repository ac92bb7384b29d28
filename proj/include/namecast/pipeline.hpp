#pragma once

#include <string>
#include <vector>

#include "namecast/config.hpp"
#include "namecast/constraints.hpp"
#include "namecast/evaluation.hpp"
#include "namecast/features.hpp"
#include "namecast/names.hpp"
#include "namecast/optimizer.hpp"
#include "namecast/srt.hpp"

namespace namecast {

// Ingested movie state shared by the solve/baseline/extract paths.
struct PipelineData {
    std::vector<SubtitleSegment> segments;  // cleaned
    NameLexicon lexicon;
    std::vector<NameMention> mentions;  // classified
    CharacterRoster roster;
    std::map<int, double> gender_probs;
};

PipelineData prepare(const PipelineConfig& cfg);

SimilarityGraph build_graph(const PipelineConfig& cfg,
                            const std::vector<SubtitleSegment>& segments);

ConstraintSet build_movie_constraints(const PipelineConfig& cfg, const PipelineData& data);

// Subcommand bodies. Each writes the artifacts named by the config.
void run_extract_names(const PipelineConfig& cfg);
SolveResult run_solve(const PipelineConfig& cfg, bool force_trace);
EvalReport run_evaluate(const PipelineConfig& cfg);
void run_baseline(const PipelineConfig& cfg);
void run_synth(const PipelineConfig& cfg);

// Dispatch by subcommand name; returns a process exit code (0 ok, 1 usage,
// 2 data error, 3 numerical failure).
int run_subcommand(const std::string& subcommand, const std::string& config_path);

std::string format_predictions_csv(const std::vector<std::string>& names);
std::vector<std::string> load_predictions_csv(std::string_view bytes);
std::string format_roster_csv(const CharacterRoster& roster);

}  // namespace namecast
