#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "namecast/features.hpp"
#include "namecast/optimizer.hpp"
#include "namecast/reference.hpp"
#include "namecast/synth.hpp"

namespace namecast {

// Flat "key = value" configuration, one pair per line, '#' comments.
// Relative paths resolve against the config file's directory.
struct PipelineConfig {
    // inputs
    std::string srt;
    std::string lexicon;
    std::string embeddings_text;      // falls back to internal tf-idf when empty
    std::string embeddings_acoustic;
    std::string embeddings_visual;
    std::string gender_probs;
    std::string gold;
    std::string aliases;

    // outputs (predictions doubles as evaluate's input)
    std::string predictions;
    std::string trace;
    std::string report;
    std::string roster;
    std::string synth_dir;

    LossWeights lambdas;
    ModalityWeights modality_weights;
    int window = 2;
    int top_k = 20;
    SolverConfig solver;
    std::uint64_t seed = 0;
    std::string baseline_kind = "B3";

    ReferenceRules reference_rules = ReferenceRules::defaults();

    SynthSpec synth;

    std::string base_dir;  // directory of the config file
    std::string resolve_path(const std::string& p) const;
};

PipelineConfig parse_config(std::string_view text, const std::string& base_dir);
PipelineConfig load_config(const std::string& path);

}  // namespace namecast
