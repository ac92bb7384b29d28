#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "namecast/constraints.hpp"
#include "namecast/features.hpp"
#include "namecast/optimizer.hpp"
#include "namecast/srt.hpp"

namespace namecast {

// Recipe for a seeded synthetic movie. Dialogue is built from the reference
// classifier's own trigger templates so the whole pipeline runs on it.
struct SynthSpec {
    int characters = 8;   // K
    int segments = 500;   // n (dialogue turns; bracketed noise blocks come extra)
    double label_rate = 0.05;   // first-person self-introductions
    double second_rate = 0.20;  // vocatives of the scene partner
    double third_rate = 0.15;   // mentions of absent characters
    int dim_text = 30;
    int dim_acoustic = 40;
    int dim_visual = 64;
    double sigma_text = 1.0;
    double sigma_acoustic = 1.0;
    double sigma_visual = 1.0;
    double visual_coverage = 1.0;   // fraction of segments with a visual vector
    double gender_accuracy = 0.9;   // voice gender lands on the correct side
    std::uint64_t seed = 0;
};

struct SynthMovie {
    std::vector<SubtitleSegment> segments;  // raw, includes bracketed noise blocks
    std::vector<std::string> gold;          // speaker per cleaned position
    ModalityVectors text, acoustic, visual;
    std::map<int, double> gender_probs;
    std::vector<std::pair<std::string, std::string>> aliases;  // identity pairs
    std::vector<std::pair<std::string, double>> lexicon_rows;
    std::vector<std::string> character_names;
};

// Deterministic for a fixed spec; throws ConfigError on invalid fields.
SynthMovie generate(const SynthSpec& spec);

// Materializes movie.srt, embeddings_*.csv, gender_probs.csv, gold.csv,
// aliases.csv, lexicon.csv and a ready-to-run config.txt under dir.
void write_synth_dir(const SynthMovie& movie, const SynthSpec& spec, const std::string& dir);

struct GridOracleResult {
    double objective = 0;
    Eigen::MatrixXd argmin_f;
};

// Exhaustive minimum of the objective over all row-stochastic matrices whose
// rows lie on the simplex grid of the given resolution. Enforces n <= 4 and
// K <= 3; resolution must divide 1 evenly.
GridOracleResult grid_oracle(const ConstraintSet& c, const SimilarityGraph& g,
                             const CharacterRoster& roster, const LossWeights& lw,
                             double resolution);

// All grid points of the (k-1)-simplex at 1/m spacing, enumeration order
// deterministic.
std::vector<Eigen::VectorXd> simplex_grid(int k, int m);

}  // namespace namecast
