#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "namecast/srt.hpp"

namespace namecast {

enum class Modality { Text, Acoustic, Visual };

std::string modality_name(Modality m);

// Per-segment feature vectors for one modality. Acoustic and visual vectors
// may cover only a subset of segments.
struct ModalityVectors {
    Modality modality = Modality::Text;
    int dim = 0;
    std::map<int, Eigen::VectorXd> vectors;  // segment position -> vector
};

struct ModalityWeights {
    double text = 1.0;
    double acoustic = 1.0;
    double visual = 1.0;
    double of(Modality m) const;
};

// Fused pairwise similarity w_ij: symmetric, zero diagonal, entries in [0,1].
struct SimilarityGraph {
    int n = 0;
    Eigen::MatrixXd weights;
    ModalityWeights modality_weights;
};

// tf-idf over the movie's own vocabulary: tf = raw count in the segment,
// idf = ln(n / df). Vocabulary order is sorted, so vectors are reproducible.
ModalityVectors compute_tfidf(const std::vector<SubtitleSegment>& segments);

// CSV with header "segment_pos,v0,...,v{d-1}". Throws ParseError on ragged
// rows, non-finite values, or duplicate positions.
ModalityVectors load_embeddings(std::string_view bytes, Modality modality);

// Similarity per modality is 1/(1 + euclidean distance). Weights renormalize
// over the modalities available for each pair; pairs sharing none get 0.
// top_k > 0 keeps the k largest weights per row, re-symmetrized by max.
SimilarityGraph fuse_similarities(int n, const std::vector<ModalityVectors>& mods,
                                  const ModalityWeights& weights, int top_k = 0);

}  // namespace namecast
