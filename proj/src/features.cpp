#include "namecast/features.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"
#include "namecast/text.hpp"

namespace namecast {

std::string modality_name(Modality m) {
    switch (m) {
        case Modality::Text: return "text";
        case Modality::Acoustic: return "acoustic";
        case Modality::Visual: return "visual";
    }
    return "?";
}

double ModalityWeights::of(Modality m) const {
    switch (m) {
        case Modality::Text: return text;
        case Modality::Acoustic: return acoustic;
        case Modality::Visual: return visual;
    }
    return 0.0;
}

ModalityVectors compute_tfidf(const std::vector<SubtitleSegment>& segments) {
    const std::size_t n = segments.size();

    std::vector<std::map<std::string, int>> counts(n);
    std::map<std::string, int> df;
    for (std::size_t i = 0; i < n; ++i) {
        for (const Token& t : tokenize(segments[i].clean_text)) ++counts[i][lowercase(t.text)];
        for (const auto& [word, _] : counts[i]) ++df[word];
    }

    std::map<std::string, int> vocab_index;  // sorted by construction
    int dim = 0;
    for (const auto& [word, _] : df) vocab_index[word] = dim++;

    ModalityVectors out;
    out.modality = Modality::Text;
    out.dim = dim;
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
        for (const auto& [word, tf] : counts[i]) {
            double idf = std::log(static_cast<double>(n) / df[word]);
            v[vocab_index[word]] = tf * idf;
        }
        out.vectors.emplace(static_cast<int>(i), std::move(v));
    }
    return out;
}

ModalityVectors load_embeddings(std::string_view bytes, Modality modality) {
    std::vector<std::string> lines = split_lines(bytes);
    if (lines.empty()) throw ParseError("embeddings: empty file");

    std::vector<std::string> header = split_csv_line(trim(lines[0]));
    if (header.size() < 2 || header[0] != "segment_pos")
        throw ParseError("embeddings: expected header 'segment_pos,v0,...'");
    for (std::size_t k = 1; k < header.size(); ++k)
        if (header[k] != "v" + std::to_string(k - 1))
            throw ParseError("embeddings: bad header column '" + header[k] + "'");
    const int dim = static_cast<int>(header.size()) - 1;

    ModalityVectors out;
    out.modality = modality;
    out.dim = dim;
    for (std::size_t row = 1; row < lines.size(); ++row) {
        if (trim(lines[row]).empty()) continue;
        std::vector<std::string> fields = split_csv_line(lines[row]);
        std::string where = "embeddings row " + std::to_string(row + 1);
        if (static_cast<int>(fields.size()) != dim + 1)
            throw ParseError(where + ": ragged row (" + std::to_string(fields.size() - 1) +
                             " values, expected " + std::to_string(dim) + ")");
        int pos = static_cast<int>(parse_int(fields[0], where));
        if (pos < 0) throw ParseError(where + ": negative segment_pos");
        Eigen::VectorXd v(dim);
        for (int k = 0; k < dim; ++k) {
            v[k] = parse_double(fields[k + 1], where);
            if (!std::isfinite(v[k])) throw ParseError(where + ": non-finite value");
        }
        if (!out.vectors.emplace(pos, std::move(v)).second)
            throw ParseError(where + ": duplicate segment_pos " + std::to_string(pos));
    }
    return out;
}

SimilarityGraph fuse_similarities(int n, const std::vector<ModalityVectors>& mods,
                                  const ModalityWeights& weights, int top_k) {
    if (mods.empty()) throw ParseError("fuse_similarities: no modalities given");
    double weight_sum = 0;
    for (const ModalityVectors& m : mods) {
        double a = weights.of(m.modality);
        if (a < 0) throw ParseError("fuse_similarities: negative modality weight");
        weight_sum += a;
    }
    if (weight_sum <= 0) throw ParseError("fuse_similarities: all modality weights are zero");

    for (const ModalityVectors& m : mods)
        for (const auto& [pos, v] : m.vectors) {
            if (pos >= n)
                throw ParseError("fuse_similarities: segment_pos " + std::to_string(pos) +
                                 " out of range (n = " + std::to_string(n) + ")");
            if (v.size() != m.dim)
                throw ParseError("fuse_similarities: inconsistent vector length in " +
                                 modality_name(m.modality));
        }

    SimilarityGraph g;
    g.n = n;
    g.modality_weights = weights;
    g.weights = Eigen::MatrixXd::Zero(n, n);

    auto pair_weight = [&](int i, int j) {
        double avail = 0, acc = 0;
        for (const ModalityVectors& m : mods) {
            double alpha = weights.of(m.modality);
            if (alpha <= 0) continue;
            auto vi = m.vectors.find(i);
            auto vj = m.vectors.find(j);
            if (vi == m.vectors.end() || vj == m.vectors.end()) continue;
            double dist = (vi->second - vj->second).norm();
            acc += alpha / (1.0 + dist);
            avail += alpha;
        }
        return avail > 0 ? acc / avail : 0.0;
    };

    // pairs are independent; rows of the upper triangle are handed to worker
    // threads, so every cell is written exactly once
    auto fill_rows = [&](std::atomic<int>& next_row) {
        for (int i = next_row.fetch_add(1); i < n; i = next_row.fetch_add(1))
            for (int j = i + 1; j < n; ++j) g.weights(i, j) = pair_weight(i, j);
    };
    unsigned workers = std::thread::hardware_concurrency();
    std::atomic<int> next_row{0};
    if (workers > 1 && n >= 128) {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back([&] { fill_rows(next_row); });
        for (std::thread& t : pool) t.join();
    } else {
        fill_rows(next_row);
    }
    g.weights.triangularView<Eigen::StrictlyLower>() =
        g.weights.triangularView<Eigen::StrictlyUpper>().transpose();

    if (top_k > 0 && top_k < n - 1) {
        Eigen::MatrixXd kept = Eigen::MatrixXd::Zero(n, n);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) {
            std::iota(order.begin(), order.end(), 0);
            std::nth_element(order.begin(), order.begin() + top_k, order.end(),
                             [&](int a, int b) {
                                 if (g.weights(i, a) != g.weights(i, b))
                                     return g.weights(i, a) > g.weights(i, b);
                                 return a < b;  // deterministic ties
                             });
            for (int r = 0; r < top_k; ++r) kept(i, order[r]) = g.weights(i, order[r]);
        }
        g.weights = kept.cwiseMax(kept.transpose());  // re-symmetrize by max
        g.weights.diagonal().setZero();
    }
    return g;
}

}  // namespace namecast
