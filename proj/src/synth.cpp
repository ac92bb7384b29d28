#include "namecast/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"
#include "namecast/rng.hpp"

namespace namecast {

namespace {

struct PoolEntry {
    const char* name;
    double p_male;
};

// Mutually distant names (no prefix overlaps, normalized edit distance well
// above the clustering threshold), alternating genders.
constexpr PoolEntry kNamePool[] = {
    {"Alice", 0.01},     {"Marcus", 0.99},   {"Penelope", 0.01}, {"Jacob", 0.99},
    {"Winifred", 0.01},  {"Oscar", 0.99},    {"Tabitha", 0.01},  {"Henry", 0.99},
    {"Rosalind", 0.01},  {"Felix", 0.99},    {"Imogen", 0.01},   {"Walter", 0.99},
    {"Beatrix", 0.01},   {"Clement", 0.99},  {"Dorothea", 0.01}, {"Gilbert", 0.99},
    {"Lavinia", 0.01},   {"Rupert", 0.99},   {"Matilda", 0.01},  {"Edmund", 0.99},
    {"Seraphina", 0.01}, {"Ambrose", 0.99},  {"Gwendolyn", 0.01}, {"Theodore", 0.99},
    {"Harriet", 0.01},   {"Barnaby", 0.99},
};
constexpr int kPoolSize = static_cast<int>(std::size(kNamePool));

const char* kFillers[] = {
    "well, that was not what we expected to see",
    "maybe we should wait until the morning",
    "the road to the harbor is longer than it looks",
    "nobody told us the meeting had been moved",
    "it is getting late and the train will not wait",
    "we can talk about the ledger over dinner",
    "something about that letter still bothers me",
    "the lights in the old house were on again",
    "you should have seen the look on their faces",
    "there is nothing left for us in this town",
    "the rain has not stopped since we arrived",
    "someone left the gate open last night",
};
constexpr int kFillerCount = static_cast<int>(std::size(kFillers));

std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string first_template(Rng& rng, const std::string& name) {
    switch (rng.uniform_int(0, 2)) {
        case 0: return "I'm " + name + ".";
        case 1: return "My name is " + name + ".";
        default: return "Call me " + name + ".";
    }
}

std::string second_template(Rng& rng, const std::string& name) {
    switch (rng.uniform_int(0, 3)) {
        case 0: return "Oh, hi, " + name + ".";
        case 1: return "Hey, " + name + "!";
        case 2: return "You did well, " + name + ".";
        default: return name + "!";
    }
}

std::string third_template(Rng& rng, const std::string& name) {
    switch (rng.uniform_int(0, 3)) {
        case 0: return "So how did it go with " + name + "?";
        case 1: return name + " left early this morning.";
        case 2: return "We heard " + name + " is coming back.";
        default: return "Has anyone seen " + name + " today?";
    }
}

void validate(const SynthSpec& s) {
    auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
    if (s.characters < 1) throw ConfigError("synth: characters must be at least 1");
    if (s.characters > kPoolSize)
        throw ConfigError("synth: at most " + std::to_string(kPoolSize) + " characters");
    if (s.segments < s.characters) throw ConfigError("synth: need segments >= characters");
    if (!rate_ok(s.label_rate) || !rate_ok(s.second_rate) || !rate_ok(s.third_rate) ||
        !rate_ok(s.visual_coverage) || !rate_ok(s.gender_accuracy))
        throw ConfigError("synth: rates must lie in [0,1]");
    if (s.sigma_text < 0 || s.sigma_acoustic < 0 || s.sigma_visual < 0)
        throw ConfigError("synth: noise sigma must be non-negative");
    if (s.dim_text < 1 || s.dim_acoustic < 1 || s.dim_visual < 1)
        throw ConfigError("synth: modality dims must be positive");
}

// Centroid spread in feature space. Separation ~kSeparation*sqrt(2) between
// classes keeps cross-class similarity 1/(1+d) low while sigma stays
// expressed relative to the centroid scale (sigma 1 = noise as wide as the
// class layout).
constexpr double kSeparation = 24.0;

ModalityVectors make_modality(Rng& rng, Modality modality, int dim, double sigma, int n,
                              const std::vector<int>& speakers, int k, double coverage) {
    std::vector<Eigen::VectorXd> centroids(k);
    double scale = kSeparation / std::sqrt(static_cast<double>(dim));
    for (int j = 0; j < k; ++j) {
        centroids[j] = Eigen::VectorXd(dim);
        for (int d = 0; d < dim; ++d) centroids[j][d] = rng.normal() * scale;
    }
    ModalityVectors out;
    out.modality = modality;
    out.dim = dim;
    for (int i = 0; i < n; ++i) {
        bool present = coverage >= 1.0 || rng.uniform() < coverage;
        Eigen::VectorXd v(dim);
        for (int d = 0; d < dim; ++d)
            v[d] = centroids[speakers[i]][d] + sigma * rng.normal() * scale;
        if (present) out.vectors.emplace(i, std::move(v));
    }
    return out;
}

}  // namespace

SynthMovie generate(const SynthSpec& spec) {
    validate(spec);
    const int k = spec.characters;
    const int n = spec.segments;
    Rng rng(spec.seed);

    SynthMovie movie;
    std::vector<double> p_male(k);
    for (int j = 0; j < k; ++j) {
        movie.character_names.emplace_back(kNamePool[j].name);
        p_male[j] = kNamePool[j].p_male;
        movie.lexicon_rows.emplace_back(kNamePool[j].name, kNamePool[j].p_male);
        movie.aliases.emplace_back(kNamePool[j].name, kNamePool[j].name);
    }

    // skewed mention/speaking prior
    std::vector<double> pi(k);
    for (int j = 0; j < k; ++j) pi[j] = std::pow(0.82, j);

    // scene plan: alternating two-speaker scenes; the first scenes walk over
    // all characters so everyone speaks
    std::vector<int> speakers(n);
    std::vector<int> partners(n);
    std::vector<bool> interior(n, false);  // both neighbors are in the same scene
    int filled = 0;
    int scene = 0;
    while (filled < n) {
        int length = std::min(rng.uniform_int(6, 14), n - filled);
        int a, b;
        if (k == 1) {
            a = b = 0;
        } else if (scene * 2 < k) {
            a = (2 * scene) % k;
            b = (2 * scene + 1) % k;
        } else {
            a = rng.sample_discrete(pi);
            std::vector<double> rest = pi;
            rest[a] = 0;
            b = rng.sample_discrete(rest);
        }
        for (int t = 0; t < length; ++t) {
            speakers[filled + t] = t % 2 == 0 ? a : b;
            partners[filled + t] = t % 2 == 0 ? b : a;
            interior[filled + t] = t > 0 && t + 1 < length;
        }
        filled += length;
        ++scene;
    }

    // dialogue with planted references; second and third person mentions stay
    // clear of scene boundaries so their neighborhood cues are truthful
    std::vector<std::string> lines(n);
    std::vector<long long> non_third(k, 0);
    for (int i = 0; i < n; ++i) {
        int spk = speakers[i];
        std::string text = capitalize(kFillers[rng.uniform_int(0, kFillerCount - 1)]) + ".";
        if (rng.uniform() < spec.label_rate) {
            text += " " + first_template(rng, movie.character_names[spk]);
            ++non_third[spk];
        }
        if (k > 1 && rng.uniform() < spec.second_rate && interior[i]) {
            text += " " + second_template(rng, movie.character_names[partners[i]]);
            ++non_third[partners[i]];
        }
        if (k > 2 && rng.uniform() < spec.third_rate && interior[i]) {
            std::vector<double> others = pi;
            others[spk] = 0;
            others[partners[i]] = 0;
            int absent = rng.sample_discrete(others);
            text += " " + third_template(rng, movie.character_names[absent]);
        }
        lines[i] = std::move(text);
    }

    // top up so every character survives the roster filters; vocatives land
    // on interior partner turns only
    for (int j = 0; j < k; ++j) {
        if (non_third[j] >= 3) continue;
        for (int i = 0; i < n && non_third[j] < 3; ++i) {
            if (!interior[i] || speakers[i] == j || partners[i] != j) continue;
            lines[i] += " You did well, " + movie.character_names[j] + ".";
            ++non_third[j];
        }
    }

    // SRT blocks with a bracketed noise block after every 25th turn
    int block = 0;
    auto push_block = [&](const std::string& text) {
        SubtitleSegment seg;
        seg.index = ++block;
        seg.start_ms = static_cast<long long>(block) * 3000;
        seg.end_ms = seg.start_ms + 2500;
        seg.raw_text = text;
        movie.segments.push_back(std::move(seg));
    };
    for (int i = 0; i < n; ++i) {
        push_block(lines[i]);
        if ((i + 1) % 25 == 0) push_block("[distant music playing]");
    }

    for (int i = 0; i < n; ++i) movie.gold.push_back(movie.character_names[speakers[i]]);

    movie.text = make_modality(rng, Modality::Text, spec.dim_text, spec.sigma_text, n, speakers,
                               k, 1.0);
    movie.acoustic = make_modality(rng, Modality::Acoustic, spec.dim_acoustic,
                                   spec.sigma_acoustic, n, speakers, k, 1.0);
    movie.visual = make_modality(rng, Modality::Visual, spec.dim_visual, spec.sigma_visual, n,
                                 speakers, k, spec.visual_coverage);

    for (int i = 0; i < n; ++i) {
        bool male = p_male[speakers[i]] > 0.5;
        bool correct = rng.uniform() < spec.gender_accuracy;
        double magnitude = 0.2 + 0.29 * rng.uniform();
        bool report_male = correct == male;  // wrong side when the classifier errs
        movie.gender_probs[i] = report_male ? 0.5 + magnitude : 0.5 - magnitude;
    }
    return movie;
}

namespace {

std::string format_embeddings_csv(const ModalityVectors& m) {
    std::string out = "segment_pos";
    for (int d = 0; d < m.dim; ++d) out += ",v" + std::to_string(d);
    out += '\n';
    for (const auto& [pos, v] : m.vectors) {
        out += std::to_string(pos);
        for (int d = 0; d < m.dim; ++d) {
            out += ',';
            out += format_double(v[d]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace

void write_synth_dir(const SynthMovie& movie, const SynthSpec& spec, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto path = [&](const char* name) { return (fs::path(dir) / name).string(); };

    write_file(path("movie.srt"), write_srt(movie.segments));
    write_file(path("embeddings_text.csv"), format_embeddings_csv(movie.text));
    write_file(path("embeddings_acoustic.csv"), format_embeddings_csv(movie.acoustic));
    write_file(path("embeddings_visual.csv"), format_embeddings_csv(movie.visual));

    std::string gender = "segment_pos,p_male\n";
    for (const auto& [pos, p] : movie.gender_probs)
        gender += std::to_string(pos) + "," + format_double(p) + "\n";
    write_file(path("gender_probs.csv"), gender);

    std::string gold = "segment_pos,speaker\n";
    for (std::size_t i = 0; i < movie.gold.size(); ++i)
        gold += std::to_string(i) + "," + movie.gold[i] + "\n";
    write_file(path("gold.csv"), gold);

    std::string aliases = "alias,gold_name\n";
    for (const auto& [alias, name] : movie.aliases) aliases += alias + "," + name + "\n";
    write_file(path("aliases.csv"), aliases);

    std::string lexicon = "name,p_male\n";
    for (const auto& [name, p] : movie.lexicon_rows)
        lexicon += name + "," + format_double(p) + "\n";
    write_file(path("lexicon.csv"), lexicon);

    std::string config;
    config += "# synthetic movie generated with seed " + std::to_string(spec.seed) + "\n";
    config += "srt = movie.srt\n";
    config += "lexicon = lexicon.csv\n";
    config += "embeddings_text = embeddings_text.csv\n";
    config += "embeddings_acoustic = embeddings_acoustic.csv\n";
    config += "embeddings_visual = embeddings_visual.csv\n";
    config += "gender_probs = gender_probs.csv\n";
    config += "gold = gold.csv\n";
    config += "aliases = aliases.csv\n";
    config += "predictions = predictions.csv\n";
    config += "report = report.csv\n";
    config += "roster = roster.csv\n";
    config += "lambda1 = 1\nlambda2 = 1\nlambda3 = 1\nlambda4 = 1\nlambda5 = 1\n";
    config += "alpha_text = 1\nalpha_acoustic = 1\nalpha_visual = 1\n";
    // scenes alternate strictly between two speakers, so the informative
    // multiple-instance radius is one segment
    config += "window = 1\n";
    // desk-scale movies keep the dense reference graph; sparsification with
    // top_k near the smallest class size manufactures cross-class edges
    config += "top_k = 0\n";
    config += "step_size = 1\nmax_iters = 2000\ntolerance = 1e-7\nbacktrack = 0.5\n";
    config += "seed = " + std::to_string(spec.seed) + "\n";
    config += "baseline = B3\n";
    write_file(path("config.txt"), config);
}

std::vector<Eigen::VectorXd> simplex_grid(int k, int m) {
    std::vector<Eigen::VectorXd> points;
    Eigen::VectorXd point(k);
    // compositions of m into k parts, lexicographic
    std::vector<int> parts(k, 0);
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx == k - 1) {
            parts[idx] = remaining;
            for (int j = 0; j < k; ++j) point[j] = static_cast<double>(parts[j]) / m;
            points.push_back(point);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            parts[idx] = v;
            rec(idx + 1, remaining - v);
        }
    };
    rec(0, m);
    return points;
}

GridOracleResult grid_oracle(const ConstraintSet& c, const SimilarityGraph& g,
                             const CharacterRoster& roster, const LossWeights& lw,
                             double resolution) {
    const int n = c.n;
    const int k = roster.size();
    if (n < 1 || n > 4 || k < 1 || k > 3)
        throw ConfigError("grid_oracle: instance too large (need n <= 4, K <= 3)");
    if (resolution <= 0) throw ConfigError("grid_oracle: resolution must be positive");
    long long m = std::llround(1.0 / resolution);
    if (m < 1 || std::abs(m * resolution - 1.0) > 1e-9)
        throw ConfigError("grid_oracle: resolution must divide 1 evenly");

    const std::vector<Eigen::VectorXd> points = simplex_grid(k, static_cast<int>(m));
    const int np = static_cast<int>(points.size());

    // pairwise squared distances between grid points
    Eigen::MatrixXd pair_sq(np, np);
    for (int p = 0; p < np; ++p)
        for (int q = 0; q < np; ++q) pair_sq(p, q) = (points[p] - points[q]).squaredNorm();

    // per-row cost of placing a grid point on that row (all non-pairwise,
    // non-distribution terms)
    int l = 0;
    {
        std::set<int> seen;
        for (const auto& [i, j] : c.positives) seen.insert(i);
        l = static_cast<int>(seen.size());
    }
    std::vector<std::vector<double>> rowwise(n, std::vector<double>(np, 0.0));
    for (int p = 0; p < np; ++p) {
        for (const auto& [i, j] : c.positives) {
            Eigen::VectorXd diff = points[p];
            diff[j] -= 1.0;
            rowwise[i][p] += lw.initial * diff.squaredNorm() / l;
        }
        for (const ConstraintSet::MiTarget& t : c.mi_targets) {
            Eigen::VectorXd diff = points[p];
            diff[t.cls] -= 1.0;
            rowwise[t.instance][p] += lw.mi * t.weight * diff.squaredNorm();
        }
        for (const auto& [i, j] : c.negatives)
            rowwise[i][p] += lw.negative * points[p][j] * points[p][j];
        for (const auto& [i, p_audio] : c.p_male_audio) {
            if (i < 0 || i >= n) continue;
            for (int j = 0; j < k; ++j) {
                double p_name = roster.clusters[j].p_male_name;
                double coeff = 0;
                if (p_audio < 0.5 && p_name > 0.5) coeff = p_audio * (1.0 - p_name);
                if (p_audio > 0.5 && p_name < 0.5) coeff = (1.0 - p_audio) * p_name;
                rowwise[i][p] += lw.gender * coeff * points[p][j];
            }
        }
    }

    // pairwise coefficient between assigned rows
    Eigen::MatrixXd coef = lw.initial * (g.weights + g.weights.transpose()) / n;

    auto distribution_cost = [&](const Eigen::VectorXd& colsum) {
        double cost = 0;
        for (int j = 0; j < k; ++j) {
            double gap = colsum[j] / n - c.prior[j];
            cost += gap * gap;
        }
        return lw.distribution * cost;
    };

    // candidate order per row: cheapest rowwise first, to find good bounds early
    std::vector<std::vector<int>> order(n, std::vector<int>(np));
    for (int i = 0; i < n; ++i) {
        std::iota(order[i].begin(), order[i].end(), 0);
        std::stable_sort(order[i].begin(), order[i].end(),
                         [&](int a, int b) { return rowwise[i][a] < rowwise[i][b]; });
    }

    // admissible lookahead: every unassigned row costs at least its rowwise minimum
    std::vector<double> suffix_min(n + 1, 0.0);
    for (int i = n - 1; i >= 0; --i)
        suffix_min[i] = suffix_min[i + 1] + rowwise[i][order[i][0]];

    // greedy seed gives the initial upper bound
    std::vector<int> chosen(n, 0);
    double best;
    std::vector<int> best_choice(n);
    {
        Eigen::VectorXd colsum = Eigen::VectorXd::Zero(k);
        double acc = 0;
        for (int i = 0; i < n; ++i) {
            chosen[i] = order[i][0];
            acc += rowwise[i][chosen[i]];
            for (int p = 0; p < i; ++p) acc += coef(p, i) * pair_sq(chosen[p], chosen[i]);
            colsum += points[chosen[i]];
        }
        best = acc + distribution_cost(colsum);
        best_choice = chosen;
    }

    std::function<void(int, double, Eigen::VectorXd&)> dfs = [&](int depth, double acc,
                                                                 Eigen::VectorXd& colsum) {
        if (acc + suffix_min[depth] >= best) return;
        if (depth == n) {
            double full = acc + distribution_cost(colsum);
            if (full < best) {
                best = full;
                best_choice = chosen;
            }
            return;
        }
        for (int p : order[depth]) {
            double next = acc + rowwise[depth][p];
            for (int i = 0; i < depth; ++i) next += coef(i, depth) * pair_sq(chosen[i], p);
            if (next + suffix_min[depth + 1] >= best) continue;
            chosen[depth] = p;
            colsum += points[p];
            dfs(depth + 1, next, colsum);
            colsum -= points[p];
        }
    };
    Eigen::VectorXd colsum = Eigen::VectorXd::Zero(k);
    dfs(0, 0.0, colsum);

    GridOracleResult res;
    res.argmin_f.resize(n, k);
    for (int i = 0; i < n; ++i) res.argmin_f.row(i) = points[best_choice[i]].transpose();
    res.objective = best;
    return res;
}

}  // namespace namecast
