#include <doctest.h>

#include <filesystem>
#include <limits>
#include <set>

#include "namecast/csv.hpp"
#include "namecast/errors.hpp"
#include "namecast/pipeline.hpp"
#include "namecast/reference.hpp"
#include "namecast/rng.hpp"
#include "namecast/synth.hpp"
#include "test_support.hpp"

using namespace namecast;

namespace {

SynthSpec tiny_spec() {
    SynthSpec spec;
    spec.characters = 4;
    spec.segments = 60;
    spec.label_rate = 0.1;
    spec.second_rate = 0.3;
    spec.third_rate = 0.2;
    spec.dim_text = 6;
    spec.dim_acoustic = 8;
    spec.dim_visual = 5;
    spec.sigma_text = 0.5;
    spec.sigma_acoustic = 0.5;
    spec.sigma_visual = 0.5;
    spec.visual_coverage = 0.8;
    spec.seed = 21;
    return spec;
}

NameLexicon lexicon_of(const SynthMovie& movie) {
    NameLexicon lex;
    for (const auto& [name, p] : movie.lexicon_rows) lex.insert(name, p);
    return lex;
}

}  // namespace

TEST_CASE("generation is deterministic under a fixed seed") {
    auto a = generate(tiny_spec());
    auto b = generate(tiny_spec());
    CHECK(write_srt(a.segments) == write_srt(b.segments));
    CHECK(a.gold == b.gold);
    CHECK(a.gender_probs == b.gender_probs);
    REQUIRE(a.text.vectors.size() == b.text.vectors.size());
    for (const auto& [pos, v] : a.text.vectors)
        CHECK((v - b.text.vectors.at(pos)).norm() == doctest::Approx(0.0));

    auto spec2 = tiny_spec();
    spec2.seed = 22;
    CHECK(write_srt(generate(spec2).segments) != write_srt(a.segments));
}

TEST_CASE("sigma zero puts every segment exactly on its speaker centroid") {
    auto spec = tiny_spec();
    spec.sigma_text = 0.0;
    spec.visual_coverage = 1.0;
    auto movie = generate(spec);
    // same-speaker segments share identical text vectors
    for (int i = 0; i < spec.segments; ++i)
        for (int j = i + 1; j < spec.segments; ++j)
            if (movie.gold[i] == movie.gold[j])
                CHECK((movie.text.vectors.at(i) - movie.text.vectors.at(j)).norm() ==
                      doctest::Approx(0.0));
}

TEST_CASE("label_rate one plants a first-person mention of the true speaker everywhere") {
    auto spec = tiny_spec();
    spec.label_rate = 1.0;
    auto movie = generate(spec);
    auto cleaned = clean_segments(movie.segments);
    REQUIRE(static_cast<int>(cleaned.size()) == spec.segments);
    NameLexicon lex = lexicon_of(movie);
    auto mentions = extract_mentions(cleaned, lex);
    std::vector<bool> has_first(cleaned.size(), false);
    for (NameMention& m : mentions) {
        m.ref_type = classify_reference(cleaned[m.segment_pos].clean_text, m);
        if (m.ref_type == RefType::First && m.surface == movie.gold[m.segment_pos])
            has_first[m.segment_pos] = true;
    }
    for (bool flag : has_first) CHECK(flag);
}

TEST_CASE("the full roster survives extraction on synthetic dialogue") {
    auto spec = tiny_spec();
    auto movie = generate(spec);
    auto cleaned = clean_segments(movie.segments);
    NameLexicon lex = lexicon_of(movie);
    auto mentions = extract_mentions(cleaned, lex);
    for (NameMention& m : mentions)
        m.ref_type = classify_reference(cleaned[m.segment_pos].clean_text, m);
    auto roster = build_roster(cluster_names(mentions, lex), mentions);
    REQUIRE(roster.size() == spec.characters);
    std::set<std::string> canon;
    for (const auto& c : roster.clusters) canon.insert(c.canonical);
    CHECK(canon == std::set<std::string>(movie.character_names.begin(),
                                         movie.character_names.end()));
}

TEST_CASE("invalid synth specs are rejected") {
    auto bad = tiny_spec();
    bad.segments = 2;  // fewer than characters
    CHECK_THROWS_AS(generate(bad), ConfigError);
    bad = tiny_spec();
    bad.label_rate = 1.5;
    CHECK_THROWS_AS(generate(bad), ConfigError);
    bad = tiny_spec();
    bad.sigma_acoustic = -0.1;
    CHECK_THROWS_AS(generate(bad), ConfigError);
    bad = tiny_spec();
    bad.characters = 0;
    CHECK_THROWS_AS(generate(bad), ConfigError);
}

TEST_CASE("simplex_grid enumerates the expected points") {
    auto single = simplex_grid(1, 20);
    REQUIRE(single.size() == 1);
    CHECK(single[0][0] == doctest::Approx(1.0));

    auto coarse = simplex_grid(2, 2);  // resolution 0.5: (0,1), (0.5,0.5), (1,0)
    REQUIRE(coarse.size() == 3);
    for (const auto& p : coarse) CHECK(p.sum() == doctest::Approx(1.0));

    auto k3 = simplex_grid(3, 4);
    CHECK(k3.size() == 15);  // C(4+2,2)
    for (const auto& p : k3) {
        CHECK(p.sum() == doctest::Approx(1.0));
        CHECK(p.minCoeff() >= 0.0);
    }
}

TEST_CASE("grid_oracle enforces its size limits") {
    Rng rng(3);
    auto inst = testsupport::make_random_instance(rng, 5, 2);
    CHECK_THROWS_AS(grid_oracle(inst.constraints, inst.graph, inst.roster, inst.lambdas, 0.05),
                    ConfigError);
    auto ok = testsupport::make_random_instance(rng, 3, 2);
    CHECK_THROWS_AS(grid_oracle(ok.constraints, ok.graph, ok.roster, ok.lambdas, 0.3),
                    ConfigError);  // 0.3 does not divide 1
}

TEST_CASE("grid_oracle on K=1 scores the all-ones column") {
    Rng rng(4);
    auto inst = testsupport::make_random_instance(rng, 3, 1);
    auto res = grid_oracle(inst.constraints, inst.graph, inst.roster, inst.lambdas, 0.05);
    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(3, 1);
    CHECK((res.argmin_f - ones).norm() == doctest::Approx(0.0));
    CHECK(res.objective ==
          doctest::Approx(total_loss(ones, inst.constraints, inst.graph, inst.roster,
                                     inst.lambdas)));
}

TEST_CASE("grid_oracle objective matches the public losses at its argmin") {
    Rng rng(8);
    for (int trial = 0; trial < 4; ++trial) {
        auto inst = testsupport::make_random_instance(rng, 1 + rng.uniform_int(0, 2),
                                                      1 + rng.uniform_int(0, 1));
        auto res = grid_oracle(inst.constraints, inst.graph, inst.roster, inst.lambdas, 0.1);
        double pub = total_loss(res.argmin_f, inst.constraints, inst.graph, inst.roster,
                                inst.lambdas);
        CHECK(res.objective == doctest::Approx(pub).epsilon(1e-9));
        for (int i = 0; i < res.argmin_f.rows(); ++i) {
            CHECK(res.argmin_f.row(i).sum() == doctest::Approx(1.0));
            CHECK(res.argmin_f.row(i).minCoeff() >= 0.0);
        }
    }
}

TEST_CASE("grid_oracle pruning matches plain exhaustive enumeration") {
    Rng rng(27);
    for (int trial = 0; trial < 4; ++trial) {
        int n = 2 + trial % 2;  // 2 or 3 rows keeps the naive scan tiny
        int k = 2;
        auto inst = testsupport::make_random_instance(rng, n, k);
        double res = 0.1;
        auto points = simplex_grid(k, 10);

        double naive = std::numeric_limits<double>::infinity();
        Eigen::MatrixXd f(n, k);
        std::vector<int> idx(n, 0);
        while (true) {
            for (int i = 0; i < n; ++i) f.row(i) = points[idx[i]].transpose();
            naive = std::min(naive, total_loss(f, inst.constraints, inst.graph, inst.roster,
                                               inst.lambdas));
            int d = 0;
            while (d < n && ++idx[d] == static_cast<int>(points.size())) idx[d++] = 0;
            if (d == n) break;
        }

        auto oracle = grid_oracle(inst.constraints, inst.graph, inst.roster, inst.lambdas, res);
        CHECK(oracle.objective == doctest::Approx(naive).epsilon(1e-12));
    }
}

TEST_CASE("solver and grid oracle agree on tiny instances") {
    Rng rng(15);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 1 + rng.uniform_int(0, 2);  // up to 3 keeps this fast in unit tests
        int k = 1 + rng.uniform_int(0, 2);
        auto inst = testsupport::make_random_instance(rng, n, k);
        auto oracle = grid_oracle(inst.constraints, inst.graph, inst.roster, inst.lambdas, 0.05);
        auto solved = solve_pgd(inst.constraints, inst.graph, inst.roster, inst.lambdas, {});
        CHECK(solved.objective <= oracle.objective + 1e-3);
        CHECK(oracle.objective <= solved.objective + 0.05);  // grid discretization slack
    }
}

TEST_CASE("synthetic artifacts round-trip the production parsers") {
    namespace fs = std::filesystem;
    auto spec = tiny_spec();
    auto movie = generate(spec);
    std::string dir = (fs::temp_directory_path() / "namecast_synth_test").string();
    write_synth_dir(movie, spec, dir);

    auto parsed = parse_srt(read_file(dir + "/movie.srt"));
    CHECK(parsed.size() == movie.segments.size());
    auto text = load_embeddings(read_file(dir + "/embeddings_text.csv"), Modality::Text);
    CHECK(text.dim == spec.dim_text);
    CHECK(text.vectors.size() == static_cast<std::size_t>(spec.segments));
    auto gold = load_gold(read_file(dir + "/gold.csv"));
    CHECK(static_cast<int>(gold.labels.size()) == spec.segments);
    auto gender = load_gender_probs(read_file(dir + "/gender_probs.csv"));
    CHECK(static_cast<int>(gender.size()) == spec.segments);
    auto aliases = load_aliases(read_file(dir + "/aliases.csv"));
    CHECK(aliases.pairs.size() == static_cast<std::size_t>(spec.characters));
    auto lex = NameLexicon::from_file(dir + "/lexicon.csv");
    CHECK(lex.size() == static_cast<std::size_t>(spec.characters));
    fs::remove_all(dir);
}
