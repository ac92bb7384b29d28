#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "namecast/config.hpp"
#include "namecast/csv.hpp"
#include "namecast/errors.hpp"
#include "namecast/pipeline.hpp"
#include "namecast/synth.hpp"

using namespace namecast;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("config parses keys, comments and whitespace") {
    auto cfg = parse_config(
        "# a comment\n"
        "srt = movie.srt\n"
        "lambda2 = 0.5   # trailing comment\n"
        "window=3\n"
        "seed = 99\n"
        "\n",
        "/base");
    CHECK(cfg.srt == "movie.srt");
    CHECK(cfg.lambdas.mi == doctest::Approx(0.5));
    CHECK(cfg.window == 3);
    CHECK(cfg.seed == 99);
    CHECK(cfg.synth.seed == 99);  // synth shares the pipeline seed
    CHECK(cfg.resolve_path("movie.srt") == "/base/movie.srt");
    CHECK(cfg.resolve_path("/abs/movie.srt") == "/abs/movie.srt");
}

TEST_CASE("config errors name the offending key") {
    try {
        parse_config("not_a_key = 1\n", "");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("not_a_key") != std::string::npos);
    }
    try {
        parse_config("lambda1 = banana\n", "");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("lambda1") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config("just a line without equals\n", ""), ConfigError);
}

TEST_CASE("trigger lists are overridable through config keys") {
    auto cfg = parse_config("first_triggers = i'm; you know me,\n", "");
    REQUIRE(cfg.reference_rules.first_triggers.size() == 2);
    CHECK(cfg.reference_rules.first_triggers[1] == "you know me,");
    CHECK(cfg.reference_rules.greeting_triggers == ReferenceRules::defaults().greeting_triggers);
}

TEST_CASE("predictions CSV round-trips") {
    std::vector<std::string> names = {"Alice", "Marcus", "Alice"};
    std::string csv = format_predictions_csv(names);
    CHECK(load_predictions_csv(csv) == names);
    CHECK_THROWS_AS(load_predictions_csv("segment_pos,name\n1,A\n"), ParseError);  // gap
    CHECK_THROWS_AS(load_predictions_csv("bad header\n"), ParseError);
}

TEST_CASE("pipeline runs synth, solve, evaluate end to end") {
    TempDir tmp("namecast_pipe_e2e");

    PipelineConfig synth_cfg;
    synth_cfg.synth.characters = 3;
    synth_cfg.synth.segments = 48;
    synth_cfg.synth.label_rate = 0.2;
    synth_cfg.synth.second_rate = 0.3;
    synth_cfg.synth.third_rate = 0.2;
    synth_cfg.synth.dim_text = 8;
    synth_cfg.synth.dim_acoustic = 8;
    synth_cfg.synth.dim_visual = 8;
    synth_cfg.synth.sigma_text = 0.4;
    synth_cfg.synth.sigma_acoustic = 0.4;
    synth_cfg.synth.sigma_visual = 0.4;
    synth_cfg.synth.visual_coverage = 0.9;
    synth_cfg.synth.seed = 5;
    synth_cfg.synth_dir = tmp.file("movie");
    run_synth(synth_cfg);

    auto cfg = load_config(tmp.file("movie") + "/config.txt");
    auto result = run_solve(cfg, false);
    CHECK(result.converged);
    CHECK(fs::exists(tmp.file("movie") + "/predictions.csv"));

    auto report = run_evaluate(cfg);
    CHECK(report.aggregate.fscore > 0.8);  // separable desk-scale problem
    CHECK(fs::exists(tmp.file("movie") + "/report.csv"));
}

TEST_CASE("a noiseless labeled movie is solved perfectly") {
    TempDir tmp("namecast_pipe_noiseless");
    PipelineConfig synth_cfg;
    synth_cfg.synth.characters = 4;
    synth_cfg.synth.segments = 64;
    synth_cfg.synth.label_rate = 0.2;
    synth_cfg.synth.sigma_text = 0.0;
    synth_cfg.synth.sigma_acoustic = 0.0;
    synth_cfg.synth.sigma_visual = 0.0;
    synth_cfg.synth.dim_text = 8;
    synth_cfg.synth.dim_acoustic = 8;
    synth_cfg.synth.dim_visual = 8;
    synth_cfg.synth.seed = 12;
    synth_cfg.synth_dir = tmp.file("movie");
    run_synth(synth_cfg);

    auto cfg = load_config(tmp.file("movie") + "/config.txt");
    run_solve(cfg, false);
    auto report = run_evaluate(cfg);
    CHECK(report.aggregate.precision == doctest::Approx(1.0));
    CHECK(report.aggregate.recall == doctest::Approx(1.0));
    CHECK(report.aggregate.fscore == doctest::Approx(1.0));
}

TEST_CASE("evaluate scores a predictions file equal to gold as perfect") {
    TempDir tmp("namecast_pipe_goldeval");
    write_file(tmp.file("gold.csv"), "segment_pos,speaker\n0,Alice\n1,Marcus\n");
    write_file(tmp.file("pred.csv"), "segment_pos,name\n0,Alice\n1,Marcus\n");
    PipelineConfig cfg;
    cfg.base_dir = tmp.path.string();
    cfg.gold = "gold.csv";
    cfg.predictions = "pred.csv";
    cfg.report = "report.csv";
    auto report = run_evaluate(cfg);
    CHECK(report.aggregate.fscore == doctest::Approx(1.0));
}

TEST_CASE("solve without text embeddings falls back to tf-idf") {
    TempDir tmp("namecast_pipe_tfidf");
    PipelineConfig synth_cfg;
    synth_cfg.synth.characters = 3;
    synth_cfg.synth.segments = 40;
    synth_cfg.synth.label_rate = 0.25;
    synth_cfg.synth.second_rate = 0.3;
    synth_cfg.synth.dim_text = 6;
    synth_cfg.synth.dim_acoustic = 6;
    synth_cfg.synth.dim_visual = 6;
    synth_cfg.synth.sigma_acoustic = 0.3;
    synth_cfg.synth.seed = 31;
    synth_cfg.synth_dir = tmp.file("movie");
    run_synth(synth_cfg);

    auto cfg = load_config(tmp.file("movie") + "/config.txt");
    cfg.embeddings_text.clear();  // forces compute_tfidf
    auto result = run_solve(cfg, false);
    CHECK(result.converged);
}

TEST_CASE("trace subcommand demands a trace path and writes it") {
    TempDir tmp("namecast_pipe_trace");
    PipelineConfig synth_cfg;
    synth_cfg.synth.characters = 2;
    synth_cfg.synth.segments = 24;
    synth_cfg.synth.label_rate = 0.3;
    synth_cfg.synth.seed = 9;
    synth_cfg.synth.dim_text = 4;
    synth_cfg.synth.dim_acoustic = 4;
    synth_cfg.synth.dim_visual = 4;
    synth_cfg.synth_dir = tmp.file("movie");
    run_synth(synth_cfg);

    auto cfg = load_config(tmp.file("movie") + "/config.txt");
    CHECK_THROWS_AS(run_solve(cfg, true), ConfigError);  // no trace key in the file
    cfg.trace = "trace.csv";
    run_solve(cfg, true);
    std::string trace = read_file(tmp.file("movie") + "/trace.csv");
    CHECK(trace.rfind("iteration,objective,step\n", 0) == 0);
}

TEST_CASE("extract-names writes the roster") {
    TempDir tmp("namecast_pipe_roster");
    PipelineConfig synth_cfg;
    synth_cfg.synth.characters = 3;
    synth_cfg.synth.segments = 30;
    synth_cfg.synth.seed = 2;
    synth_cfg.synth.dim_text = 4;
    synth_cfg.synth.dim_acoustic = 4;
    synth_cfg.synth.dim_visual = 4;
    synth_cfg.synth_dir = tmp.file("movie");
    run_synth(synth_cfg);

    auto cfg = load_config(tmp.file("movie") + "/config.txt");
    run_extract_names(cfg);
    std::string roster = read_file(tmp.file("movie") + "/roster.csv");
    CHECK(roster.rfind("canonical,aliases,", 0) == 0);
    // one header plus one row per character
    CHECK(std::count(roster.begin(), roster.end(), '\n') == 4);
}

TEST_CASE("identical configs produce byte-identical artifacts") {
    TempDir tmp("namecast_pipe_determinism");
    PipelineConfig synth_cfg;
    synth_cfg.synth.characters = 3;
    synth_cfg.synth.segments = 36;
    synth_cfg.synth.label_rate = 0.2;
    synth_cfg.synth.seed = 44;
    synth_cfg.synth.dim_text = 5;
    synth_cfg.synth.dim_acoustic = 5;
    synth_cfg.synth.dim_visual = 5;

    synth_cfg.synth_dir = tmp.file("a");
    run_synth(synth_cfg);
    synth_cfg.synth_dir = tmp.file("b");
    run_synth(synth_cfg);
    CHECK(read_file(tmp.file("a") + "/movie.srt") == read_file(tmp.file("b") + "/movie.srt"));

    for (const std::string which : {"a", "b"}) {
        auto cfg = load_config(tmp.file(which) + "/config.txt");
        run_solve(cfg, false);
        run_baseline(cfg);  // overwrites predictions with B3 draws, also deterministic
    }
    CHECK(read_file(tmp.file("a") + "/predictions.csv") ==
          read_file(tmp.file("b") + "/predictions.csv"));
}

TEST_CASE("overridden triggers reach the classifier through prepare") {
    TempDir tmp("namecast_pipe_triggers");
    std::string srt =
        "1\n00:00:01,000 --> 00:00:02,000\nThey call him Walter.\n\n"
        "2\n00:00:03,000 --> 00:00:04,000\nThey call him Walter.\n\n"
        "3\n00:00:05,000 --> 00:00:06,000\nThey call him Walter.\n\n"
        "4\n00:00:07,000 --> 00:00:08,000\nWalter!\n\n";
    write_file(tmp.file("movie.srt"), srt);
    write_file(tmp.file("lex.csv"), "name,p_male\nwalter,0.99\n");
    write_file(tmp.file("cfg.txt"),
               "srt = movie.srt\nlexicon = lex.csv\nfirst_triggers = call him\n");

    auto count = [](const PipelineData& d, RefType t) {
        int c = 0;
        for (const auto& m : d.mentions) c += m.ref_type == t;
        return c;
    };

    PipelineData data = prepare(load_config(tmp.file("cfg.txt")));
    REQUIRE(data.mentions.size() == 4);
    CHECK(count(data, RefType::First) == 3);  // "call him" promoted to a trigger

    write_file(tmp.file("cfg_default.txt"), "srt = movie.srt\nlexicon = lex.csv\n");
    PipelineData plain = prepare(load_config(tmp.file("cfg_default.txt")));
    CHECK(count(plain, RefType::First) == 0);
    CHECK(count(plain, RefType::Third) == 3);
}

TEST_CASE("roster CSV joins aliases and keeps class order") {
    NameLexicon lex;
    lex.insert("kevin", 0.99);
    std::vector<NameMention> mentions;
    auto add = [&](const std::string& s, RefType t) {
        NameMention m;
        m.surface = s;
        m.ref_type = t;
        mentions.push_back(m);
    };
    add("Kevin", RefType::First);
    add("Kevin Lomax", RefType::Second);
    add("Kev", RefType::Second);
    add("Anna", RefType::First);
    add("Anna", RefType::Second);
    add("Anna", RefType::Second);
    auto roster = build_roster(cluster_names(mentions, lex), mentions);
    std::string csv = format_roster_csv(roster);
    // equal frequencies: the longer surface becomes canonical; its gender
    // falls back to the first token's lexicon entry
    CHECK(csv.find("Kevin Lomax,Kev;Kevin;Kevin Lomax,1,2,0,0.99,") != std::string::npos);
    CHECK(csv.find("Anna,Anna,1,2,0,0.5,") != std::string::npos);
}

TEST_CASE("run_subcommand maps failures to exit codes") {
    TempDir tmp("namecast_pipe_exits");
    CHECK(run_subcommand("nonsense", tmp.file("missing.txt")) == 1);

    write_file(tmp.file("empty.txt"), "");
    CHECK(run_subcommand("solve", tmp.file("empty.txt")) == 1);  // missing srt key

    write_file(tmp.file("badsrt.txt"),
               "srt = none.srt\nlexicon = none.csv\npredictions = out.csv\n");
    CHECK(run_subcommand("solve", tmp.file("badsrt.txt")) == 2);  // unreadable data

    write_file(tmp.file("badkey.txt"), "who = knows\n");
    CHECK(run_subcommand("synth", tmp.file("badkey.txt")) == 1);
}
