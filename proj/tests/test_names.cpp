#include <doctest.h>

#include <algorithm>

#include "namecast/errors.hpp"
#include "namecast/names.hpp"
#include "namecast/reference.hpp"

using namespace namecast;

namespace {

NameLexicon small_lexicon() {
    NameLexicon lex;
    lex.insert("penny", 0.01);
    lex.insert("lenny", 0.99);
    lex.insert("leslie", 0.30);
    lex.insert("sheldon", 0.99);
    lex.insert("kevin", 0.99);
    lex.insert("kev", 0.99);
    return lex;
}

std::vector<SubtitleSegment> cleaned(const std::vector<std::string>& texts) {
    std::vector<SubtitleSegment> segs;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        SubtitleSegment s;
        s.index = static_cast<int>(i) + 1;
        s.start_ms = static_cast<long long>(i) * 1000;
        s.end_ms = s.start_ms + 900;
        s.raw_text = texts[i];
        s.clean_text = texts[i];
        segs.push_back(s);
    }
    return segs;
}

NameMention mention_of(const std::string& surface, RefType type, int pos = 0) {
    NameMention m;
    m.segment_pos = pos;
    m.surface = surface;
    m.ref_type = type;
    return m;
}

}  // namespace

TEST_CASE("extract_mentions finds lexicon names") {
    auto lex = small_lexicon();
    auto mentions = extract_mentions(cleaned({"Oh, hi, Penny"}), lex);
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].surface == "Penny");
    CHECK(mentions[0].segment_pos == 0);
}

TEST_CASE("extract_mentions finds names at the end of a question") {
    auto mentions = extract_mentions(cleaned({"So how did it go with Leslie?"}), small_lexicon());
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].surface == "Leslie");
}

TEST_CASE("extract_mentions ignores sentence-initial stopwords") {
    CHECK(extract_mentions(cleaned({"The door opened."}), small_lexicon()).empty());
}

TEST_CASE("extract_mentions ignores mid-sentence stopwords and lowercase words") {
    auto lex = small_lexicon();
    CHECK(extract_mentions(cleaned({"well, I don't know."}), lex).empty());
    CHECK(extract_mentions(cleaned({"He said No loudly."}), lex).empty());
}

TEST_CASE("extract_mentions merges adjacent capitalized tokens") {
    auto mentions = extract_mentions(cleaned({"We met Kevin Lomax yesterday."}), small_lexicon());
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].surface == "Kevin Lomax");
    CHECK(mentions[0].token_end - mentions[0].token_begin == 2);
}

TEST_CASE("extract_mentions does not merge across commas or sentences") {
    auto mentions = extract_mentions(cleaned({"We saw Penny, Lenny and more."}), small_lexicon());
    REQUIRE(mentions.size() == 2);
    CHECK(mentions[0].surface == "Penny");
    CHECK(mentions[1].surface == "Lenny");
}

TEST_CASE("extract_mentions picks up non-lexicon capitalized names mid-sentence") {
    auto mentions = extract_mentions(cleaned({"We met Zorbulon again."}), small_lexicon());
    REQUIRE(mentions.size() == 1);
    CHECK(mentions[0].surface == "Zorbulon");
}

TEST_CASE("mention surfaces are capitalized words") {
    auto mentions = extract_mentions(
        cleaned({"Take Penny's keys.", "ALL CAPS SHOUTING", "He's with Leslie."}),
        small_lexicon());
    for (const auto& m : mentions) {
        REQUIRE(!m.surface.empty());
        CHECK(std::isupper(static_cast<unsigned char>(m.surface[0])));
    }
}

TEST_CASE("cluster_names links aliases by prefix and edit distance") {
    std::vector<NameMention> mentions = {
        mention_of("Kevin Lomax", RefType::Third), mention_of("Kevin", RefType::Second),
        mention_of("Kevin", RefType::Second), mention_of("Kev", RefType::Second)};
    auto clusters = cluster_names(mentions, small_lexicon());
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].canonical == "Kevin");  // most frequent surface
    CHECK(clusters[0].aliases.size() == 3);
    CHECK(clusters[0].count_second == 3);
    CHECK(clusters[0].count_third == 1);
    CHECK(clusters[0].p_male_name == doctest::Approx(0.99));
}

TEST_CASE("cluster_names keeps Penny and Lenny apart on gender") {
    // edit distance 1/5 would link them; opposite lexicon genders veto it
    std::vector<NameMention> mentions = {mention_of("Penny", RefType::Second),
                                         mention_of("Lenny", RefType::Second)};
    auto clusters = cluster_names(mentions, small_lexicon());
    CHECK(clusters.size() == 2);
}

TEST_CASE("cluster_names merges near-identical unknown-gender surfaces") {
    // unknown genders never veto; distance 1/7 links
    std::vector<NameMention> mentions = {mention_of("Farnsby", RefType::Second),
                                         mention_of("Farnsbe", RefType::Second)};
    auto clusters = cluster_names(mentions, small_lexicon());
    CHECK(clusters.size() == 1);
}

TEST_CASE("cluster_names keeps a singleton") {
    auto clusters = cluster_names({mention_of("Sheldon", RefType::First)}, small_lexicon());
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].canonical == "Sheldon");
    CHECK(clusters[0].aliases == std::set<std::string>{"Sheldon"});
}

TEST_CASE("canonical tie-breaks prefer longer then lexicographic") {
    std::vector<NameMention> mentions = {mention_of("Kev", RefType::Second),
                                         mention_of("Kevin", RefType::Second)};
    auto clusters = cluster_names(mentions, small_lexicon());
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].canonical == "Kevin");  // equal frequency, longer wins
}

namespace {

NameCluster counted(const std::string& name, long long first, long long second, long long third) {
    NameCluster c;
    c.canonical = name;
    c.aliases = {name};
    c.count_first = first;
    c.count_second = second;
    c.count_third = third;
    return c;
}

// Mentions that reproduce the given per-cluster counts.
std::vector<NameMention> mentions_for(const std::vector<NameCluster>& clusters) {
    std::vector<NameMention> mentions;
    for (const auto& c : clusters) {
        for (long long t = 0; t < c.count_first; ++t)
            mentions.push_back(mention_of(c.canonical, RefType::First));
        for (long long t = 0; t < c.count_second; ++t)
            mentions.push_back(mention_of(c.canonical, RefType::Second));
        for (long long t = 0; t < c.count_third; ++t)
            mentions.push_back(mention_of(c.canonical, RefType::Third));
    }
    return mentions;
}

}  // namespace

TEST_CASE("build_roster applies both filters and normalizes the prior") {
    // A survives; B is third-person only; C has total count 2 < 3
    std::vector<NameCluster> clusters = {counted("A", 1, 5, 2), counted("B", 0, 0, 4),
                                         counted("C", 0, 2, 0)};
    auto roster = build_roster(clusters, mentions_for(clusters));
    REQUIRE(roster.size() == 1);
    CHECK(roster.clusters[0].canonical == "A");
    CHECK(roster.prior[0] == doctest::Approx(1.0));
}

TEST_CASE("build_roster keeps clusters passing both filters") {
    std::vector<NameCluster> clusters = {counted("A", 1, 5, 2), counted("B", 0, 0, 4),
                                         counted("C", 0, 3, 0)};
    auto roster = build_roster(clusters, mentions_for(clusters));
    REQUIRE(roster.size() == 2);
    CHECK(roster.clusters[0].canonical == "A");
    CHECK(roster.clusters[1].canonical == "C");
    CHECK(roster.prior[0] == doctest::Approx(6.0 / 9.0));
    CHECK(roster.prior[1] == doctest::Approx(3.0 / 9.0));
}

TEST_CASE("build_roster keeps a single surviving cluster with prior 1") {
    std::vector<NameCluster> clusters = {counted("A", 3, 0, 0)};
    auto roster = build_roster(clusters, mentions_for(clusters));
    REQUIRE(roster.size() == 1);
    CHECK(roster.prior[0] == doctest::Approx(1.0));
}

TEST_CASE("build_roster errors when nothing survives") {
    std::vector<NameCluster> third_only = {counted("A", 0, 0, 5), counted("B", 0, 0, 3)};
    CHECK_THROWS_WITH_AS(build_roster(third_only, mentions_for(third_only)),
                         "no identifiable characters", ParseError);

    std::vector<NameCluster> too_rare = {counted("A", 2, 0, 0)};
    CHECK_THROWS_AS(build_roster(too_rare, mentions_for(too_rare)), ParseError);
}

TEST_CASE("build_roster filters commute") {
    std::vector<NameCluster> clusters = {counted("A", 1, 5, 2), counted("B", 0, 0, 4),
                                         counted("C", 0, 2, 0), counted("D", 2, 2, 9)};
    // the implementation applies both predicates to immutable counts, so
    // simulate both orders by hand and compare survivors
    auto count_filter = [](const NameCluster& c) {
        return c.count_first + c.count_second + c.count_third >= 3;
    };
    auto person_filter = [](const NameCluster& c) {
        return c.count_first + c.count_second > 0;
    };
    std::vector<std::string> order_a, order_b;
    for (const auto& c : clusters)
        if (count_filter(c) && person_filter(c)) order_a.push_back(c.canonical);
    for (const auto& c : clusters)
        if (person_filter(c) && count_filter(c)) order_b.push_back(c.canonical);
    CHECK(order_a == order_b);

    auto roster = build_roster(clusters, mentions_for(clusters));
    std::vector<std::string> survivors;
    for (const auto& c : roster.clusters) survivors.push_back(c.canonical);
    CHECK(survivors == order_a);
}

TEST_CASE("roster prior is a probability vector") {
    std::vector<NameCluster> clusters = {counted("A", 1, 5, 2), counted("C", 0, 3, 0),
                                         counted("D", 2, 2, 9)};
    auto roster = build_roster(clusters, mentions_for(clusters));
    double sum = 0;
    for (double d : roster.prior) {
        CHECK(d >= 0.0);
        sum += d;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("every roster surface belongs to exactly one cluster") {
    std::vector<NameMention> mentions = {
        mention_of("Kevin Lomax", RefType::Second), mention_of("Kevin", RefType::Second),
        mention_of("Kev", RefType::First), mention_of("Penny", RefType::Second),
        mention_of("Penny", RefType::First), mention_of("Penny", RefType::Second),
        mention_of("Lenny", RefType::Second), mention_of("Lenny", RefType::First),
        mention_of("Lenny", RefType::Third)};
    auto roster = build_roster(cluster_names(mentions, small_lexicon()), mentions);
    for (const auto& m : mentions) {
        int owners = 0;
        for (const auto& c : roster.clusters) owners += c.aliases.count(m.surface);
        CHECK(owners == 1);
        CHECK(roster.class_of(m.surface) >= 0);
    }
}

TEST_CASE("the shipped name lexicon loads and carries the expected genders") {
    auto lex = NameLexicon::from_file(std::string(NAMECAST_DATA_DIR) + "/name_lexicon.csv");
    CHECK(lex.size() > 200);
    REQUIRE(lex.contains("sheldon"));
    REQUIRE(lex.contains("penny"));
    REQUIRE(lex.contains("lenny"));
    CHECK(*lex.p_male("sheldon") > 0.5);
    CHECK(*lex.p_male("penny") < 0.5);
    CHECK(*lex.p_male("lenny") > 0.5);
    CHECK(lex.p_male("leslie").has_value());
    CHECK(lex.surface_p_male("Kevin Lomax") == doctest::Approx(0.99));
    CHECK(lex.surface_p_male("Zorbulon") == doctest::Approx(0.5));
}

TEST_CASE("normalized edit distance basics") {
    CHECK(normalized_edit_distance("penny", "lenny") == doctest::Approx(0.2));
    CHECK(normalized_edit_distance("kev", "kevin") == doctest::Approx(0.4));
    CHECK(normalized_edit_distance("", "") == doctest::Approx(0.0));
    CHECK(normalized_edit_distance("abc", "") == doctest::Approx(1.0));
}
