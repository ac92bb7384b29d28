#include "namecast/names.hpp"

#include <algorithm>
#include <numeric>

#include "namecast/errors.hpp"
#include "namecast/text.hpp"

namespace namecast {

int CharacterRoster::class_of(const std::string& surface) const {
    auto it = alias_to_class_.find(surface);
    return it == alias_to_class_.end() ? -1 : it->second;
}

const std::set<std::string>& mention_stopwords() {
    // Capitalized words that start sentences or stand in for names without
    // being one: pronouns, interjections, titles, common contractions.
    static const std::set<std::string> words{
        "a", "about", "after", "ah", "all", "almost", "alright", "also", "always", "and",
        "another", "any", "anybody", "anyone", "anything", "are", "as", "at", "aye",
        "back", "be", "because", "been", "before", "but", "by", "bye", "can", "can't",
        "come", "could", "couldn't", "dad", "daddy", "did", "didn't", "do", "does",
        "doesn't", "don't", "down", "dr", "each", "eh", "even", "ever", "every",
        "everybody", "everyone", "everything", "excuse", "few", "fine", "for", "from",
        "get", "go", "god", "good", "goodbye", "got", "ha", "had", "has", "have",
        "haven't", "he", "he'd", "he'll", "he's", "hello", "her", "here", "hers", "hey",
        "hi", "him", "his", "hm", "hmm", "how", "how's", "huh", "i", "i'd", "i'll",
        "i'm", "i've", "if", "in", "into", "is", "isn't", "it", "it'll", "it's", "its",
        "just", "let", "let's", "like", "listen", "look", "ma'am", "madam", "man",
        "many", "may", "maybe", "me", "mine", "miss", "mom", "mommy", "more", "most",
        "mr", "mrs", "ms", "much", "mum", "must", "my", "never", "no", "nobody", "none",
        "not", "nothing", "now", "of", "off", "oh", "ok", "okay", "on", "once", "one",
        "only", "or", "other", "our", "ours", "out", "over", "please", "right", "said",
        "say", "see", "she", "she'd", "she'll", "she's", "should", "shouldn't", "sir",
        "so", "some", "somebody", "someone", "something", "soon", "sorry", "still",
        "stop", "such", "sure", "take", "tell", "than", "thank", "thanks", "that",
        "that'll", "that's", "the", "their", "theirs", "them", "then", "there",
        "there's", "these", "they", "they'd", "they'll", "they're", "this", "those",
        "though", "to", "too", "uh", "um", "under", "until", "up", "us", "very", "wait",
        "was", "wasn't", "we", "we'd", "we'll", "we're", "we've", "well", "were",
        "weren't", "what", "what's", "when", "where", "where's", "which", "while",
        "who", "who's", "whom", "why", "will", "with", "won't", "would", "wouldn't",
        "yeah", "yes", "yet", "you", "you'd", "you'll", "you're", "you've", "your",
        "yours",
    };
    return words;
}

std::vector<NameMention> extract_mentions(const std::vector<SubtitleSegment>& segments,
                                          const NameLexicon& lexicon) {
    std::vector<NameMention> mentions;
    const std::set<std::string>& stop = mention_stopwords();

    for (std::size_t pos = 0; pos < segments.size(); ++pos) {
        std::vector<Token> tokens = tokenize(segments[pos].clean_text);

        auto qualifies = [&](const Token& t) {
            if (!is_capitalized_word(t.text)) return false;
            std::string lower = lowercase(t.text);
            if (lexicon.contains(lower)) return true;
            return !t.sentence_initial && stop.count(lower) == 0;
        };

        std::size_t i = 0;
        while (i < tokens.size()) {
            if (!qualifies(tokens[i])) {
                ++i;
                continue;
            }
            std::size_t run_end = i + 1;
            while (run_end < tokens.size() && tokens[run_end].ws_gap_before &&
                   qualifies(tokens[run_end]))
                ++run_end;

            NameMention m;
            m.segment_pos = static_cast<int>(pos);
            m.token_begin = static_cast<int>(i);
            m.token_end = static_cast<int>(run_end);
            for (std::size_t k = i; k < run_end; ++k) {
                if (k > i) m.surface += ' ';
                m.surface += tokens[k].text;
            }
            mentions.push_back(std::move(m));
            i = run_end;
        }
    }
    return mentions;
}

double normalized_edit_distance(std::string_view a, std::string_view b) {
    std::size_t m = a.size(), n = b.size();
    if (m == 0 && n == 0) return 0.0;
    std::vector<std::size_t> prev(n + 1), curr(n + 1);
    std::iota(prev.begin(), prev.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
        curr[0] = i + 1;
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t subst = prev[j] + (a[i] == b[j] ? 0 : 1);
            curr[j + 1] = std::min({prev[j + 1] + 1, curr[j] + 1, subst});
        }
        prev.swap(curr);
    }
    return static_cast<double>(prev[n]) / static_cast<double>(std::max(m, n));
}

namespace {

constexpr double kEditDistanceThreshold = 0.34;

// Gender of a surface for the clustering veto; nullopt when the lexicon has
// never seen it (unknown genders never veto a link).
std::optional<double> cluster_gender(const NameLexicon& lexicon, const std::string& surface) {
    if (auto p = lexicon.p_male(surface)) return p;
    std::size_t space = surface.find(' ');
    if (space != std::string::npos)
        if (auto p = lexicon.p_male(surface.substr(0, space))) return p;
    return std::nullopt;
}

bool genders_conflict(std::optional<double> a, std::optional<double> b) {
    if (!a || !b) return false;
    return (*a < 0.5 && *b > 0.5) || (*a > 0.5 && *b < 0.5);
}

bool surfaces_link(const std::string& a, const std::string& b) {
    std::string la = lowercase(a), lb = lowercase(b);
    if (normalized_edit_distance(la, lb) <= kEditDistanceThreshold) return true;
    const std::string& shorter = la.size() <= lb.size() ? la : lb;
    const std::string& longer = la.size() <= lb.size() ? lb : la;
    return longer.compare(0, shorter.size(), shorter) == 0;  // "Kev"/"Kevin Lomax"
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<NameCluster> cluster_names(const std::vector<NameMention>& mentions,
                                       const NameLexicon& lexicon) {
    // distinct surfaces with mention frequencies, in first-seen order
    std::vector<std::string> surfaces;
    std::map<std::string, int> surface_id;
    std::map<std::string, long long> freq;
    for (const NameMention& m : mentions) {
        if (surface_id.emplace(m.surface, static_cast<int>(surfaces.size())).second)
            surfaces.push_back(m.surface);
        ++freq[m.surface];
    }

    UnionFind uf(surfaces.size());
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        std::optional<double> gi = cluster_gender(lexicon, surfaces[i]);
        for (std::size_t j = i + 1; j < surfaces.size(); ++j) {
            if (!surfaces_link(surfaces[i], surfaces[j])) continue;
            if (genders_conflict(gi, cluster_gender(lexicon, surfaces[j]))) continue;
            uf.unite(static_cast<int>(i), static_cast<int>(j));
        }
    }

    std::map<int, std::vector<int>> groups;  // root -> surface ids
    for (std::size_t i = 0; i < surfaces.size(); ++i)
        groups[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));

    std::vector<NameCluster> clusters;
    for (auto& [root, members] : groups) {
        NameCluster c;
        for (int id : members) c.aliases.insert(surfaces[id]);

        // canonical: most frequent, then longer, then lexicographically first
        const std::string* best = nullptr;
        for (int id : members) {
            const std::string& s = surfaces[id];
            if (!best || freq[s] > freq[*best] ||
                (freq[s] == freq[*best] && s.size() > best->size()) ||
                (freq[s] == freq[*best] && s.size() == best->size() && s < *best))
                best = &s;
        }
        c.canonical = *best;
        c.p_male_name = lexicon.surface_p_male(c.canonical);

        for (const NameMention& m : mentions) {
            if (!c.aliases.count(m.surface)) continue;
            switch (m.ref_type) {
                case RefType::First: ++c.count_first; break;
                case RefType::Second: ++c.count_second; break;
                case RefType::Third: ++c.count_third; break;
            }
        }
        clusters.push_back(std::move(c));
    }

    // deterministic order regardless of union-find root identities
    std::sort(clusters.begin(), clusters.end(),
              [](const NameCluster& a, const NameCluster& b) { return a.canonical < b.canonical; });
    return clusters;
}

CharacterRoster build_roster(const std::vector<NameCluster>& clusters,
                             const std::vector<NameMention>& classified_mentions) {
    CharacterRoster roster;

    for (const NameCluster& given : clusters) {
        NameCluster c = given;
        // recount from the classified mentions so counts always match aliases
        c.count_first = c.count_second = c.count_third = 0;
        for (const NameMention& m : classified_mentions) {
            if (!c.aliases.count(m.surface)) continue;
            switch (m.ref_type) {
                case RefType::First: ++c.count_first; break;
                case RefType::Second: ++c.count_second; break;
                case RefType::Third: ++c.count_third; break;
            }
        }
        if (c.count_first + c.count_second + c.count_third < 3) continue;
        if (c.count_first == 0 && c.count_second == 0) continue;  // third person only
        roster.clusters.push_back(std::move(c));
    }

    if (roster.clusters.empty()) throw ParseError("no identifiable characters");

    double total = 0;
    for (const NameCluster& c : roster.clusters) total += static_cast<double>(c.count_first + c.count_second);
    if (total > 0) {
        for (const NameCluster& c : roster.clusters)
            roster.prior.push_back(static_cast<double>(c.count_first + c.count_second) / total);
    } else {
        // unreachable after the third-person filter, but keeps d well defined
        double grand = 0;
        for (const NameCluster& c : roster.clusters)
            grand += static_cast<double>(c.count_first + c.count_second + c.count_third);
        for (const NameCluster& c : roster.clusters)
            roster.prior.push_back(
                static_cast<double>(c.count_first + c.count_second + c.count_third) / grand);
    }

    for (std::size_t k = 0; k < roster.clusters.size(); ++k)
        for (const std::string& alias : roster.clusters[k].aliases)
            roster.alias_to_class_[alias] = static_cast<int>(k);
    return roster;
}

}  // namespace namecast
