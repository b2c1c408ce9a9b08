#include "scidiv/centrality.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>

#include <json.hpp>

namespace scidiv {

namespace {

double list_weight(const Corpus& corpus, const Article& a, PageMode mode) {
    long long den = static_cast<long long>(a.authors.size());
    if (mode == PageMode::journal_normalized) {
        const __int128 wide = static_cast<__int128>(den) * corpus.page_total(a.journal);
        if (wide > static_cast<__int128>(0x7fffffffffffffffLL))
            throw DomainError("page totals overflow the weight denominator");
        den = static_cast<long long>(wide);
    }
    return Rational(a.pages, den).to_double();
}

void sort_by_score(std::vector<JournalScore>& scores) {
    std::sort(scores.begin(), scores.end(), [](const JournalScore& x, const JournalScore& y) {
        return x.score != y.score ? x.score > y.score : x.journal < y.journal;
    });
}

}  // namespace

std::vector<JournalScore> score_list_journals(const PublicationList& list,
                                              const SimilarityMatrix& matrix,
                                              const Corpus& corpus) {
    if (list.items.empty()) throw DomainError("publication list is empty");

    struct Item {
        JournalId journal;
        double weight;
    };
    std::vector<Item> items;
    items.reserve(list.items.size());
    std::set<JournalId> candidates;
    for (const ArticleId& id : list.items) {
        const Article& a = corpus.article(id);
        items.push_back({a.journal, list_weight(corpus, a, matrix.config().page_mode)});
        candidates.insert(a.journal);
    }

    std::vector<JournalScore> scores;
    scores.reserve(candidates.size());
    for (const JournalId& j : candidates) {
        double s = 0.0;
        for (const Item& item : items) s += matrix.lookup(j, item.journal) * item.weight;
        scores.push_back({j, s});
    }
    return scores;
}

std::vector<JournalId> central_journal(const PublicationList& list,
                                       const SimilarityMatrix& matrix, const Corpus& corpus) {
    const std::vector<JournalScore> scores = score_list_journals(list, matrix, corpus);
    double best = scores.front().score;
    for (const JournalScore& s : scores) best = std::max(best, s.score);
    std::vector<JournalId> out;
    for (const JournalScore& s : scores)
        if (s.score == best) out.push_back(s.journal);  // already in lexicographic order
    return out;
}

std::vector<JournalScore> rank_journals(const PublicationList& list,
                                        const SimilarityMatrix& matrix, const Corpus& corpus) {
    std::vector<JournalScore> scores = score_list_journals(list, matrix, corpus);
    sort_by_score(scores);
    return scores;
}

std::vector<JournalScore> suggest_journals(const AuthorId& author,
                                           const SimilarityMatrix& matrix, const Corpus& corpus,
                                           bool restrict_to_coauthors, std::size_t top_n) {
    if (!corpus.has_author(author)) throw LookupError("unknown author id: " + author);
    if (top_n == 0) throw DomainError("suggest_journals: top_n must be positive");

    PublicationList own{author, {}};
    for (const std::uint32_t pos : corpus.articles_of_author(author))
        own.items.push_back(corpus.articles()[pos].id);
    // Lexicographically first central journal when the maximum is tied.
    const JournalId target = central_journal(own, matrix, corpus).front();

    const std::set<JournalId>& published = corpus.journals_of_author(author);

    std::set<JournalId> allowed;
    if (restrict_to_coauthors) {
        for (const std::uint32_t pos : corpus.articles_of_author(author))
            for (const AuthorId& k : corpus.articles()[pos].authors)
                if (k != author) {
                    const auto& js = corpus.journals_of_author(k);
                    allowed.insert(js.begin(), js.end());
                }
    }

    std::vector<JournalScore> scores;
    for (const JournalId& j : matrix.journals()) {
        if (published.count(j)) continue;
        if (restrict_to_coauthors && !allowed.count(j)) continue;
        scores.push_back({j, matrix.lookup(j, target)});
    }
    sort_by_score(scores);
    if (scores.size() > top_n) scores.resize(top_n);
    return scores;
}

void write_scores_csv(const std::vector<JournalScore>& scores, std::ostream& out) {
    out << "rank,journal_id,score\n";
    char buf[40];
    for (std::size_t i = 0; i < scores.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", scores[i].score);
        out << i + 1 << ',' << scores[i].journal << ',' << buf << '\n';
    }
}

void write_scores_json(const std::vector<JournalScore>& scores, std::ostream& out) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < scores.size(); ++i)
        arr.push_back({{"rank", i + 1}, {"journal_id", scores[i].journal},
                       {"score", scores[i].score}});
    out << arr.dump(2) << '\n';
}

}  // namespace scidiv
