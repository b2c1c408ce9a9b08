#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "scidiv/centrality.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace scidiv;

namespace {

constexpr double kRelTol = 1e-12;

bool close_rel(double a, double b, double tol = kRelTol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_SUITE_BEGIN("centrality");

TEST_CASE("central journal on the worked examples") {
    const Corpus c2 = fixtures::c2();
    const auto m2 = build_similarity(c2, {Combiner::min, PageMode::raw});

    SUBCASE("singleton list has only one candidate") {
        CHECK(central_journal({"L", {"a1"}}, m2, c2) == std::vector<JournalId>{"A"});
    }
    SUBCASE("two-journal list") {
        const auto ranking = rank_journals({"L", {"a1", "a2"}}, m2, c2);
        REQUIRE(ranking.size() == 2);
        CHECK(ranking[0].journal == "B");
        CHECK(ranking[0].score == 52.0);  // 4*4 + 6*6
        CHECK(ranking[1].journal == "A");
        CHECK(ranking[1].score == 40.0);  // 4*4 + 4*6
        CHECK(central_journal({"L", {"a1", "a2"}}, m2, c2) == std::vector<JournalId>{"B"});
    }
    SUBCASE("three-article corpus") {
        const Corpus c3 = fixtures::c3();
        const auto m3 = build_similarity(c3, {Combiner::min, PageMode::raw});
        const auto ranking = rank_journals({"L", {"a1", "a2", "a3"}}, m3, c3);
        REQUIRE(ranking.size() == 2);
        CHECK(ranking[0].journal == "B");
        CHECK(ranking[0].score == 148.0);
        CHECK(ranking[1].journal == "A");
        CHECK(ranking[1].score == 48.0);
        CHECK(central_journal({"L", {"a1", "a2", "a3"}}, m3, c3) ==
              std::vector<JournalId>{"B"});
    }
    SUBCASE("empty list") {
        CHECK_THROWS_AS(central_journal({"L", {}}, m2, c2), DomainError);
        CHECK_THROWS_AS(rank_journals({"L", {}}, m2, c2), DomainError);
    }
}

TEST_CASE("a perfectly symmetric corpus ties both journals") {
    const Corpus c = Corpus::from_articles({
        {"a1", "A", 2000, 4, {"k1"}},
        {"a2", "B", 2000, 4, {"k1"}},
    });
    const auto m = build_similarity(c, {Combiner::min, PageMode::raw});
    const auto central = central_journal({"L", {"a1", "a2"}}, m, c);
    CHECK(central == std::vector<JournalId>{"A", "B"});

    // the leading block of the ranking is the central set, in id order
    const auto ranking = rank_journals({"L", {"a1", "a2"}}, m, c);
    CHECK(ranking[0].journal == "A");
    CHECK(ranking[1].journal == "B");
    CHECK(ranking[0].score == ranking[1].score);
}

TEST_CASE("scaling the matrix changes no decision") {
    std::mt19937 rng(2203);
    const auto articles = gen::random_articles(rng);
    const Corpus c = Corpus::from_articles(articles);
    const auto m = build_similarity(c, {Combiner::min, PageMode::raw});
    const PublicationList list{"L", gen::random_list(rng, articles)};

    std::unordered_map<std::uint64_t, double> scaled_cells;
    for (const auto& [key, value] : m.cells()) scaled_cells[key] = 8.0 * value;
    const SimilarityMatrix scaled(m.journals(), m.config(), std::move(scaled_cells));

    CHECK(central_journal(list, m, c) == central_journal(list, scaled, c));
    const auto r1 = rank_journals(list, m, c);
    const auto r2 = rank_journals(list, scaled, c);
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
        CHECK(r1[i].journal == r2[i].journal);
        CHECK(close_rel(r2[i].score, 8.0 * r1[i].score));
    }
}

TEST_CASE("random instances agree with per-journal summation") {
    std::mt19937 rng(2207);
    for (int round = 0; round < 40; ++round) {
        const auto articles = gen::random_articles(rng);
        const Corpus c = Corpus::from_articles(articles);
        const PageMode mode = round % 2 ? PageMode::raw : PageMode::journal_normalized;
        const auto m = build_similarity(c, {Combiner::min, mode});
        const PublicationList list{"L", gen::random_list(rng, articles)};

        const auto naive = oracle::naive_journal_scores(
            articles, list.items,
            [&](const std::string& x, const std::string& y) { return m.lookup(x, y); }, mode);
        const auto ranking = rank_journals(list, m, c);
        REQUIRE(ranking.size() == naive.size());
        for (const auto& js : ranking) CHECK(close_rel(js.score, naive.at(js.journal)));
        // the ranking is sorted and its head is the central set
        for (std::size_t i = 1; i < ranking.size(); ++i)
            CHECK(ranking[i - 1].score >= ranking[i].score);
        const auto central = central_journal(list, m, c);
        CHECK(std::find(central.begin(), central.end(), ranking[0].journal) != central.end());
        for (const auto& j : central) CHECK(close_rel(naive.at(j), ranking[0].score));
    }
}

TEST_CASE("journal suggestions") {
    SUBCASE("author who published everywhere gets nothing") {
        const Corpus c2 = fixtures::c2();
        const auto m = build_similarity(c2, {Combiner::min, PageMode::raw});
        CHECK(suggest_journals("k1", m, c2, false, 5).empty());
    }
    SUBCASE("closest unvisited journal") {
        const Corpus c3 = fixtures::c3();
        const auto m = build_similarity(c3, {Combiner::min, PageMode::raw});
        const auto got = suggest_journals("k3", m, c3, false, 5);
        REQUIRE(got.size() == 1);
        CHECK(got[0].journal == "A");
        CHECK(got[0].score == 4.0);  // S(A, B), B being k3's central journal

        // restricting to co-authors keeps A: k2 published in A
        const auto restricted = suggest_journals("k3", m, c3, true, 5);
        REQUIRE(restricted.size() == 1);
        CHECK(restricted[0].journal == "A");
    }
    SUBCASE("co-authors who published nowhere new") {
        const Corpus c = Corpus::from_articles({
            {"a1", "A", 2000, 4, {"k1", "k2"}},
            {"a2", "B", 2000, 6, {"k3"}},
        });
        const auto m = build_similarity(c, {Combiner::min, PageMode::raw});
        // unrestricted, B is a candidate for k1; restricted it is not, since
        // k1's only co-author k2 published in A alone
        CHECK(suggest_journals("k1", m, c, false, 5).size() == 1);
        CHECK(suggest_journals("k1", m, c, true, 5).empty());
    }
    SUBCASE("suggestions never include the author's own journals") {
        std::mt19937 rng(2213);
        for (int round = 0; round < 20; ++round) {
            const auto articles = gen::random_articles(rng);
            const Corpus c = Corpus::from_articles(articles);
            const auto m = build_similarity(c, {Combiner::min, PageMode::raw});
            for (const AuthorId& k : c.authors()) {
                for (const auto& js : suggest_journals(k, m, c, false, 3))
                    CHECK(c.journals_of_author(k).count(js.journal) == 0);
            }
        }
    }
    SUBCASE("errors") {
        const Corpus c2 = fixtures::c2();
        const auto m = build_similarity(c2, {Combiner::min, PageMode::raw});
        CHECK_THROWS_AS(suggest_journals("ghost", m, c2, false, 5), LookupError);
        CHECK_THROWS_AS(suggest_journals("k1", m, c2, false, 0), DomainError);
    }
}

TEST_CASE("score serialization") {
    std::ostringstream out;
    write_scores_csv({{"B", 52.0}, {"A", 40.0}}, out);
    CHECK(out.str() == "rank,journal_id,score\n1,B,52\n2,A,40\n");
}

TEST_SUITE_END();
