#pragma once

#include <vector>

#include "scidiv/corpus.hpp"

// Tiny hand-checked corpora shared across the test suites.
namespace fixtures {

// Two articles, one author, two journals, consecutive years.
inline std::vector<scidiv::Article> c2_articles() {
    return {
        {"a1", "A", 2000, 4, {"k1"}},
        {"a2", "B", 2001, 6, {"k1"}},
    };
}

inline scidiv::Corpus c2() { return scidiv::Corpus::from_articles(c2_articles()); }

inline const char* c2_csv =
    "article_id,journal_id,year,pages,authors\n"
    "a1,A,2000,4,k1\n"
    "a2,B,2001,6,k1\n";

// Three articles with overlapping author sets; journal A attains
// S(A,A) == P(A) because nobody publishes twice in it.
inline std::vector<scidiv::Article> c3_articles() {
    return {
        {"a1", "A", 2000, 4, {"k1", "k2"}},
        {"a2", "B", 2000, 6, {"k1"}},
        {"a3", "B", 2000, 8, {"k2", "k3"}},
    };
}

inline scidiv::Corpus c3() { return scidiv::Corpus::from_articles(c3_articles()); }

}  // namespace fixtures
