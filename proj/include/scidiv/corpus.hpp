#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scidiv/errors.hpp"
#include "scidiv/rational.hpp"

namespace scidiv {

using ArticleId = std::string;
using JournalId = std::string;
using AuthorId = std::string;

// One bibliographic record. Identifiers are opaque non-empty strings without
// comma, semicolon or line breaks; authors are kept sorted and unique.
struct Article {
    ArticleId id;
    JournalId journal;
    int year = 0;
    long long pages = 0;            // >= 1
    std::vector<AuthorId> authors;  // non-empty
};

// Inclusive calendar-year range.
struct YearRange {
    int first = 0;
    int last = 0;
};

enum class CorpusFormat { csv, jsonl };

// Immutable, fully indexed collection of articles. Index vectors hold
// positions into articles(), in file order; map-based indexes iterate in
// lexicographic key order, which every deterministic traversal relies on.
class Corpus {
public:
    Corpus() = default;

    // Validates every record (identifier charset, pages >= 1, non-empty
    // unique author sets, unique article ids) and builds all indexes.
    static Corpus from_articles(std::vector<Article> articles);

    std::size_t size() const noexcept { return articles_.size(); }
    bool empty() const noexcept { return articles_.empty(); }
    const std::vector<Article>& articles() const noexcept { return articles_; }

    bool has_article(const ArticleId& id) const;
    const Article& article(const ArticleId& id) const;  // LookupError if unknown
    std::uint32_t position_of(const ArticleId& id) const;

    bool has_journal(const JournalId& j) const;
    bool has_author(const AuthorId& k) const;

    // I(j), I(k), I(j,k,y): empty when the key is unknown.
    const std::vector<std::uint32_t>& articles_of_journal(const JournalId& j) const;
    const std::vector<std::uint32_t>& articles_of_author(const AuthorId& k) const;
    const std::vector<std::uint32_t>& articles_of(const JournalId& j, const AuthorId& k,
                                                  int year) const;

    // J(k) and J(k,y).
    const std::set<JournalId>& journals_of_author(const AuthorId& k) const;
    const std::set<JournalId>& journals_of_author_year(const AuthorId& k, int year) const;

    // P(j) and P(j,y); zero when the key is unknown.
    long long page_total(const JournalId& j) const;
    long long page_total(const JournalId& j, int year) const;

    const std::map<JournalId, std::vector<std::uint32_t>>& journal_index() const noexcept {
        return by_journal_;
    }
    const std::map<AuthorId, std::vector<std::uint32_t>>& author_index() const noexcept {
        return by_author_;
    }

    std::vector<JournalId> journals() const;
    std::vector<AuthorId> authors() const;

    int min_year() const;  // DomainError when the corpus is empty
    int max_year() const;

    // FNV-1a 64 over the canonical record serialization; identifies the exact
    // corpus content a matrix was built from.
    const std::string& fingerprint() const noexcept { return fingerprint_; }

private:
    std::vector<Article> articles_;
    std::unordered_map<ArticleId, std::uint32_t> by_id_;
    std::map<JournalId, std::vector<std::uint32_t>> by_journal_;
    std::map<AuthorId, std::vector<std::uint32_t>> by_author_;
    std::map<std::tuple<JournalId, AuthorId, int>, std::vector<std::uint32_t>> by_journal_author_year_;
    std::map<AuthorId, std::set<JournalId>> journals_of_author_;
    std::map<std::pair<AuthorId, int>, std::set<JournalId>> journals_of_author_year_;
    std::map<JournalId, long long> page_totals_;
    std::map<std::pair<JournalId, int>, long long> page_totals_by_year_;
    std::string fingerprint_;
    int min_year_ = 0;
    int max_year_ = 0;
};

// Reads a corpus from a UTF-8 stream.
//
// CSV: required header `article_id,journal_id,year,pages,authors`; `authors`
// is a `;`-separated list. JSONL: one object per line with the same five
// keys, `authors` as an array of strings. Unix and Windows line endings are
// both accepted. Errors carry 1-based line numbers.
Corpus load_corpus(std::istream& in, CorpusFormat format);

// Corpus restricted to articles whose year lies in `years`, all indexes and
// page totals rebuilt over the subset. The empty result is valid.
Corpus filter_by_period(const Corpus& corpus, YearRange years);

// p(i) / N(K(i)) as an exact rational.
Rational article_weight(const Corpus& corpus, const ArticleId& id);

// p(i) / P(j(i)) as an exact rational, in (0, 1].
Rational normalized_pages(const Corpus& corpus, const ArticleId& id);

}  // namespace scidiv
