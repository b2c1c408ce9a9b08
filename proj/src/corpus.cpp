#include "scidiv/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <string_view>

#include <json.hpp>

namespace scidiv {

namespace {

constexpr std::string_view kCsvHeader = "article_id,journal_id,year,pages,authors";

const std::vector<std::uint32_t> kNoPositions;
const std::set<JournalId> kNoJournals;

bool valid_id(const std::string& s) {
    if (s.empty()) return false;
    for (const char ch : s)
        if (ch == ',' || ch == ';' || ch == '\n' || ch == '\r') return false;
    return true;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

bool parse_integer(std::string_view text, long long& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && !text.empty();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

Article parse_csv_row(std::string_view line, long lineno) {
    const auto cols = split(line, ',');
    if (cols.size() != 5)
        throw ParseError("expected 5 columns, got " + std::to_string(cols.size()), lineno);

    Article a;
    a.id = std::string(cols[0]);
    a.journal = std::string(cols[1]);

    long long year = 0;
    if (!parse_integer(cols[2], year)) throw ParseError("year is not an integer", lineno);
    a.year = static_cast<int>(year);

    if (!parse_integer(cols[3], a.pages)) throw ParseError("pages is not an integer", lineno);
    if (a.pages < 1) throw ParseError("pages must be >= 1", lineno);

    if (cols[4].empty()) throw ParseError("empty author list", lineno);
    for (const auto part : split(cols[4], ';')) {
        if (part.empty()) throw ParseError("empty author identifier", lineno);
        a.authors.emplace_back(part);
    }
    return a;
}

Article parse_jsonl_row(const std::string& line, long lineno) {
    nlohmann::json obj;
    try {
        obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), lineno);
    }
    if (!obj.is_object()) throw ParseError("expected a JSON object", lineno);
    for (const char* key : {"article_id", "journal_id", "year", "pages", "authors"})
        if (!obj.contains(key)) throw ParseError(std::string("missing key '") + key + "'", lineno);

    if (!obj["article_id"].is_string() || !obj["journal_id"].is_string())
        throw ParseError("article_id and journal_id must be strings", lineno);
    if (!obj["year"].is_number_integer()) throw ParseError("year is not an integer", lineno);
    if (!obj["pages"].is_number_integer()) throw ParseError("pages is not an integer", lineno);
    if (!obj["authors"].is_array()) throw ParseError("authors must be an array", lineno);

    Article a;
    a.id = obj["article_id"].get<std::string>();
    a.journal = obj["journal_id"].get<std::string>();
    a.year = obj["year"].get<int>();
    a.pages = obj["pages"].get<long long>();
    if (a.pages < 1) throw ParseError("pages must be >= 1", lineno);
    if (obj["authors"].empty()) throw ParseError("empty author list", lineno);
    for (const auto& item : obj["authors"]) {
        if (!item.is_string()) throw ParseError("author identifiers must be strings", lineno);
        a.authors.push_back(item.get<std::string>());
    }
    return a;
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view bytes) {
    for (const char ch : bytes) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string compute_fingerprint(const std::vector<Article>& articles) {
    std::uint64_t h = 1469598103934665603ULL;
    for (const Article& a : articles) {
        h = fnv1a(h, a.id);
        h = fnv1a(h, "\x1f");
        h = fnv1a(h, a.journal);
        h = fnv1a(h, "\x1f");
        h = fnv1a(h, std::to_string(a.year));
        h = fnv1a(h, "\x1f");
        h = fnv1a(h, std::to_string(a.pages));
        h = fnv1a(h, "\x1f");
        for (std::size_t i = 0; i < a.authors.size(); ++i) {
            if (i) h = fnv1a(h, ";");
            h = fnv1a(h, a.authors[i]);
        }
        h = fnv1a(h, "\x1e");
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace

Corpus Corpus::from_articles(std::vector<Article> articles) {
    Corpus c;
    c.articles_ = std::move(articles);
    c.by_id_.reserve(c.articles_.size());

    for (std::uint32_t pos = 0; pos < c.articles_.size(); ++pos) {
        Article& a = c.articles_[pos];
        if (!valid_id(a.id)) throw DomainError("invalid article id: '" + a.id + "'");
        if (!valid_id(a.journal))
            throw DomainError("invalid journal id: '" + a.journal + "' (article " + a.id + ")");
        if (a.pages < 1) throw DomainError("pages must be >= 1 (article " + a.id + ")");
        if (a.authors.empty()) throw DomainError("empty author list (article " + a.id + ")");

        std::sort(a.authors.begin(), a.authors.end());
        for (std::size_t i = 0; i < a.authors.size(); ++i) {
            if (!valid_id(a.authors[i]))
                throw DomainError("invalid author id: '" + a.authors[i] + "' (article " + a.id + ")");
            if (i && a.authors[i] == a.authors[i - 1])
                throw DuplicateError("duplicate author '" + a.authors[i] + "' on article " + a.id);
        }

        if (!c.by_id_.emplace(a.id, pos).second)
            throw DuplicateError("duplicate article id: " + a.id);

        c.by_journal_[a.journal].push_back(pos);
        c.page_totals_[a.journal] += a.pages;
        c.page_totals_by_year_[{a.journal, a.year}] += a.pages;
        for (const AuthorId& k : a.authors) {
            c.by_author_[k].push_back(pos);
            c.by_journal_author_year_[{a.journal, k, a.year}].push_back(pos);
            c.journals_of_author_[k].insert(a.journal);
            c.journals_of_author_year_[{k, a.year}].insert(a.journal);
        }

        if (pos == 0) {
            c.min_year_ = c.max_year_ = a.year;
        } else {
            c.min_year_ = std::min(c.min_year_, a.year);
            c.max_year_ = std::max(c.max_year_, a.year);
        }
    }

    c.fingerprint_ = compute_fingerprint(c.articles_);
    return c;
}

bool Corpus::has_article(const ArticleId& id) const { return by_id_.count(id) != 0; }

const Article& Corpus::article(const ArticleId& id) const {
    const auto it = by_id_.find(id);
    if (it == by_id_.end()) throw LookupError("unknown article id: " + id);
    return articles_[it->second];
}

std::uint32_t Corpus::position_of(const ArticleId& id) const {
    const auto it = by_id_.find(id);
    if (it == by_id_.end()) throw LookupError("unknown article id: " + id);
    return it->second;
}

bool Corpus::has_journal(const JournalId& j) const { return by_journal_.count(j) != 0; }
bool Corpus::has_author(const AuthorId& k) const { return by_author_.count(k) != 0; }

const std::vector<std::uint32_t>& Corpus::articles_of_journal(const JournalId& j) const {
    const auto it = by_journal_.find(j);
    return it == by_journal_.end() ? kNoPositions : it->second;
}

const std::vector<std::uint32_t>& Corpus::articles_of_author(const AuthorId& k) const {
    const auto it = by_author_.find(k);
    return it == by_author_.end() ? kNoPositions : it->second;
}

const std::vector<std::uint32_t>& Corpus::articles_of(const JournalId& j, const AuthorId& k,
                                                      int year) const {
    const auto it = by_journal_author_year_.find({j, k, year});
    return it == by_journal_author_year_.end() ? kNoPositions : it->second;
}

const std::set<JournalId>& Corpus::journals_of_author(const AuthorId& k) const {
    const auto it = journals_of_author_.find(k);
    return it == journals_of_author_.end() ? kNoJournals : it->second;
}

const std::set<JournalId>& Corpus::journals_of_author_year(const AuthorId& k, int year) const {
    const auto it = journals_of_author_year_.find({k, year});
    return it == journals_of_author_year_.end() ? kNoJournals : it->second;
}

long long Corpus::page_total(const JournalId& j) const {
    const auto it = page_totals_.find(j);
    return it == page_totals_.end() ? 0 : it->second;
}

long long Corpus::page_total(const JournalId& j, int year) const {
    const auto it = page_totals_by_year_.find({j, year});
    return it == page_totals_by_year_.end() ? 0 : it->second;
}

std::vector<JournalId> Corpus::journals() const {
    std::vector<JournalId> out;
    out.reserve(by_journal_.size());
    for (const auto& [j, _] : by_journal_) out.push_back(j);
    return out;
}

std::vector<AuthorId> Corpus::authors() const {
    std::vector<AuthorId> out;
    out.reserve(by_author_.size());
    for (const auto& [k, _] : by_author_) out.push_back(k);
    return out;
}

int Corpus::min_year() const {
    if (empty()) throw DomainError("empty corpus has no year span");
    return min_year_;
}

int Corpus::max_year() const {
    if (empty()) throw DomainError("empty corpus has no year span");
    return max_year_;
}

Corpus load_corpus(std::istream& in, CorpusFormat format) {
    std::vector<Article> articles;
    std::unordered_map<std::string, long> seen;  // id -> first line
    std::string line;
    long lineno = 0;

    if (format == CorpusFormat::csv) {
        if (!std::getline(in, line)) throw ParseError("missing CSV header", 1);
        ++lineno;
        strip_cr(line);
        if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0) line.erase(0, 3);
        if (line != kCsvHeader)
            throw ParseError("bad header, expected '" + std::string(kCsvHeader) + "'", 1);
    }

    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (line.empty()) continue;
        Article a = format == CorpusFormat::csv ? parse_csv_row(line, lineno)
                                                : parse_jsonl_row(line, lineno);
        const auto [it, inserted] = seen.emplace(a.id, lineno);
        if (!inserted)
            throw DuplicateError("line " + std::to_string(lineno) + ": duplicate article id '" +
                                 a.id + "' (first seen on line " + std::to_string(it->second) + ")");
        articles.push_back(std::move(a));
    }

    return Corpus::from_articles(std::move(articles));
}

Corpus filter_by_period(const Corpus& corpus, YearRange years) {
    if (years.first > years.last)
        throw DomainError("empty year range: " + std::to_string(years.first) + ":" +
                          std::to_string(years.last));
    std::vector<Article> kept;
    for (const Article& a : corpus.articles())
        if (a.year >= years.first && a.year <= years.last) kept.push_back(a);
    return Corpus::from_articles(std::move(kept));
}

Rational article_weight(const Corpus& corpus, const ArticleId& id) {
    const Article& a = corpus.article(id);
    return Rational(a.pages, static_cast<long long>(a.authors.size()));
}

Rational normalized_pages(const Corpus& corpus, const ArticleId& id) {
    const Article& a = corpus.article(id);
    return Rational(a.pages, corpus.page_total(a.journal));
}

}  // namespace scidiv
