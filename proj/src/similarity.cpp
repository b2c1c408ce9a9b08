#include "scidiv/similarity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string_view>
#include <thread>

#include <json.hpp>

namespace scidiv {

namespace {

// Weight of one article: the exact rational (for min's comparison) and its
// double image (what the accumulators consume).
struct ArticleTerm {
    std::uint32_t journal = 0;
    long long wnum = 0;
    long long wden = 1;
    double weight = 0.0;
};

inline bool exact_less(const ArticleTerm& a, const ArticleTerm& b) {
    return static_cast<__int128>(a.wnum) * b.wden < static_cast<__int128>(b.wnum) * a.wden;
}

inline double combine(Combiner mode, const ArticleTerm& a, const ArticleTerm& b) {
    switch (mode) {
        case Combiner::min:
            return exact_less(b, a) ? b.weight : a.weight;
        case Combiner::arithmetic:
            return 0.5 * (a.weight + b.weight);
        case Combiner::geometric:
            return std::sqrt(a.weight * b.weight);
    }
    return 0.0;
}

// Reusable buffers for one author's accumulation. Cells are dense over the
// author's distinct journals while that set is small, a hash map otherwise;
// the switch depends only on the input, never on threading.
struct AuthorScratch {
    static constexpr std::size_t kDenseLimit = 512;

    std::vector<std::uint32_t> local_journals;  // global journal index per slot
    std::vector<std::uint32_t> slots;           // per article in the list
    std::vector<double> dense;
    std::unordered_map<std::uint64_t, double> sparse;
};

// Contributions of one author's article list, emitted with canonical
// (min, max) global pair keys. Each key appears at most once per author.
void author_partial(const std::vector<std::uint32_t>& arts,
                    const std::vector<ArticleTerm>& terms, Combiner mode, AuthorScratch& s,
                    std::vector<std::pair<std::uint64_t, double>>& out) {
    const std::size_t n = arts.size();
    s.local_journals.clear();
    s.slots.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t g = terms[arts[i]].journal;
        std::uint32_t slot = 0;
        while (slot < s.local_journals.size() && s.local_journals[slot] != g) ++slot;
        if (slot == s.local_journals.size()) s.local_journals.push_back(g);
        s.slots[i] = slot;
    }
    const std::size_t m = s.local_journals.size();
    const bool dense = m <= AuthorScratch::kDenseLimit;
    if (dense)
        s.dense.assign(m * m, 0.0);
    else
        s.sparse.clear();

    const auto cell_add = [&](std::uint32_t la, std::uint32_t lb, double v) {
        if (la > lb) std::swap(la, lb);
        if (dense)
            s.dense[la * m + lb] += v;
        else
            s.sparse[SimilarityMatrix::pack(la, lb)] += v;
    };

    for (std::size_t i = 0; i < n; ++i) {
        const ArticleTerm& ti = terms[arts[i]];
        cell_add(s.slots[i], s.slots[i], combine(mode, ti, ti));
        for (std::size_t j = i + 1; j < n; ++j) {
            const ArticleTerm& tj = terms[arts[j]];
            const double c = combine(mode, ti, tj);
            if (s.slots[i] == s.slots[j])
                cell_add(s.slots[i], s.slots[i], 2.0 * c);  // both ordered directions
            else
                cell_add(s.slots[i], s.slots[j], c);
        }
    }

    out.clear();
    const auto emit = [&](std::uint32_t la, std::uint32_t lb, double v) {
        std::uint32_t ga = s.local_journals[la];
        std::uint32_t gb = s.local_journals[lb];
        if (ga > gb) std::swap(ga, gb);
        out.emplace_back(SimilarityMatrix::pack(ga, gb), v);
    };
    if (dense) {
        for (std::uint32_t la = 0; la < m; ++la)
            for (std::uint32_t lb = la; lb < m; ++lb)
                if (const double v = s.dense[la * m + lb]; v != 0.0) emit(la, lb, v);
    } else {
        for (const auto& [key, v] : s.sparse)
            emit(static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key), v);
    }
}

long long checked_mul(long long a, long long b) {
    const __int128 p = static_cast<__int128>(a) * b;
    if (p > static_cast<__int128>(0x7fffffffffffffffLL))
        throw DomainError("page totals overflow the weight denominator");
    return static_cast<long long>(p);
}

double parse_value(std::string_view text, long lineno) {
    const std::string tmp(text);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size() || tmp.empty())
        throw ParseError("value is not a number", lineno);
    if (!std::isfinite(v) || v < 0.0) throw ParseError("value must be finite and >= 0", lineno);
    return v;
}

void print_value(std::ostream& out, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf;
}

}  // namespace

std::string to_string(Combiner c) {
    switch (c) {
        case Combiner::min: return "min";
        case Combiner::arithmetic: return "arith";
        case Combiner::geometric: return "geom";
    }
    return "min";
}

std::string to_string(PageMode m) {
    return m == PageMode::raw ? "raw" : "normalized";
}

Combiner combiner_from_string(const std::string& s) {
    if (s == "min") return Combiner::min;
    if (s == "arith" || s == "arithmetic") return Combiner::arithmetic;
    if (s == "geom" || s == "geometric") return Combiner::geometric;
    throw DomainError("unknown combiner: " + s);
}

PageMode page_mode_from_string(const std::string& s) {
    if (s == "raw") return PageMode::raw;
    if (s == "normalized" || s == "journal_normalized") return PageMode::journal_normalized;
    throw DomainError("unknown page mode: " + s);
}

SimilarityMatrix::SimilarityMatrix(std::vector<JournalId> journals, SimConfig config,
                                   std::unordered_map<std::uint64_t, double> cells)
    : journals_(std::move(journals)), config_(config), cells_(std::move(cells)) {}

std::optional<std::uint32_t> SimilarityMatrix::index_of(const JournalId& j) const {
    const auto it = std::lower_bound(journals_.begin(), journals_.end(), j);
    if (it == journals_.end() || *it != j) return std::nullopt;
    return static_cast<std::uint32_t>(it - journals_.begin());
}

double SimilarityMatrix::lookup(const JournalId& a, const JournalId& b) const {
    const auto ia = index_of(a);
    if (!ia) return 0.0;
    const auto ib = index_of(b);
    if (!ib) return 0.0;
    return lookup_index(*ia, *ib);
}

double SimilarityMatrix::lookup_index(std::uint32_t a, std::uint32_t b) const {
    if (a > b) std::swap(a, b);
    const auto it = cells_.find(pack(a, b));
    return it == cells_.end() ? 0.0 : it->second;
}

std::vector<SimilarityMatrix::Entry> SimilarityMatrix::sorted_entries() const {
    std::vector<Entry> out;
    out.reserve(cells_.size());
    for (const auto& [key, v] : cells_)
        out.push_back({static_cast<std::uint32_t>(key >> 32), static_cast<std::uint32_t>(key), v});
    std::sort(out.begin(), out.end(), [](const Entry& x, const Entry& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    return out;
}

SimilarityMatrix build_similarity(const Corpus& corpus, const SimConfig& cfg, unsigned threads) {
    std::vector<JournalId> journals = corpus.journals();

    std::unordered_map<std::string_view, std::uint32_t> jindex;
    jindex.reserve(journals.size());
    for (std::uint32_t i = 0; i < journals.size(); ++i) jindex.emplace(journals[i], i);

    std::vector<ArticleTerm> terms(corpus.size());
    for (std::uint32_t pos = 0; pos < corpus.size(); ++pos) {
        const Article& a = corpus.articles()[pos];
        long long den = static_cast<long long>(a.authors.size());
        if (cfg.page_mode == PageMode::journal_normalized)
            den = checked_mul(den, corpus.page_total(a.journal));
        const Rational w(a.pages, den);
        terms[pos] = {jindex.at(a.journal), w.num(), w.den(), w.to_double()};
    }

    // Author lists in lexicographic order. Partials are always folded in
    // this order, which pins the floating-point result for any thread count.
    std::vector<const std::vector<std::uint32_t>*> lists;
    lists.reserve(corpus.author_index().size());
    for (const auto& [k, arts] : corpus.author_index()) lists.push_back(&arts);

    std::unordered_map<std::uint64_t, double> cells;
    const auto fold = [&cells](const std::vector<std::pair<std::uint64_t, double>>& part) {
        for (const auto& [key, v] : part) cells[key] += v;
    };

    if (threads <= 1 || lists.size() < 2) {
        AuthorScratch scratch;
        std::vector<std::pair<std::uint64_t, double>> part;
        for (const auto* arts : lists) {
            author_partial(*arts, terms, cfg.combiner, scratch, part);
            fold(part);
        }
    } else {
        constexpr std::size_t kBlock = 2048;
        std::vector<std::vector<std::pair<std::uint64_t, double>>> parts(
            std::min(kBlock, lists.size()));
        for (std::size_t base = 0; base < lists.size(); base += kBlock) {
            const std::size_t end = std::min(base + kBlock, lists.size());
            std::atomic<std::size_t> next{base};
            std::vector<std::thread> workers;
            const unsigned nworkers = std::min<std::size_t>(threads, end - base);
            for (unsigned t = 0; t < nworkers; ++t) {
                workers.emplace_back([&] {
                    AuthorScratch scratch;
                    for (std::size_t r = next.fetch_add(1); r < end; r = next.fetch_add(1))
                        author_partial(*lists[r], terms, cfg.combiner, scratch, parts[r - base]);
                });
            }
            for (auto& w : workers) w.join();
            for (std::size_t r = base; r < end; ++r) fold(parts[r - base]);
        }
    }

    return SimilarityMatrix(std::move(journals), cfg, std::move(cells));
}

SimilarityMatrix second_order(const SimilarityMatrix& matrix, unsigned threads) {
    const std::size_t n = matrix.journals().size();
    std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(n);
    for (const auto& [key, v] : matrix.cells()) {
        const auto a = static_cast<std::uint32_t>(key >> 32);
        const auto b = static_cast<std::uint32_t>(key);
        rows[a].emplace_back(b, v);
        if (a != b) rows[b].emplace_back(a, v);
    }
    for (auto& row : rows) std::sort(row.begin(), row.end());

    std::unordered_map<std::uint64_t, double> cells;
    const unsigned nworkers =
        n == 0 ? 0 : std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));

    std::vector<std::vector<std::pair<std::uint64_t, double>>> results(std::max(1u, nworkers));
    std::atomic<std::uint32_t> next{0};
    const auto worker = [&](unsigned slot) {
        std::vector<double> acc(n, 0.0);
        std::vector<std::uint32_t> touched;
        auto& out = results[slot];
        for (std::uint32_t r = next.fetch_add(1); r < n; r = next.fetch_add(1)) {
            touched.clear();
            // Inner sums run in ascending middle-journal order, matching the
            // naive triple loop term for term.
            for (const auto& [mid, v1] : rows[r]) {
                for (const auto& [col, v2] : rows[mid]) {
                    if (acc[col] == 0.0) touched.push_back(col);
                    acc[col] += v1 * v2;
                }
            }
            for (const std::uint32_t col : touched) {
                if (col >= r && acc[col] != 0.0)
                    out.emplace_back(SimilarityMatrix::pack(r, col), acc[col]);
                acc[col] = 0.0;
            }
        }
    };

    if (nworkers <= 1) {
        if (n != 0) worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nworkers; ++t) pool.emplace_back(worker, t);
        for (auto& w : pool) w.join();
    }
    for (const auto& out : results)
        for (const auto& [key, v] : out) cells.emplace(key, v);

    return SimilarityMatrix(matrix.journals(), matrix.config(), std::move(cells));
}

SimilarityMatrix blend(const SimilarityMatrix& first, const SimilarityMatrix& second,
                       double theta) {
    if (first.journals() != second.journals())
        throw ShapeError("blend: operands have different journal lists");
    if (!(theta >= 0.0)) throw DomainError("blend: theta must be >= 0");

    const auto e1 = first.sorted_entries();
    const auto e2 = second.sorted_entries();
    std::unordered_map<std::uint64_t, double> cells;
    cells.reserve(e1.size() + e2.size());

    std::size_t i = 0, j = 0;
    while (i < e1.size() || j < e2.size()) {
        const std::uint64_t k1 =
            i < e1.size() ? SimilarityMatrix::pack(e1[i].a, e1[i].b) : ~0ULL;
        const std::uint64_t k2 =
            j < e2.size() ? SimilarityMatrix::pack(e2[j].a, e2[j].b) : ~0ULL;
        std::uint64_t key;
        double v;
        if (k1 < k2) {
            key = k1;
            v = e1[i++].value;
        } else if (k2 < k1) {
            key = k2;
            v = theta * e2[j++].value;
        } else {
            key = k1;
            v = e1[i++].value + theta * e2[j++].value;
        }
        if (v != 0.0) cells.emplace(key, v);
    }

    SimConfig cfg = first.config();
    cfg.theta = theta;
    return SimilarityMatrix(first.journals(), cfg, std::move(cells));
}

SimilarityMatrix build_analysis_matrix(const Corpus& corpus, const SimConfig& cfg,
                                       unsigned threads) {
    SimilarityMatrix base = build_similarity(corpus, cfg, threads);
    if (cfg.theta == 0.0) return base;
    return blend(base, second_order(base, threads), cfg.theta);
}

double similarity_lookup(const SimilarityMatrix& matrix, const JournalId& a,
                         const JournalId& b) {
    return matrix.lookup(a, b);
}

double average_similarity(const SimilarityMatrix& matrix, const std::set<JournalId>& set1,
                          const std::set<JournalId>& set2) {
    if (set1.empty() || set2.empty())
        throw DomainError("average_similarity: journal sets must be non-empty");
    double sum = 0.0;
    for (const JournalId& a : set1)
        for (const JournalId& b : set2) sum += matrix.lookup(a, b);
    return sum / (static_cast<double>(set1.size()) * static_cast<double>(set2.size()));
}

void write_matrix_csv(const SimilarityMatrix& matrix, std::ostream& out) {
    out << "journal_a,journal_b,value\n";
    for (const auto& e : matrix.sorted_entries()) {
        out << matrix.journals()[e.a] << ',' << matrix.journals()[e.b] << ',';
        print_value(out, e.value);
        out << '\n';
    }
}

SimilarityMatrix read_matrix_csv(std::istream& in, SimConfig config) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing matrix header", 1);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "journal_a,journal_b,value")
        throw ParseError("bad header, expected 'journal_a,journal_b,value'", 1);

    struct Row {
        JournalId a, b;
        double value;
    };
    std::vector<Row> trips;
    std::set<JournalId> names;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
        if (c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos)
            throw ParseError("expected 3 columns", lineno);
        Row r{line.substr(0, c1), line.substr(c1 + 1, c2 - c1 - 1), 0.0};
        if (r.a.empty() || r.b.empty()) throw ParseError("empty journal id", lineno);
        if (r.a > r.b) std::swap(r.a, r.b);
        r.value = parse_value(std::string_view(line).substr(c2 + 1), lineno);
        names.insert(r.a);
        names.insert(r.b);
        trips.push_back(std::move(r));
    }

    std::vector<JournalId> journals(names.begin(), names.end());
    std::unordered_map<std::string_view, std::uint32_t> jindex;
    for (std::uint32_t i = 0; i < journals.size(); ++i) jindex.emplace(journals[i], i);

    std::unordered_map<std::uint64_t, double> cells;
    cells.reserve(trips.size());
    for (const Row& r : trips) {
        if (r.value == 0.0) continue;
        const std::uint64_t key = SimilarityMatrix::pack(jindex.at(r.a), jindex.at(r.b));
        if (!cells.emplace(key, r.value).second)
            throw DuplicateError("duplicate matrix entry " + r.a + "," + r.b);
    }
    return SimilarityMatrix(std::move(journals), config, std::move(cells));
}

void write_matrix_metadata(const MatrixMetadata& meta, std::ostream& out) {
    nlohmann::json j{
        {"combiner", to_string(meta.config.combiner)},
        {"page_mode", to_string(meta.config.page_mode)},
        {"theta", meta.config.theta},
        {"corpus_fingerprint", meta.corpus_fingerprint},
    };
    if (meta.years)
        j["years"] = {{"first", meta.years->first}, {"last", meta.years->last}};
    else
        j["years"] = nullptr;
    out << j.dump(2) << '\n';
}

MatrixMetadata read_matrix_metadata(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid metadata JSON: ") + e.what());
    }
    MatrixMetadata meta;
    meta.config.combiner = combiner_from_string(j.at("combiner").get<std::string>());
    meta.config.page_mode = page_mode_from_string(j.at("page_mode").get<std::string>());
    meta.config.theta = j.at("theta").get<double>();
    if (meta.config.theta < 0.0) throw ParseError("metadata theta must be >= 0");
    meta.corpus_fingerprint = j.value("corpus_fingerprint", std::string());
    if (j.contains("years") && !j["years"].is_null())
        meta.years = YearRange{j["years"].at("first").get<int>(), j["years"].at("last").get<int>()};
    return meta;
}

}  // namespace scidiv
