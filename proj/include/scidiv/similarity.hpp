#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "scidiv/corpus.hpp"

namespace scidiv {

// How two article weights are merged into one contribution.
enum class Combiner { min, arithmetic, geometric };

// Whether an article counts its raw page number or its share of the
// journal's total pages.
enum class PageMode { raw, journal_normalized };

struct SimConfig {
    Combiner combiner = Combiner::min;
    PageMode page_mode = PageMode::journal_normalized;
    double theta = 0.0;  // weight of the second-order term in a blended matrix
};

std::string to_string(Combiner c);
std::string to_string(PageMode m);
Combiner combiner_from_string(const std::string& s);    // "min" | "arith" | "geom"
PageMode page_mode_from_string(const std::string& s);   // "raw" | "normalized"

// Sparse symmetric journal-by-journal similarity matrix. Cells are keyed by
// the unordered journal pair; an absent pair means similarity zero and every
// stored value is positive. Journal indexes follow the lexicographic order
// of the journal list.
class SimilarityMatrix {
public:
    struct Entry {
        std::uint32_t a = 0;  // a <= b, indexes into journals()
        std::uint32_t b = 0;
        double value = 0.0;
    };

    SimilarityMatrix() = default;
    SimilarityMatrix(std::vector<JournalId> journals, SimConfig config,
                     std::unordered_map<std::uint64_t, double> cells);

    const std::vector<JournalId>& journals() const noexcept { return journals_; }
    const SimConfig& config() const noexcept { return config_; }
    std::size_t entry_count() const noexcept { return cells_.size(); }
    bool empty() const noexcept { return cells_.empty(); }

    std::optional<std::uint32_t> index_of(const JournalId& j) const;

    // Stored value of the unordered pair, zero when absent or unknown.
    double lookup(const JournalId& a, const JournalId& b) const;
    double lookup_index(std::uint32_t a, std::uint32_t b) const;

    // Entries sorted by (a, b); the serialization order.
    std::vector<Entry> sorted_entries() const;

    const std::unordered_map<std::uint64_t, double>& cells() const noexcept { return cells_; }

    static std::uint64_t pack(std::uint32_t a, std::uint32_t b) noexcept {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

private:
    std::vector<JournalId> journals_;  // sorted lexicographically
    SimConfig config_;
    std::unordered_map<std::uint64_t, double> cells_;
};

// Accumulates the co-authorship similarity matrix: for every author, every
// ordered pair of their articles (i, i') contributes combiner(w(i), w(i'))
// to the cell of {j(i), j(i')}, where w(x) = page(x) / N(K(x)) and page(x)
// is p(x) or the journal-normalized share per cfg.page_mode. The two ordered
// directions of a pair carry the same value, and the stored unordered entry
// holds that per-direction value, so the diagonal accumulates both
// directions while an off-diagonal cell accumulates one.
//
// Contributions fold per author, in lexicographic author order; the result
// is bit-identical for any thread count. cfg.theta is recorded, not applied.
SimilarityMatrix build_similarity(const Corpus& corpus, const SimConfig& cfg,
                                  unsigned threads = 1);

// Matrix square over the same journal list: out(j,j') = sum over j'' of
// in(j,j'') * in(j'',j'), inner sum in ascending j'' order. Zero results are
// not stored. Rows are independent, so thread count never changes a value.
SimilarityMatrix second_order(const SimilarityMatrix& matrix, unsigned threads = 1);

// Entrywise first + theta * second. Both operands must share one journal
// list. The result records theta in its config.
SimilarityMatrix blend(const SimilarityMatrix& first, const SimilarityMatrix& second,
                       double theta);

// build_similarity, then the theta-weighted blend with its square when
// cfg.theta > 0. This is the matrix every analysis command consumes.
SimilarityMatrix build_analysis_matrix(const Corpus& corpus, const SimConfig& cfg,
                                       unsigned threads = 1);

double similarity_lookup(const SimilarityMatrix& matrix, const JournalId& a,
                         const JournalId& b);

// Arithmetic mean of lookup(j, j') over the full cross product set1 x set2;
// absent pairs and unknown journals count as zero. Sets must be non-empty.
double average_similarity(const SimilarityMatrix& matrix, const std::set<JournalId>& set1,
                          const std::set<JournalId>& set2);

// CSV serialization: header `journal_a,journal_b,value`, one row per stored
// unordered pair with journal_a <= journal_b, rows sorted by (journal_a,
// journal_b), values printed with up to 17 significant digits (round-trip
// exact).
void write_matrix_csv(const SimilarityMatrix& matrix, std::ostream& out);
SimilarityMatrix read_matrix_csv(std::istream& in, SimConfig config = {});

// Sidecar metadata recording what a stored matrix was built from.
struct MatrixMetadata {
    SimConfig config;
    std::optional<YearRange> years;
    std::string corpus_fingerprint;
};

void write_matrix_metadata(const MatrixMetadata& meta, std::ostream& out);
MatrixMetadata read_matrix_metadata(std::istream& in);

}  // namespace scidiv
