#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scidiv/corpus.hpp"
#include "scidiv/similarity.hpp"

namespace scidiv {

// Ordered multiset of article ids; duplicates are permitted and counted
// with multiplicity.
struct PublicationList {
    std::string label;
    std::vector<ArticleId> items;
};

struct DiversityReport {
    std::string label;
    double sd = 0.0;
    std::size_t n_articles = 0;  // list length, duplicates included
    std::optional<std::map<int, double>> per_year;
};

// Scientific-diversity index of the list: the double sum over ordered item
// pairs (i, i') of S(j(i), j(i')) * w(i), divided by the squared list
// length. w(i) is p(i)/N(K(i)) with pages interpreted per the matrix's
// page mode. Duplicated items count with multiplicity.
double sd_index(const PublicationList& list, const SimilarityMatrix& matrix,
                const Corpus& corpus);

enum class YearWindow { cumulative, per_year };

// SD of the list restricted to each publication year present in it. With
// cumulative windows (the default) year y covers every item with y(i) <= y,
// evaluated against a matrix rebuilt on the corpus restricted the same way;
// per_year slices both to exactly y. cfg.theta > 0 rebuilds the blended
// matrix per window.
std::map<int, double> sd_by_year(const PublicationList& list, const Corpus& corpus,
                                 const SimConfig& cfg,
                                 YearWindow window = YearWindow::cumulative,
                                 unsigned threads = 1);

// SD(I(k')) for the author and every distinct co-author, sorted by SD
// descending, ties by author id ascending.
std::vector<std::pair<AuthorId, double>> coauthor_sd_ranking(const AuthorId& author,
                                                             const SimilarityMatrix& matrix,
                                                             const Corpus& corpus);

// One article id per line; blank lines and lines starting with '#' are
// skipped. `lines` (when given) receives the 1-based source line of each
// item, for error reporting.
PublicationList load_publication_list(std::istream& in, std::string label,
                                      std::vector<long>* lines = nullptr);

// {label, sd, n_articles, per_year?} as JSON; CSV is `label,sd,n_articles`.
void write_report_json(const DiversityReport& report, std::ostream& out);
void write_report_csv(const DiversityReport& report, std::ostream& out);

}  // namespace scidiv
