#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "scidiv/similarity.hpp"

namespace scidiv {

// Journal-to-domain assignment used to sanity-check a similarity matrix
// against an external disciplinary classification.
struct Classification {
    std::map<JournalId, std::string> domain_of;
    std::set<std::string> domains;
};

// CSV with header `journal_id,domain`; duplicate journals are rejected.
Classification load_classification(std::istream& in);

struct DomainStats {
    double within_avg = 0.0;
    double global_avg = 0.0;
    std::optional<double> ratio;  // within/global, absent when global is zero
};

// Per-domain average similarity next to the average over all classified
// journals. Only journals present in the matrix participate; domains left
// empty by that intersection are omitted. include_diagonal controls whether
// same-journal pairs enter the averages.
std::map<std::string, DomainStats> within_domain_report(const SimilarityMatrix& matrix,
                                                        const Classification& cls,
                                                        bool include_diagonal = true);

// Average similarity between each pair of domains; keys are (d1, d2) with
// d1 <= d2. Symmetric by construction.
std::map<std::pair<std::string, std::string>, double> domain_similarity_matrix(
    const SimilarityMatrix& matrix, const Classification& cls);

// Mean similarity of each journal to every other journal of the matrix
// (self excluded, absent pairs zero), sorted descending, ties by id. A
// single-journal matrix scores zero.
std::vector<std::pair<JournalId, double>> generalist_scores(const SimilarityMatrix& matrix);

void write_domain_report_csv(const std::map<std::string, DomainStats>& report,
                             std::ostream& out);
void write_domain_report_json(const std::map<std::string, DomainStats>& report,
                              const std::vector<std::pair<JournalId, double>>& generalists,
                              std::ostream& out);
void write_domain_matrix_csv(const std::map<std::pair<std::string, std::string>, double>& matrix,
                             std::ostream& out);

}  // namespace scidiv
