#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scidiv/corpus.hpp"
#include "scidiv/diversity.hpp"
#include "scidiv/similarity.hpp"

namespace scidiv {

struct JournalScore {
    JournalId journal;
    double score = 0.0;
};

// Scores every journal of the list's journal set: score(j) is the sum over
// list items of S(j, j(i)) * w(i), weights per the matrix's page mode.
// Returned in lexicographic journal order.
std::vector<JournalScore> score_list_journals(const PublicationList& list,
                                              const SimilarityMatrix& matrix,
                                              const Corpus& corpus);

// All journals attaining the maximal score, sorted lexicographically.
std::vector<JournalId> central_journal(const PublicationList& list,
                                       const SimilarityMatrix& matrix, const Corpus& corpus);

// The list's journals sorted by score descending, ties by id ascending; the
// leading score block equals central_journal's result.
std::vector<JournalScore> rank_journals(const PublicationList& list,
                                        const SimilarityMatrix& matrix, const Corpus& corpus);

// Journals the author never published in, ranked by similarity to the
// central journal of their own publication list (descending, ties by id).
// With restrict_to_coauthors, candidates are limited to journals their
// co-authors have published in. At most top_n results.
std::vector<JournalScore> suggest_journals(const AuthorId& author,
                                           const SimilarityMatrix& matrix, const Corpus& corpus,
                                           bool restrict_to_coauthors, std::size_t top_n);

// `rank,journal_id,score` rows, rank starting at 1; scores with up to 17
// significant digits.
void write_scores_csv(const std::vector<JournalScore>& scores, std::ostream& out);
void write_scores_json(const std::vector<JournalScore>& scores, std::ostream& out);

}  // namespace scidiv
