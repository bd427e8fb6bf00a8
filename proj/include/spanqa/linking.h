#ifndef SPANQA_LINKING_H
#define SPANQA_LINKING_H

#include <optional>
#include <string>

#include "spanqa/proposal.h"
#include "spanqa/tables.h"

namespace spanqa {

// Parent-direction link score: the child span is the query, the parent is
// the answer. Sum of the parent root/start/end log-scores plus, when a
// label id is supplied, the parent label log-score at the parent root.
// The child span must be contained in the parent span (ContainmentError).
double score_parent(const ScoreTables& tables, const SubtreeSpan& parent,
                    const SubtreeSpan& query_child,
                    std::optional<int> label = std::nullopt);

// Child-direction mirror: the parent span is the query, the child the
// answer. The label term uses the child-direction label head and is
// included only when a label id is supplied; tree decoding scores labels
// through the parent head alone, the child label head is a training
// signal.
double score_child(const ScoreTables& tables, const SubtreeSpan& child,
                   const SubtreeSpan& query_parent,
                   std::optional<int> label = std::nullopt);

// Combined bidirectional link score: score_parent (with label, argmax over
// the label set when not supplied) plus the positional score_child.
// Returns the score and the label id used.
struct LinkScore {
  double score;
  int label;
};
LinkScore score_link(const ScoreTables& tables, const SubtreeSpan& parent,
                     const SubtreeSpan& child,
                     std::optional<int> label = std::nullopt);

// Variants without the containment precondition, for edge-factored MST
// scoring where non-projective arcs may violate span containment.
double score_parent_unchecked(const ScoreTables& tables,
                              const SubtreeSpan& parent,
                              const SubtreeSpan& query_child,
                              std::optional<int> label = std::nullopt);
double score_child_unchecked(const ScoreTables& tables,
                             const SubtreeSpan& child,
                             const SubtreeSpan& query_parent,
                             std::optional<int> label = std::nullopt);
LinkScore score_link_unchecked(const ScoreTables& tables,
                               const SubtreeSpan& parent,
                               const SubtreeSpan& child,
                               std::optional<int> label = std::nullopt);

// For every proposed span, decodes its best parent span from the
// parent-direction rows (root, then start, then end, greedily, restricted
// to containment-feasible cells) and adds it to the candidate set flagged
// "retrieved". Duplicates keep the "proposed" flag. Result size stays
// within 1 + 2*n*k.
CandidateSet retrieve_parents(const ScoreTables& tables,
                              const CandidateSet& candidates);

}  // namespace spanqa

#endif  // SPANQA_LINKING_H
