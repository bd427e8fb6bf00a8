#include "spanqa/linking.h"

#include <algorithm>

namespace spanqa {

namespace {

void check_containment(const SubtreeSpan& parent, const SubtreeSpan& child) {
  if (!parent.contains(child)) {
    throw ContainmentError(
        "child span (" + std::to_string(child.start) + ", " +
        std::to_string(child.end) + ") not contained in parent span (" +
        std::to_string(parent.start) + ", " + std::to_string(parent.end) +
        ")");
  }
}

}  // namespace

double score_parent_unchecked(const ScoreTables& tables,
                              const SubtreeSpan& parent,
                              const SubtreeSpan& query_child,
                              std::optional<int> label) {
  const LinkRows& rows = tables.rows_for(query_child);
  double s = rows.parent_root_lp(parent.root) +
             rows.parent_start_lp(parent.start) +
             rows.parent_end_lp(parent.end);
  if (label) s += rows.parent_label_lp(parent.root, *label);
  return s;
}

double score_parent(const ScoreTables& tables, const SubtreeSpan& parent,
                    const SubtreeSpan& query_child, std::optional<int> label) {
  check_containment(parent, query_child);
  return score_parent_unchecked(tables, parent, query_child, label);
}

double score_child_unchecked(const ScoreTables& tables,
                             const SubtreeSpan& child,
                             const SubtreeSpan& query_parent,
                             std::optional<int> label) {
  const LinkRows& rows = tables.rows_for(query_parent);
  double s = rows.child_root_lp(child.root) +
             rows.child_start_lp(child.start) +
             rows.child_end_lp(child.end);
  if (label) s += rows.child_label_lp(child.root, *label);
  return s;
}

double score_child(const ScoreTables& tables, const SubtreeSpan& child,
                   const SubtreeSpan& query_parent, std::optional<int> label) {
  check_containment(query_parent, child);
  return score_child_unchecked(tables, child, query_parent, label);
}

LinkScore score_link_unchecked(const ScoreTables& tables,
                               const SubtreeSpan& parent,
                               const SubtreeSpan& child,
                               std::optional<int> label) {
  int l = label ? *label
                : tables.rows_for(child).argmax_parent_label(parent.root);
  double s = score_parent_unchecked(tables, parent, child, l) +
             score_child_unchecked(tables, child, parent, std::nullopt);
  return LinkScore{s, l};
}

LinkScore score_link(const ScoreTables& tables, const SubtreeSpan& parent,
                     const SubtreeSpan& child, std::optional<int> label) {
  check_containment(parent, child);
  return score_link_unchecked(tables, parent, child, label);
}

namespace {

// Best parent span of `q` under its parent-direction rows, decoded
// greedily root -> start -> end over containment-feasible cells only.
SubtreeSpan decode_best_parent(const ScoreTables& tables,
                               const SubtreeSpan& q) {
  const LinkRows& rows = tables.rows_for(q);
  int n = tables.n();
  // Root: any token outside the child span.
  int best_root = -1;
  for (int t = 0; t <= n; ++t) {
    if (t >= q.start && t <= q.end) continue;
    if (best_root < 0 ||
        rows.parent_root_lp(t) > rows.parent_root_lp(best_root)) {
      best_root = t;
    }
  }
  if (best_root <= 0) return SubtreeSpan{0, 0, n};  // only the root span fits

  // Start: s <= min(root, q.start), s >= 1 for a non-root parent.
  int s_hi = std::min(best_root, q.start);
  int best_s = 1;
  for (int s = 1; s <= s_hi; ++s) {
    if (rows.parent_start_lp(s) > rows.parent_start_lp(best_s)) best_s = s;
  }
  // End: e >= max(root, q.end).
  int e_lo = std::max(best_root, q.end);
  int best_e = e_lo;
  for (int e = e_lo; e <= n; ++e) {
    if (rows.parent_end_lp(e) > rows.parent_end_lp(best_e)) best_e = e;
  }
  return SubtreeSpan{best_root, best_s, best_e};
}

}  // namespace

CandidateSet retrieve_parents(const ScoreTables& tables,
                              const CandidateSet& candidates) {
  CandidateSet out = candidates;
  for (const auto& per_token : candidates.per_token) {
    for (const Candidate& c : per_token) {
      if (c.span.root == 0) continue;  // the root span has no parent
      if (c.retrieved) continue;       // retrieval runs on proposed spans
      SubtreeSpan parent = decode_best_parent(tables, c.span);
      if (out.contains(parent)) continue;  // keep the proposed-flag copy
      out.per_token[parent.root].push_back(
          Candidate{parent, span_score(tables, parent), true});
    }
  }
  return out;
}

}  // namespace spanqa
