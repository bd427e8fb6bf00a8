#ifndef SPANQA_PROPOSAL_H
#define SPANQA_PROPOSAL_H

#include <vector>

#include "spanqa/core.h"
#include "spanqa/tables.h"

namespace spanqa {

struct Candidate {
  SubtreeSpan span;
  double span_score = 0.0;
  bool retrieved = false;  // provenance: false = proposed, true = retrieved

  bool operator==(const Candidate&) const = default;
};

// Candidate subtree spans grouped by root token. Token 0 always carries
// exactly the forced span (0, 0, n); real tokens carry at most k proposed
// candidates plus retrieved ones, total size <= 1 + 2*n*k.
struct CandidateSet {
  int n = 0;
  std::vector<std::vector<Candidate>> per_token;  // index 0..n

  int total() const;
  bool contains(const SubtreeSpan& span) const;
  std::vector<SubtreeSpan> all_spans() const;  // deterministic order
};

// Additive span score of Eq.-style separable boundary rows:
// start_lp[root][start] + end_lp[root][end]. The forced root span scores 0.
double span_score(const ScoreTables& tables, const SubtreeSpan& span);
double span_score(const SpanTables& tables, const SubtreeSpan& span);

// Top-k spans per token by span_score; candidates for token i enumerate
// (i, s, e) with 1 <= s <= i <= e <= n. Ties break toward shorter spans,
// then smaller start. Token 0 bypasses scoring (its span is forced).
CandidateSet propose(const ScoreTables& tables, const Sentence& sent, int k);

}  // namespace spanqa

#endif  // SPANQA_PROPOSAL_H
