#ifndef SPANQA_DECODER_H
#define SPANQA_DECODER_H

#include <map>
#include <utility>
#include <vector>

#include "spanqa/linking.h"
#include "spanqa/proposal.h"

namespace spanqa {

struct DecodeResult {
  DepTree tree;
  double score = 0.0;
};

// Best score and chosen direct children per candidate span; entries are
// finalized in increasing span length, so an entry only ever reads
// shorter spans.
struct ChartEntry {
  double score = 0.0;
  std::vector<SubtreeSpan> children;
};
struct Chart {
  std::map<SubtreeSpan, ChartEntry> entries;
};

// Bottom-up span decoding: each candidate span scores as its own span
// score plus the best tiling of its left region [start, root-1] and right
// region [root+1, end] by adjacent finalized child spans, each child
// contributing score(child) + lambda * link(span, child). The root span
// (0, 0, n) takes exactly one child covering [1, n] so the result is a
// single-root tree. Throws InfeasibleError when no tiling reaches the
// root span. Ties resolve toward the first candidate in (length, start,
// root) order, which prefers lower-index heads on uniform scores.
DecodeResult decode_projective(const CandidateSet& candidates,
                               const ScoreTables& tables, double lambda,
                               Chart* chart_out = nullptr);

// Arc scores for non-projective decoding: cell (head i, dependent j) holds
// the best span(T_i) + span(T_j) + lambda * link(T_i, T_j) over candidate
// spans rooted at i and j, with containment not required. `halve_span_terms`
// halves the two span terms, which otherwise count once per incident edge.
class EdgeMatrix {
 public:
  EdgeMatrix(int n);
  int n() const { return n_; }
  double at(int i, int j) const { return score_[idx(i, j)]; }
  int label_at(int i, int j) const { return label_[idx(i, j)]; }
  const std::pair<SubtreeSpan, SubtreeSpan>& pair_at(int i, int j) const {
    return pair_[idx(i, j)];
  }
  void set(int i, int j, double score, int label, const SubtreeSpan& pi,
           const SubtreeSpan& pj);

 private:
  int idx(int i, int j) const { return i * (n_ + 1) + j; }
  int n_;
  std::vector<double> score_;
  std::vector<int> label_;
  std::vector<std::pair<SubtreeSpan, SubtreeSpan>> pair_;
};

EdgeMatrix build_edge_matrix(const CandidateSet& candidates,
                             const ScoreTables& tables, double lambda,
                             bool halve_span_terms = false);

// Maximum spanning arborescence rooted at token 0 (Chu-Liu/Edmonds) over
// build_edge_matrix scores, with the single-root constraint enforced by
// re-running with each best root child fixed when the unconstrained
// optimum attaches several tokens to the root. Labels come from the
// argmax span pair of each chosen edge.
DecodeResult decode_mst(const CandidateSet& candidates,
                        const ScoreTables& tables, double lambda,
                        bool halve_span_terms = false);

// Exhaustive test oracle. kProjective enumerates projective single-root
// trees whose subtree spans all belong to the candidate set and scores
// them as sum of span scores plus lambda times link scores; kAll
// enumerates every single-root tree and scores it over the edge matrix,
// mirroring decode_mst's objective. Guarded to n <= 10 (TooLargeError).
enum class BruteForceMode { kProjective, kAll };
DecodeResult decode_bruteforce(const CandidateSet& candidates,
                               const ScoreTables& tables, double lambda,
                               BruteForceMode mode,
                               bool halve_span_terms = false);

}  // namespace spanqa

#endif  // SPANQA_DECODER_H
