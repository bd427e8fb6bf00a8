#ifndef SPANQA_EVAL_H
#define SPANQA_EVAL_H

#include <set>
#include <string>
#include <vector>

#include "spanqa/core.h"
#include "spanqa/proposal.h"

namespace spanqa {

// Tokens whose UPOS is in the set are excluded from evaluation. UD's tag
// by default; PTB-style tag lists are a config away.
using PunctSet = std::set<std::string>;
inline PunctSet default_punct_set() { return {"PUNCT"}; }

struct AttachmentCounts {
  int correct_heads = 0;
  int correct_labeled = 0;
  int total = 0;

  void add(const AttachmentCounts& o) {
    correct_heads += o.correct_heads;
    correct_labeled += o.correct_labeled;
    total += o.total;
  }
  double uas() const { return total == 0 ? 0.0 : 1.0 * correct_heads / total; }
  double las() const {
    return total == 0 ? 0.0 : 1.0 * correct_labeled / total;
  }
};

AttachmentCounts attachment_counts(const DepTree& pred, const DepTree& gold,
                                   const Sentence& sent,
                                   const PunctSet& punct);

// (UAS, LAS) over the non-punctuation tokens of one sentence.
std::pair<double, double> uas_las(const DepTree& pred, const DepTree& gold,
                                  const Sentence& sent, const PunctSet& punct);

// Fraction of gold spans present in the candidate set by exact
// (root, start, end) match.
double span_recall(const CandidateSet& candidates,
                   const std::vector<SubtreeSpan>& gold);

enum class Bucketing { kSentenceLength, kDependencyLength, kSubtreeSpanLength };

struct BucketRow {
  std::string range;
  AttachmentCounts counts;
  int recall_hits = 0;   // gold spans found, span-length bucketing only
  int recall_total = 0;
};

struct BucketReport {
  Bucketing bucketing;
  std::vector<BucketRow> rows;

  AttachmentCounts overall() const;
  std::string to_tsv() const;
  std::string to_table() const;
};

// Per-bucket attachment scores: by sentence length (default edges
// 10/20/30/40/50), by dependency length |head - dep| (1..6, then 7+), or
// by subtree span length, i.e. the mean of the two gold span lengths of
// each arc, split into seven buckets. Span-length rows also carry
// gold-span recall when candidate sets are supplied. Sentences without
// gold spans (non-projective) are skipped by span-length bucketing.
BucketReport bucket_report(
    const std::vector<DepTree>& preds, const std::vector<DepTree>& golds,
    const std::vector<Sentence>& sents, Bucketing bucketing,
    const PunctSet& punct,
    const std::vector<CandidateSet>* candidates = nullptr,
    const std::vector<int>& sentence_length_edges = {10, 20, 30, 40, 50});

}  // namespace spanqa

#endif  // SPANQA_EVAL_H
