#ifndef SPANQA_PIPELINE_H
#define SPANQA_PIPELINE_H

#include <vector>

#include "spanqa/decoder.h"
#include "spanqa/model.h"

namespace spanqa {

enum class DecoderKind { kProjective, kMst };

struct PipelineConfig {
  int k = 15;
  double lambda = 1.0;
  DecoderKind decoder = DecoderKind::kProjective;
  bool halve_span_terms = false;
  // When projective decoding finds no tiling, decode with the MST instead
  // of failing the sentence.
  bool mst_fallback = true;
};

// Candidates and fully populated tables for one sentence: span rows,
// proposal at k, link rows for every proposed span, parent retrieval, then
// link rows for the retrieved spans.
struct SentenceTables {
  CandidateSet proposed;
  CandidateSet candidates;
  ScoreTables tables;
};

SentenceTables prepare_sentence(const Scorer& scorer, int sent_idx,
                                const Sentence& sent, int k);

struct ParseOutcome {
  DepTree tree;
  double score = 0.0;
  bool fallback = false;  // projective decode was infeasible, used MST
};

ParseOutcome parse_sentence(const Scorer& scorer, int sent_idx,
                            const Sentence& sent, const PipelineConfig& cfg);

// Sentence-parallel parsing; results come back in input order.
std::vector<ParseOutcome> parse_document(const Scorer& scorer,
                                         const std::vector<Sentence>& sents,
                                         const PipelineConfig& cfg,
                                         int jobs = 1);

}  // namespace spanqa

#endif  // SPANQA_PIPELINE_H
