#include "spanqa/pipeline.h"

#include <atomic>
#include <mutex>
#include <thread>

#include "spanqa/linking.h"

namespace spanqa {

SentenceTables prepare_sentence(const Scorer& scorer, int sent_idx,
                                const Sentence& sent, int k) {
  SentenceTables st;
  st.tables.labels = scorer.labels();
  st.tables.span = scorer.span_tables(sent_idx, sent);
  st.proposed = propose(st.tables, sent, k);
  for (const SubtreeSpan& span : st.proposed.all_spans()) {
    st.tables.link.emplace(span, scorer.link_rows(sent_idx, sent, span));
  }
  st.candidates = retrieve_parents(st.tables, st.proposed);
  for (const SubtreeSpan& span : st.candidates.all_spans()) {
    if (!st.tables.has_rows(span)) {
      st.tables.link.emplace(span, scorer.link_rows(sent_idx, sent, span));
    }
  }
  return st;
}

ParseOutcome parse_sentence(const Scorer& scorer, int sent_idx,
                            const Sentence& sent, const PipelineConfig& cfg) {
  SentenceTables st = prepare_sentence(scorer, sent_idx, sent, cfg.k);
  ParseOutcome out;
  if (cfg.decoder == DecoderKind::kProjective) {
    try {
      DecodeResult r = decode_projective(st.candidates, st.tables, cfg.lambda);
      out.tree = std::move(r.tree);
      out.score = r.score;
      return out;
    } catch (const InfeasibleError&) {
      if (!cfg.mst_fallback) throw;
      out.fallback = true;
    }
  }
  DecodeResult r =
      decode_mst(st.candidates, st.tables, cfg.lambda, cfg.halve_span_terms);
  out.tree = std::move(r.tree);
  out.score = r.score;
  return out;
}

std::vector<ParseOutcome> parse_document(const Scorer& scorer,
                                         const std::vector<Sentence>& sents,
                                         const PipelineConfig& cfg, int jobs) {
  std::vector<ParseOutcome> out(sents.size());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(sents.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < sents.size(); ++i) {
      out[i] = parse_sentence(scorer, static_cast<int>(i), sents[i], cfg);
    }
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= sents.size()) return;
      try {
        out[i] = parse_sentence(scorer, static_cast<int>(i), sents[i], cfg);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace spanqa
