#include "spanqa/eval.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace spanqa {

AttachmentCounts attachment_counts(const DepTree& pred, const DepTree& gold,
                                   const Sentence& sent,
                                   const PunctSet& punct) {
  if (pred.size() != gold.size() || pred.size() != sent.real_size()) {
    throw DimensionError("prediction / gold / sentence length mismatch");
  }
  AttachmentCounts c;
  for (int i = 1; i <= gold.size(); ++i) {
    if (punct.count(sent.upos(i))) continue;
    ++c.total;
    if (pred.head(i) == gold.head(i)) {
      ++c.correct_heads;
      if (pred.label(i) == gold.label(i)) ++c.correct_labeled;
    }
  }
  return c;
}

std::pair<double, double> uas_las(const DepTree& pred, const DepTree& gold,
                                  const Sentence& sent,
                                  const PunctSet& punct) {
  AttachmentCounts c = attachment_counts(pred, gold, sent, punct);
  return {c.uas(), c.las()};
}

double span_recall(const CandidateSet& candidates,
                   const std::vector<SubtreeSpan>& gold) {
  if (gold.empty()) return 0.0;
  int hits = 0;
  for (const auto& s : gold) hits += candidates.contains(s);
  return static_cast<double>(hits) / gold.size();
}

AttachmentCounts BucketReport::overall() const {
  AttachmentCounts all;
  for (const auto& row : rows) all.add(row.counts);
  return all;
}

std::string BucketReport::to_tsv() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  bool span = bucketing == Bucketing::kSubtreeSpanLength;
  out << "bucket\ttokens\tuas\tlas";
  if (span) out << "\tspan_recall";
  out << '\n';
  for (const auto& row : rows) {
    out << row.range << '\t' << row.counts.total << '\t' << row.counts.uas()
        << '\t' << row.counts.las();
    if (span) {
      double r = row.recall_total == 0
                     ? 0.0
                     : 1.0 * row.recall_hits / row.recall_total;
      out << '\t' << r;
    }
    out << '\n';
  }
  return out.str();
}

std::string BucketReport::to_table() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << std::setw(10) << "bucket" << std::setw(9) << "tokens" << std::setw(8)
      << "UAS" << std::setw(8) << "LAS";
  bool span = bucketing == Bucketing::kSubtreeSpanLength;
  if (span) out << std::setw(10) << "recall";
  out << '\n';
  for (const auto& row : rows) {
    out << std::setw(10) << row.range << std::setw(9) << row.counts.total
        << std::setw(8) << 100.0 * row.counts.uas() << std::setw(8)
        << 100.0 * row.counts.las();
    if (span) {
      double r = row.recall_total == 0
                     ? 0.0
                     : 1.0 * row.recall_hits / row.recall_total;
      out << std::setw(10) << 100.0 * r;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

std::string range_name(int lo, int hi) {
  if (hi < 0) return ">" + std::to_string(lo - 1);
  if (lo == hi) return std::to_string(lo);
  return std::to_string(lo) + "-" + std::to_string(hi);
}

}  // namespace

BucketReport bucket_report(const std::vector<DepTree>& preds,
                           const std::vector<DepTree>& golds,
                           const std::vector<Sentence>& sents,
                           Bucketing bucketing, const PunctSet& punct,
                           const std::vector<CandidateSet>* candidates,
                           const std::vector<int>& sentence_length_edges) {
  if (preds.size() != golds.size() || preds.size() != sents.size()) {
    throw DimensionError("prediction / gold set size mismatch");
  }
  BucketReport report;
  report.bucketing = bucketing;

  if (bucketing == Bucketing::kSentenceLength) {
    std::vector<int> edges = sentence_length_edges;
    std::sort(edges.begin(), edges.end());
    int lo = 1;
    for (int e : edges) {
      report.rows.push_back(BucketRow{range_name(lo, e), {}, 0, 0});
      lo = e + 1;
    }
    report.rows.push_back(BucketRow{range_name(lo, -1), {}, 0, 0});
    for (std::size_t s = 0; s < preds.size(); ++s) {
      int n = sents[s].real_size();
      std::size_t b = 0;
      while (b < edges.size() && n > edges[b]) ++b;
      report.rows[b].counts.add(
          attachment_counts(preds[s], golds[s], sents[s], punct));
    }
    return report;
  }

  if (bucketing == Bucketing::kDependencyLength) {
    const int kMax = 7;  // 1..6 then 7+
    for (int d = 1; d < kMax; ++d) {
      report.rows.push_back(BucketRow{range_name(d, d), {}, 0, 0});
    }
    report.rows.push_back(BucketRow{">" + std::to_string(kMax - 1), {}, 0, 0});
    for (std::size_t s = 0; s < preds.size(); ++s) {
      const Sentence& sent = sents[s];
      for (int i = 1; i <= golds[s].size(); ++i) {
        if (punct.count(sent.upos(i))) continue;
        int len = std::abs(golds[s].head(i) - i);
        int b = std::min(len, kMax) - 1;
        auto& row = report.rows[b];
        ++row.counts.total;
        if (preds[s].head(i) == golds[s].head(i)) {
          ++row.counts.correct_heads;
          if (preds[s].label(i) == golds[s].label(i)) {
            ++row.counts.correct_labeled;
          }
        }
      }
    }
    return report;
  }

  // Subtree span length: the mean length (in tokens) of the gold parent
  // and child spans of each arc, split into seven buckets.
  const int kBuckets = 7;
  int max_mean = 1;
  std::vector<std::vector<SubtreeSpan>> spans(preds.size());
  for (std::size_t s = 0; s < preds.size(); ++s) {
    if (!is_projective(golds[s])) continue;
    spans[s] = gold_spans(golds[s]);
    for (int i = 1; i <= golds[s].size(); ++i) {
      int h = golds[s].head(i);
      int mean = (spans[s][h].length() + spans[s][i].length() + 2) / 2;
      max_mean = std::max(max_mean, mean);
    }
  }
  int width = std::max(1, (max_mean + kBuckets - 1) / kBuckets);
  for (int b = 0; b < kBuckets; ++b) {
    int lo = b * width + 1;
    int hi = (b + 1 == kBuckets) ? -1 : (b + 1) * width;
    report.rows.push_back(BucketRow{range_name(lo, hi), {}, 0, 0});
  }
  for (std::size_t s = 0; s < preds.size(); ++s) {
    if (spans[s].empty()) continue;
    const Sentence& sent = sents[s];
    for (int i = 1; i <= golds[s].size(); ++i) {
      int h = golds[s].head(i);
      int mean = (spans[s][h].length() + spans[s][i].length() + 2) / 2;
      int b = std::min((mean - 1) / width, kBuckets - 1);
      auto& row = report.rows[b];
      if (candidates) {
        ++row.recall_total;
        row.recall_hits += (*candidates)[s].contains(spans[s][i]);
      }
      if (punct.count(sent.upos(i))) continue;
      ++row.counts.total;
      if (preds[s].head(i) == golds[s].head(i)) {
        ++row.counts.correct_heads;
        if (preds[s].label(i) == golds[s].label(i)) {
          ++row.counts.correct_labeled;
        }
      }
    }
  }
  return report;
}

}  // namespace spanqa
