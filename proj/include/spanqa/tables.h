#ifndef SPANQA_TABLES_H
#define SPANQA_TABLES_H

#include <map>
#include <string>
#include <vector>

#include "spanqa/core.h"

namespace spanqa {

// Reserved label for relations unseen at training time.
constexpr const char* kUnkLabel = "<unk>";

// Log-softmax in place; returns the log-normalizer of the raw scores.
double log_normalize(std::vector<double>& row);

// Per-sentence span boundary scores. Row i (token 0..n) is a
// log-distribution over positions 1..n; the dummy root row is present but
// carries no learned signal (the root span is forced to (0, 0, n)).
class SpanTables {
 public:
  SpanTables() = default;
  SpanTables(int n, std::vector<double> start_lp, std::vector<double> end_lp);

  int n() const { return n_; }
  // Log-probability that token i's subtree starts (ends) at position j,
  // j in [1, n].
  double start_lp(int i, int j) const { return start_[idx(i, j)]; }
  double end_lp(int i, int j) const { return end_[idx(i, j)]; }

  const std::vector<double>& start_data() const { return start_; }
  const std::vector<double>& end_data() const { return end_; }

  bool operator==(const SpanTables&) const = default;

 private:
  int idx(int i, int j) const;
  int n_ = 0;
  std::vector<double> start_, end_;  // (n+1) x n, row-major
};

// Query-conditioned link scores for one candidate span used as query.
//
// Parent-direction rows answer "which token is the root/start/end of the
// query's parent span" as log-distributions over the full context 0..n
// (the dummy root is a legal parent root). Child-direction rows answer the
// mirrored question over real tokens 1..n only, since no child subtree can
// involve token 0. Label blocks give, per candidate answer root, a
// log-distribution over the relation label set.
class LinkRows {
 public:
  LinkRows() = default;
  LinkRows(SubtreeSpan query, int n, int num_labels);

  const SubtreeSpan& query() const { return query_; }
  int n() const { return n_; }
  int num_labels() const { return num_labels_; }

  // t in [0, n]
  double parent_root_lp(int t) const { return parent_root_.at(t); }
  double parent_start_lp(int t) const { return parent_start_.at(t); }
  double parent_end_lp(int t) const { return parent_end_.at(t); }
  double parent_label_lp(int t, int label) const {
    return parent_label_.at(t * num_labels_ + label);
  }
  // t in [1, n]
  double child_root_lp(int t) const { return child_root_.at(t - 1); }
  double child_start_lp(int t) const { return child_start_.at(t - 1); }
  double child_end_lp(int t) const { return child_end_.at(t - 1); }
  double child_label_lp(int t, int label) const {
    return child_label_.at((t - 1) * num_labels_ + label);
  }

  int argmax_parent_label(int t) const;

  std::vector<double>& parent_root() { return parent_root_; }
  std::vector<double>& parent_start() { return parent_start_; }
  std::vector<double>& parent_end() { return parent_end_; }
  std::vector<double>& parent_label() { return parent_label_; }
  std::vector<double>& child_root() { return child_root_; }
  std::vector<double>& child_start() { return child_start_; }
  std::vector<double>& child_end() { return child_end_; }
  std::vector<double>& child_label() { return child_label_; }
  const std::vector<double>& parent_root() const { return parent_root_; }
  const std::vector<double>& parent_start() const { return parent_start_; }
  const std::vector<double>& parent_end() const { return parent_end_; }
  const std::vector<double>& parent_label() const { return parent_label_; }
  const std::vector<double>& child_root() const { return child_root_; }
  const std::vector<double>& child_start() const { return child_start_; }
  const std::vector<double>& child_end() const { return child_end_; }
  const std::vector<double>& child_label() const { return child_label_; }

  bool operator==(const LinkRows&) const = default;

 private:
  SubtreeSpan query_;
  int n_ = 0;
  int num_labels_ = 0;
  std::vector<double> parent_root_, parent_start_, parent_end_;  // n+1
  std::vector<double> parent_label_;                             // (n+1) x L
  std::vector<double> child_root_, child_start_, child_end_;     // n
  std::vector<double> child_label_;                              // n x L
};

// All score tables for one sentence: span boundary rows plus link rows per
// query span. Read-only once built; safe to share across threads.
struct ScoreTables {
  SpanTables span;
  std::vector<std::string> labels;  // closed label set, "<unk>" included
  std::map<SubtreeSpan, LinkRows> link;

  int n() const { return span.n(); }
  const LinkRows& rows_for(const SubtreeSpan& query) const;
  bool has_rows(const SubtreeSpan& query) const {
    return link.count(query) > 0;
  }
  int label_id(const std::string& label) const;

  bool operator==(const ScoreTables&) const = default;
};

// Text serialization ("SPANQA-TABLES v1"): lossless round-trip, NaN/Inf
// forbidden. A file holds tables for one or more sentences sharing a label
// set. Throws FormatError / DimensionError / IoError.
void save_tables(const std::vector<ScoreTables>& tables,
                 const std::string& path);
std::vector<ScoreTables> load_tables(const std::string& path);

}  // namespace spanqa

#endif  // SPANQA_TABLES_H
