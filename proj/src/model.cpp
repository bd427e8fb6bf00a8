#include "spanqa/model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace spanqa {

namespace {

double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double log_sum_exp(const std::vector<double>& v) {
  double hi = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

double dot(const std::vector<double>& w,
           const std::vector<std::uint32_t>& slots, int begin, int end) {
  double s = 0.0;
  for (int i = begin; i < end; ++i) s += w[slots[i]];
  return s;
}

// Feature slots of one score row, cell by cell.
struct RowBuf {
  std::vector<std::uint32_t> slots;
  std::vector<int> off;  // off[c]..off[c+1] are the slots of cell c
  std::vector<double> raw;

  void clear() {
    slots.clear();
    off.assign(1, 0);
    raw.clear();
  }
  void close_cell() { off.push_back(static_cast<int>(slots.size())); }
  int cells() const { return static_cast<int>(raw.size()); }
};

}  // namespace

LogLinearModel::LogLinearModel(const ModelConfig& cfg,
                               std::vector<std::string> labels)
    : cfg_(cfg), labels_(std::move(labels)),
      fx_(std::make_unique<FeatureExtractor>(cfg.dim)) {
  if (labels_.empty() ||
      std::find(labels_.begin(), labels_.end(), kUnkLabel) == labels_.end()) {
    throw ConfigError("label set must be non-empty and contain " +
                      std::string(kUnkLabel));
  }
  for (auto& w : weights_) w.assign(cfg_.dim, 0.0);
}

LogLinearModel::LogLinearModel(const LogLinearModel& other)
    : cfg_(other.cfg_), chosen_lambda_(other.chosen_lambda_),
      labels_(other.labels_), weights_(other.weights_) {
  if (other.fx_) fx_ = std::make_unique<FeatureExtractor>(cfg_.dim);
}

LogLinearModel& LogLinearModel::operator=(const LogLinearModel& other) {
  if (this == &other) return *this;
  cfg_ = other.cfg_;
  chosen_lambda_ = other.chosen_lambda_;
  labels_ = other.labels_;
  weights_ = other.weights_;
  fx_ = other.fx_ ? std::make_unique<FeatureExtractor>(cfg_.dim) : nullptr;
  return *this;
}

bool LogLinearModel::operator==(const LogLinearModel& other) const {
  return cfg_.dim == other.cfg_.dim && labels_ == other.labels_ &&
         chosen_lambda_ == other.chosen_lambda_ && weights_ == other.weights_;
}

int LogLinearModel::label_id(const std::string& label) const {
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
    if (labels_[i] == label) return i;
  }
  for (int i = 0; i < static_cast<int>(labels_.size()); ++i) {
    if (labels_[i] == kUnkLabel) return i;
  }
  throw ConfigError("label vocabulary lacks the reserved unknown label");
}

SpanTables LogLinearModel::span_tables(int, const Sentence& sent) const {
  if (!fitted()) throw NotFittedError("scorer backend is not fitted");
  int n = sent.real_size();
  TokenHashes tok(sent);
  std::vector<std::uint32_t> slots;
  std::vector<double> start(static_cast<std::size_t>(n + 1) * n);
  std::vector<double> end(start.size());
  std::vector<double> row(n);
  for (Head h : {Head::kSpanStart, Head::kSpanEnd}) {
    const auto& w = weights_[static_cast<int>(h)];
    auto& table = (h == Head::kSpanStart) ? start : end;
    for (int i = 0; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        slots.clear();
        fx_->span_cell(tok, h, i, j, &slots);
        row[j - 1] = dot(w, slots, 0, static_cast<int>(slots.size()));
      }
      log_normalize(row);
      std::copy(row.begin(), row.end(), table.begin() + i * n);
    }
  }
  return SpanTables(n, std::move(start), std::move(end));
}

LinkRows LogLinearModel::link_rows(int, const Sentence& sent,
                                   const SubtreeSpan& query) const {
  if (!fitted()) throw NotFittedError("scorer backend is not fitted");
  int n = sent.real_size();
  int L = static_cast<int>(labels_.size());
  TokenHashes tok(sent);
  QueryEncoding qe = QueryEncoding::build(sent, query);
  LinkRows rows(query, n, L);
  std::vector<std::uint32_t> slots;

  auto fill_positional = [&](Head h, std::vector<double>& out, int lo) {
    const auto& w = weights_[static_cast<int>(h)];
    for (int t = lo; t <= n; ++t) {
      slots.clear();
      fx_->link_cell(tok, qe, h, t, &slots);
      out[t - lo] = dot(w, slots, 0, static_cast<int>(slots.size()));
    }
    log_normalize(out);
  };
  fill_positional(Head::kParentRoot, rows.parent_root(), 0);
  fill_positional(Head::kParentStart, rows.parent_start(), 0);
  fill_positional(Head::kParentEnd, rows.parent_end(), 0);
  fill_positional(Head::kChildRoot, rows.child_root(), 1);
  fill_positional(Head::kChildStart, rows.child_start(), 1);
  fill_positional(Head::kChildEnd, rows.child_end(), 1);

  auto fill_labels = [&](Head h, std::vector<double>& out, int lo) {
    const auto& w = weights_[static_cast<int>(h)];
    std::vector<double> lrow(L);
    for (int t = lo; t <= n; ++t) {
      for (int l = 0; l < L; ++l) {
        slots.clear();
        fx_->label_cell(tok, qe, h, t, l, &slots);
        lrow[l] = dot(w, slots, 0, static_cast<int>(slots.size()));
      }
      log_normalize(lrow);
      std::copy(lrow.begin(), lrow.end(), out.begin() + (t - lo) * L);
    }
  };
  fill_labels(Head::kParentLabel, rows.parent_label(), 0);
  fill_labels(Head::kChildLabel, rows.child_label(), 1);
  return rows;
}

std::array<std::vector<double>, 3> LogLinearModel::child_bce_probs(
    const Sentence& sent, const SubtreeSpan& query) const {
  if (!fitted()) throw NotFittedError("scorer backend is not fitted");
  int n = sent.real_size();
  TokenHashes tok(sent);
  QueryEncoding qe = QueryEncoding::build(sent, query);
  std::array<std::vector<double>, 3> probs;
  Head heads[3] = {Head::kChildRoot, Head::kChildStart, Head::kChildEnd};
  std::vector<std::uint32_t> slots;
  for (int r = 0; r < 3; ++r) {
    const auto& w = weights_[static_cast<int>(heads[r])];
    probs[r].resize(n);
    for (int t = 1; t <= n; ++t) {
      slots.clear();
      fx_->link_cell(tok, qe, heads[r], t, &slots);
      double raw = dot(w, slots, 0, static_cast<int>(slots.size()));
      probs[r][t - 1] = 1.0 / (1.0 + std::exp(-raw));
    }
  }
  return probs;
}

// Computes the loss of one head and feeds d(loss)/d(raw cell score) back
// through each cell's features via sink(head, slot, grad).
template <class Sink>
double LogLinearModel::run_head(const Instance& inst, LossHead head,
                                Sink&& sink) const {
  if (!fitted()) throw NotFittedError("scorer backend is not fitted");
  if (!inst.spans) return 0.0;  // no span targets for this sentence
  const Sentence& sent = inst.sentence;
  const std::vector<SubtreeSpan>& spans = *inst.spans;
  int n = sent.real_size();
  int L = static_cast<int>(labels_.size());
  TokenHashes tok(sent);
  RowBuf buf;
  double loss = 0.0;

  auto row_dot = [&](Head h) {
    const auto& w = weights_[static_cast<int>(h)];
    for (int c = 0; c < static_cast<int>(buf.off.size()) - 1; ++c) {
      buf.raw.push_back(dot(w, buf.slots, buf.off[c], buf.off[c + 1]));
    }
  };
  auto softmax_ce = [&](Head h, int gold_cell) {
    double lz = log_sum_exp(buf.raw);
    loss += lz - buf.raw[gold_cell];
    for (int c = 0; c < buf.cells(); ++c) {
      double g = std::exp(buf.raw[c] - lz) - (c == gold_cell ? 1.0 : 0.0);
      for (int s = buf.off[c]; s < buf.off[c + 1]; ++s) sink(h, buf.slots[s], g);
    }
  };
  auto binary_ce = [&](Head h, const std::vector<char>& target) {
    for (int c = 0; c < buf.cells(); ++c) {
      double x = buf.raw[c];
      double y = target[c] ? 1.0 : 0.0;
      loss -= target[c] ? log_sigmoid(x) : log_sigmoid(-x);
      double g = 1.0 / (1.0 + std::exp(-x)) - y;
      for (int s = buf.off[c]; s < buf.off[c + 1]; ++s) sink(h, buf.slots[s], g);
    }
  };

  switch (head) {
    case LossHead::kSpanStart:
    case LossHead::kSpanEnd: {
      Head h = (head == LossHead::kSpanStart) ? Head::kSpanStart
                                              : Head::kSpanEnd;
      for (int i = 1; i <= n; ++i) {  // loss for the dummy root is ignored
        buf.clear();
        for (int j = 1; j <= n; ++j) {
          fx_->span_cell(tok, h, i, j, &buf.slots);
          buf.close_cell();
        }
        row_dot(h);
        int gold = (head == LossHead::kSpanStart) ? spans[i].start
                                                  : spans[i].end;
        softmax_ce(h, gold - 1);
      }
      break;
    }
    case LossHead::kParent: {
      for (const LabeledArc& arc : inst.arcs) {
        QueryEncoding qe = QueryEncoding::build(sent, spans[arc.child]);
        const SubtreeSpan& parent = spans[arc.parent];
        struct { Head h; int gold; } rows[3] = {
            {Head::kParentRoot, parent.root},
            {Head::kParentStart, parent.start},
            {Head::kParentEnd, parent.end},
        };
        for (const auto& r : rows) {
          buf.clear();
          for (int t = 0; t <= n; ++t) {
            fx_->link_cell(tok, qe, r.h, t, &buf.slots);
            buf.close_cell();
          }
          row_dot(r.h);
          softmax_ce(r.h, r.gold);
        }
        // label distribution at the gold parent root
        buf.clear();
        for (int l = 0; l < L; ++l) {
          fx_->label_cell(tok, qe, Head::kParentLabel, parent.root, l,
                          &buf.slots);
          buf.close_cell();
        }
        row_dot(Head::kParentLabel);
        softmax_ce(Head::kParentLabel, label_id(arc.label));
      }
      break;
    }
    case LossHead::kChild: {
      std::vector<std::vector<int>> kids(n + 1);
      for (const LabeledArc& arc : inst.arcs) {
        kids[arc.parent].push_back(arc.child);
      }
      for (int p = 0; p <= n; ++p) {
        if (kids[p].empty()) continue;
        QueryEncoding qe = QueryEncoding::build(sent, spans[p]);
        std::vector<char> is_root(n, 0), is_start(n, 0), is_end(n, 0);
        for (int c : kids[p]) {
          is_root[c - 1] = 1;
          is_start[spans[c].start - 1] = 1;
          is_end[spans[c].end - 1] = 1;
        }
        struct { Head h; const std::vector<char>* y; } rows[3] = {
            {Head::kChildRoot, &is_root},
            {Head::kChildStart, &is_start},
            {Head::kChildEnd, &is_end},
        };
        for (const auto& r : rows) {
          buf.clear();
          for (int t = 1; t <= n; ++t) {
            fx_->link_cell(tok, qe, r.h, t, &buf.slots);
            buf.close_cell();
          }
          row_dot(r.h);
          binary_ce(r.h, *r.y);
        }
        for (int c : kids[p]) {
          buf.clear();
          for (int l = 0; l < L; ++l) {
            fx_->label_cell(tok, qe, Head::kChildLabel, c, l, &buf.slots);
            buf.close_cell();
          }
          row_dot(Head::kChildLabel);
          softmax_ce(Head::kChildLabel, label_id(inst.tree.label(c)));
        }
      }
      break;
    }
  }
  return loss;
}

double LogLinearModel::head_loss(const Instance& inst, LossHead head) const {
  return run_head(inst, head, [](Head, std::uint32_t, double) {});
}

double LogLinearModel::total_loss(const Instance& inst) const {
  return head_loss(inst, LossHead::kSpanStart) +
         head_loss(inst, LossHead::kSpanEnd) +
         head_loss(inst, LossHead::kParent) +
         head_loss(inst, LossHead::kChild);
}

void LogLinearModel::head_gradient(
    const Instance& inst, LossHead head,
    std::array<std::vector<double>, kNumHeads>* grads) const {
  for (auto& g : *grads) {
    if (g.size() != static_cast<std::size_t>(cfg_.dim)) {
      g.assign(cfg_.dim, 0.0);
    }
  }
  run_head(inst, head, [&](Head h, std::uint32_t slot, double g) {
    (*grads)[static_cast<int>(h)][slot] += g;
  });
}

double LogLinearModel::sgd_step(const Instance& inst, double lr) {
  // Per-instance batch gradient: collect, then apply once.
  std::vector<std::pair<std::uint64_t, double>> updates;
  double loss = 0.0;
  for (LossHead head : {LossHead::kSpanStart, LossHead::kSpanEnd,
                        LossHead::kParent, LossHead::kChild}) {
    loss += run_head(inst, head, [&](Head h, std::uint32_t slot, double g) {
      updates.emplace_back(
          (static_cast<std::uint64_t>(h) << 32) | slot, g);
    });
  }
  for (const auto& [key, g] : updates) {
    weights_[key >> 32][static_cast<std::uint32_t>(key)] -= lr * g;
  }
  return loss;
}

LogLinearModel train(const TreebankDoc& doc, const ModelConfig& cfg,
                     const EpochCallback& on_epoch) {
  if (doc.entries.empty()) throw UserError("cannot train on an empty treebank");
  std::set<std::string> label_set;
  for (const auto& e : doc.entries) {
    for (int i = 1; i <= e.tree.size(); ++i) label_set.insert(e.tree.label(i));
  }
  std::vector<std::string> labels(label_set.begin(), label_set.end());
  labels.push_back(kUnkLabel);

  LogLinearModel model(cfg, std::move(labels));
  std::vector<Instance> instances = make_instances(doc);
  bool any_projective = false;
  for (const auto& inst : instances) any_projective |= inst.projective;
  if (!any_projective) {
    throw UserError("treebank has no projective sentences to train on");
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<int> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    if (cfg.shuffle) std::shuffle(order.begin(), order.end(), rng);
    double lr = cfg.learning_rate / (1.0 + cfg.lr_decay * epoch);
    double loss = 0.0;
    for (int idx : order) loss += model.sgd_step(instances[idx], lr);
    if (on_epoch) on_epoch(epoch, loss, model);
  }
  return model;
}

void LogLinearModel::save(const std::string& path) const {
  if (!fitted()) throw NotFittedError("cannot save an unfitted model");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "SPANQA-MODEL v1\n";
  out << "dim " << cfg_.dim << '\n';
  out << "seed " << cfg_.seed << '\n';
  out << "templates v1\n";
  out << std::setprecision(17);
  out << "lambda " << chosen_lambda_ << '\n';
  out << "labels " << labels_.size() << '\n';
  for (const auto& l : labels_) out << l << '\n';
  for (int h = 0; h < kNumHeads; ++h) {
    std::size_t nnz = 0;
    for (double w : weights_[h]) nnz += (w != 0.0);
    out << "head " << h << " nnz " << nnz << '\n';
    for (std::size_t s = 0; s < weights_[h].size(); ++s) {
      if (weights_[h][s] != 0.0) out << s << ' ' << weights_[h][s] << '\n';
    }
  }
  out << "end\n";
  if (!out) throw IoError("write failed: " + path);
}

LogLinearModel LogLinearModel::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  auto next = [&]() -> std::string {
    if (!std::getline(in, line)) {
      throw FormatError(path + ": unexpected end of model file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  };
  if (next() != "SPANQA-MODEL v1") {
    throw FormatError(path + ": missing SPANQA-MODEL v1 header");
  }
  ModelConfig cfg;
  std::string kw;
  { std::istringstream s(next()); s >> kw >> cfg.dim;
    if (kw != "dim" || cfg.dim < 2) throw FormatError(path + ": bad dim line"); }
  { std::istringstream s(next()); s >> kw >> cfg.seed;
    if (kw != "seed") throw FormatError(path + ": bad seed line"); }
  if (next() != "templates v1") {
    throw FormatError(path + ": unsupported feature template version");
  }
  double lambda = 1.0;
  { std::istringstream s(next()); s >> kw >> lambda;
    if (kw != "lambda") throw FormatError(path + ": bad lambda line"); }
  int num_labels = 0;
  { std::istringstream s(next()); s >> kw >> num_labels;
    if (kw != "labels" || num_labels < 1) {
      throw FormatError(path + ": bad labels line");
    } }
  std::vector<std::string> labels(num_labels);
  for (auto& l : labels) l = next();

  LogLinearModel model(cfg, std::move(labels));
  model.chosen_lambda_ = lambda;
  for (int h = 0; h < kNumHeads; ++h) {
    std::istringstream s(next());
    int idx = -1;
    std::size_t nnz = 0;
    std::string kw2;
    s >> kw >> idx >> kw2 >> nnz;
    if (kw != "head" || idx != h || kw2 != "nnz") {
      throw FormatError(path + ": bad head header for head " +
                        std::to_string(h));
    }
    for (std::size_t i = 0; i < nnz; ++i) {
      std::istringstream ws(next());
      std::size_t slot = 0;
      double w = 0.0;
      if (!(ws >> slot >> w) || slot >= static_cast<std::size_t>(cfg.dim)) {
        throw FormatError(path + ": bad weight entry in head " +
                          std::to_string(h));
      }
      model.weights_[h][slot] = w;
    }
  }
  if (next() != "end") throw FormatError(path + ": missing end marker");
  return model;
}

TableScorer::TableScorer(std::vector<ScoreTables> tables)
    : tables_(std::move(tables)) {
  if (!tables_.empty()) labels_ = tables_.front().labels;
}

TableScorer TableScorer::from_file(const std::string& path) {
  return TableScorer(load_tables(path));
}

const ScoreTables& TableScorer::tables(int sent_idx) const {
  if (sent_idx < 0 || sent_idx >= size()) {
    throw DimensionError("no stored tables for sentence " +
                         std::to_string(sent_idx));
  }
  return tables_[sent_idx];
}

SpanTables TableScorer::span_tables(int sent_idx, const Sentence& sent) const {
  const ScoreTables& t = tables(sent_idx);
  if (t.n() != sent.real_size()) {
    throw DimensionError("stored tables have n=" + std::to_string(t.n()) +
                         " but sentence " + std::to_string(sent_idx) +
                         " has n=" + std::to_string(sent.real_size()));
  }
  return t.span;
}

LinkRows TableScorer::link_rows(int sent_idx, const Sentence& sent,
                                const SubtreeSpan& query) const {
  const ScoreTables& t = tables(sent_idx);
  if (t.n() != sent.real_size()) {
    throw DimensionError("stored tables have n=" + std::to_string(t.n()) +
                         " but sentence " + std::to_string(sent_idx) +
                         " has n=" + std::to_string(sent.real_size()));
  }
  return t.rows_for(query);
}

}  // namespace spanqa
