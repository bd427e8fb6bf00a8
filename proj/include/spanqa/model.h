#ifndef SPANQA_MODEL_H
#define SPANQA_MODEL_H

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "spanqa/conllu.h"
#include "spanqa/features.h"
#include "spanqa/tables.h"

namespace spanqa {

// Produces score tables for the decoders. Implementations must be safe to
// share across threads once constructed (scoring is const).
class Scorer {
 public:
  virtual ~Scorer() = default;
  // `sent_idx` identifies the sentence within the current document; the
  // trainable backend ignores it, the file-backed one uses it to select
  // the stored block.
  virtual SpanTables span_tables(int sent_idx, const Sentence& sent) const = 0;
  virtual LinkRows link_rows(int sent_idx, const Sentence& sent,
                             const SubtreeSpan& query) const = 0;
  virtual const std::vector<std::string>& labels() const = 0;
};

enum class LossHead { kSpanStart, kSpanEnd, kParent, kChild };

struct ModelConfig {
  int dim = 1 << 20;  // hashed weight slots per score head, power of two
  std::uint64_t seed = 42;
  int epochs = 20;
  double learning_rate = 0.5;
  double lr_decay = 0.1;  // rate at epoch e: learning_rate / (1 + lr_decay*e)
  bool shuffle = true;

  bool compatible_with(const ModelConfig& other) const {
    return dim == other.dim;
  }
};

// Feature-hashed log-linear scorer: ten hashed weight vectors, one per
// score head, trained with SGD on the span and link cross-entropy losses.
// Deterministic given seed and data.
class LogLinearModel : public Scorer {
 public:
  LogLinearModel() = default;  // unfitted; scoring throws NotFittedError
  LogLinearModel(const ModelConfig& cfg, std::vector<std::string> labels);

  bool fitted() const { return !weights_[0].empty(); }
  const ModelConfig& config() const { return cfg_; }
  double chosen_lambda() const { return chosen_lambda_; }
  void set_chosen_lambda(double l) { chosen_lambda_ = l; }

  SpanTables span_tables(int sent_idx, const Sentence& sent) const override;
  LinkRows link_rows(int sent_idx, const Sentence& sent,
                     const SubtreeSpan& query) const override;
  const std::vector<std::string>& labels() const override { return labels_; }

  // Raw sigmoid probabilities of the child rows (the binary heads before
  // renormalization), in root/start/end order over tokens 1..n.
  std::array<std::vector<double>, 3> child_bce_probs(
      const Sentence& sent, const SubtreeSpan& query) const;

  // Loss of one head on one instance (instances without span targets
  // contribute zero). Used by training, tests and the gradient checks.
  double head_loss(const Instance& inst, LossHead head) const;
  double total_loss(const Instance& inst) const;
  // Accumulates the analytic gradient of `head` into ten dense vectors of
  // size dim (indexed by Head).
  void head_gradient(const Instance& inst, LossHead head,
                     std::array<std::vector<double>, kNumHeads>* grads) const;

  // One SGD step over the instance (all heads); returns the loss before
  // the update.
  double sgd_step(const Instance& inst, double lr);

  double& weight_at(Head head, std::uint32_t slot) {
    return weights_[static_cast<int>(head)].at(slot);
  }
  const std::vector<double>& weights(Head head) const {
    return weights_[static_cast<int>(head)];
  }

  int label_id(const std::string& label) const;

  void save(const std::string& path) const;
  static LogLinearModel load(const std::string& path);

  bool operator==(const LogLinearModel& other) const;

 private:
  template <class Sink>
  double run_head(const Instance& inst, LossHead head, Sink&& sink) const;

  ModelConfig cfg_;
  double chosen_lambda_ = 1.0;
  std::vector<std::string> labels_;
  std::unique_ptr<FeatureExtractor> fx_;
  std::array<std::vector<double>, kNumHeads> weights_;

 public:
  // unique_ptr member: spell out copy semantics
  LogLinearModel(const LogLinearModel& other);
  LogLinearModel& operator=(const LogLinearModel& other);
  LogLinearModel(LogLinearModel&&) = default;
  LogLinearModel& operator=(LogLinearModel&&) = default;
};

// Called after every epoch with the online loss of that epoch.
using EpochCallback =
    std::function<void(int epoch, double loss, const LogLinearModel&)>;

// Fits the log-linear scorer on the projective sentences of `doc` by SGD
// over L_span_start + L_span_end + L_parent + L_child.
// Throws UserError on an empty treebank.
LogLinearModel train(const TreebankDoc& doc, const ModelConfig& cfg,
                     const EpochCallback& on_epoch = nullptr);

// Serves tables previously computed and saved to a file; sentence order
// must match the document being processed.
class TableScorer : public Scorer {
 public:
  explicit TableScorer(std::vector<ScoreTables> tables);
  static TableScorer from_file(const std::string& path);

  SpanTables span_tables(int sent_idx, const Sentence& sent) const override;
  LinkRows link_rows(int sent_idx, const Sentence& sent,
                     const SubtreeSpan& query) const override;
  const std::vector<std::string>& labels() const override { return labels_; }

  int size() const { return static_cast<int>(tables_.size()); }
  const ScoreTables& tables(int sent_idx) const;

 private:
  std::vector<ScoreTables> tables_;
  std::vector<std::string> labels_;
};

}  // namespace spanqa

#endif  // SPANQA_MODEL_H
