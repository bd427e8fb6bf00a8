#ifndef SPANQA_CORE_H
#define SPANQA_CORE_H

#include <string>
#include <vector>

#include "spanqa/errors.h"

namespace spanqa {

constexpr const char* kRootForm = "<root>";
constexpr const char* kRootPos = "<root>";

struct Token {
  std::string form;
  std::string upos;
};

// A sentence of n real tokens plus a synthetic root token at index 0.
// Immutable after construction; indices elsewhere are in [0, n].
class Sentence {
 public:
  // `words` are the n real tokens; the root token is prepended here.
  explicit Sentence(std::vector<Token> words);

  int size() const { return static_cast<int>(tokens_.size()); }  // n + 1
  int real_size() const { return size() - 1; }                   // n
  const Token& token(int i) const { return tokens_.at(i); }
  const std::string& form(int i) const { return tokens_.at(i).form; }
  const std::string& upos(int i) const { return tokens_.at(i).upos; }

 private:
  std::vector<Token> tokens_;
};

// Dependency tree over a sentence of n real tokens: one head index in [0, n]
// and one relation label per real token (index 1..n). Exactly one token is
// attached to the root (single-root), assignment is acyclic and connected.
class DepTree {
 public:
  DepTree() = default;

  int size() const { return static_cast<int>(heads_.size()) - 1; }  // n
  int head(int i) const { return heads_.at(i); }
  const std::string& label(int i) const { return labels_.at(i); }

  const std::vector<int>& heads() const { return heads_; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool operator==(const DepTree& other) const = default;

  friend DepTree validate_tree(const std::vector<int>& heads,
                               const std::vector<std::string>& labels, int n);

 private:
  // Slot 0 unused (head(0) = -1, label(0) = "").
  std::vector<int> heads_;
  std::vector<std::string> labels_;
};

// Checks index range, head(i) != i, single root, acyclicity/connectivity.
// `heads` and `labels` hold entries for tokens 1..n (size n).
// Throws IndexError, MultiRootError or CycleError.
DepTree validate_tree(const std::vector<int>& heads,
                      const std::vector<std::string>& labels, int n);

// Candidate or gold subtree span (root, start, end): the subtree rooted at
// `root` covers tokens start..end inclusive, with start <= root <= end.
// The root token's span is always (0, 0, n).
struct SubtreeSpan {
  int root = 0;
  int start = 0;
  int end = 0;

  int length() const { return end - start; }
  bool contains(const SubtreeSpan& inner) const {
    return start <= inner.start && inner.end <= end;
  }
  bool operator==(const SubtreeSpan&) const = default;
  // Lexicographic order; used for deterministic map keys and iteration.
  auto operator<=>(const SubtreeSpan&) const = default;
};

struct LabeledArc {
  int parent = 0;
  int child = 0;
  std::string label;

  bool operator==(const LabeledArc&) const = default;
};

// True iff every token's yield (the token plus its descendants) forms a
// contiguous index range; equivalently no two arcs cross.
bool is_projective(const DepTree& tree);

// Subtree span per token 0..n of a projective tree: (i, min yield, max
// yield). Token 0 always yields (0, 0, n). Throws NonProjectiveError when
// some yield is non-contiguous.
std::vector<SubtreeSpan> gold_spans(const DepTree& tree, const Sentence& sent);
std::vector<SubtreeSpan> gold_spans(const DepTree& tree);

}  // namespace spanqa

#endif  // SPANQA_CORE_H
