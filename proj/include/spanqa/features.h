#ifndef SPANQA_FEATURES_H
#define SPANQA_FEATURES_H

#include <cstdint>
#include <string_view>
#include <vector>

#include "spanqa/core.h"
#include "spanqa/query.h"

namespace spanqa {

// Score heads of the log-linear backend, one hashed weight vector each.
enum class Head {
  kSpanStart = 0,
  kSpanEnd,
  kParentRoot,
  kParentStart,
  kParentEnd,
  kParentLabel,
  kChildRoot,
  kChildStart,
  kChildEnd,
  kChildLabel,
};
constexpr int kNumHeads = 10;

inline bool is_label_head(Head h) {
  return h == Head::kParentLabel || h == Head::kChildLabel;
}
inline bool is_parent_head(Head h) {
  return h == Head::kParentRoot || h == Head::kParentStart ||
         h == Head::kParentEnd || h == Head::kParentLabel;
}

std::uint64_t fnv1a(std::string_view bytes);
std::uint64_t mix(std::uint64_t h, std::uint64_t v);

// Signed offset bucket id; symmetric around 0, coarser with distance.
int distance_bucket(int d);

// Precomputed per-token string hashes for one sentence.
struct TokenHashes {
  std::vector<std::uint64_t> form;
  std::vector<std::uint64_t> pos;
  explicit TokenHashes(const Sentence& sent);

  // Hash of the token at position i, with out-of-range sentinels.
  std::uint64_t form_at(int i) const;
  std::uint64_t pos_at(int i) const;
};

// Maps feature template instantiations to weight slots in [0, dim).
// The template list is fixed (version tag "v1" in model files); hashing is
// unseeded so saved weights stay valid across runs.
class FeatureExtractor {
 public:
  explicit FeatureExtractor(int dim);

  int dim() const { return dim_; }

  // Boundary-score features for the span rooted at token `root` with
  // candidate boundary `j` (start or end head).
  void span_cell(const TokenHashes& tok, Head head, int root, int j,
                 std::vector<std::uint32_t>* slots) const;

  // Positional link features for candidate answer token `t` given the
  // marked query.
  void link_cell(const TokenHashes& tok, const QueryEncoding& query, Head head,
                 int t, std::vector<std::uint32_t>* slots) const;

  // Label features for answer root `t` and label id `label`.
  void label_cell(const TokenHashes& tok, const QueryEncoding& query,
                  Head head, int t, int label,
                  std::vector<std::uint32_t>* slots) const;

 private:
  std::uint32_t slot(std::uint64_t h) const {
    return static_cast<std::uint32_t>(h & (dim_ - 1));
  }
  int dim_;
};

}  // namespace spanqa

#endif  // SPANQA_FEATURES_H
