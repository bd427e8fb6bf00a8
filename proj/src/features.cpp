#include "spanqa/features.h"

#include <cstdlib>

namespace spanqa {

namespace {
constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;
constexpr std::uint64_t kBosSentinel = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kEosSentinel = 0xc2b2ae3d27d4eb4fULL;
}  // namespace

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = kFnvOffset;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4);
  return h * kFnvPrime;
}

int distance_bucket(int d) {
  int mag = std::abs(d);
  int m;
  if (mag == 0) return 0;
  if (mag == 1) m = 1;
  else if (mag == 2) m = 2;
  else if (mag <= 4) m = 3;
  else if (mag <= 8) m = 4;
  else if (mag <= 16) m = 5;
  else m = 6;
  return d > 0 ? m : m + 6;
}

TokenHashes::TokenHashes(const Sentence& sent) {
  int m = sent.size();
  form.resize(m);
  pos.resize(m);
  for (int i = 0; i < m; ++i) {
    form[i] = fnv1a(sent.form(i));
    pos[i] = fnv1a(sent.upos(i));
  }
}

std::uint64_t TokenHashes::form_at(int i) const {
  if (i < 0) return kBosSentinel;
  if (i >= static_cast<int>(form.size())) return kEosSentinel;
  return form[i];
}

std::uint64_t TokenHashes::pos_at(int i) const {
  if (i < 0) return kBosSentinel;
  if (i >= static_cast<int>(pos.size())) return kEosSentinel;
  return pos[i];
}

FeatureExtractor::FeatureExtractor(int dim) : dim_(dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw ConfigError("feature dimension must be a power of two >= 2, got " +
                      std::to_string(dim));
  }
}

namespace {

// Seeds a template hash with the head and template ids.
inline std::uint64_t tpl(Head head, int t_id) {
  return mix(mix(kFnvOffset, static_cast<std::uint64_t>(head) + 1),
             static_cast<std::uint64_t>(t_id));
}

}  // namespace

void FeatureExtractor::span_cell(const TokenHashes& tok, Head head, int root,
                                 int j,
                                 std::vector<std::uint32_t>* slots) const {
  // The "outside neighbor" of the boundary: left of a start, right of an end.
  int out = (head == Head::kSpanStart) ? j - 1 : j + 1;
  std::uint64_t fi = tok.form_at(root), pi = tok.pos_at(root);
  std::uint64_t fj = tok.form_at(j), pj = tok.pos_at(j);
  std::uint64_t po = tok.pos_at(out);
  std::uint64_t d = distance_bucket(j - root);

  slots->push_back(slot(mix(tpl(head, 1), d)));
  slots->push_back(slot(mix(mix(tpl(head, 2), pi), d)));
  slots->push_back(slot(mix(mix(tpl(head, 3), pj), d)));
  slots->push_back(slot(mix(mix(tpl(head, 4), pi), pj)));
  slots->push_back(slot(mix(mix(tpl(head, 5), fi), d)));
  slots->push_back(slot(mix(mix(tpl(head, 6), fj), pi)));
  slots->push_back(slot(mix(mix(tpl(head, 7), po), pi)));
  slots->push_back(slot(mix(mix(mix(tpl(head, 8), po), pj), d)));
  slots->push_back(slot(mix(mix(tpl(head, 9), j == root ? 1u : 0u), pi)));
}

void FeatureExtractor::link_cell(const TokenHashes& tok,
                                 const QueryEncoding& query, Head head, int t,
                                 std::vector<std::uint32_t>* slots) const {
  const SubtreeSpan& q = query.span;
  std::uint64_t pt = tok.pos_at(t), ft = tok.form_at(t);
  std::uint64_t pr = tok.pos_at(q.root), fr = tok.form_at(q.root);
  std::uint64_t dr = distance_bucket(t - q.root);
  std::uint64_t ds = distance_bucket(t - q.start);
  std::uint64_t de = distance_bucket(t - q.end);
  std::uint64_t inside = (t >= q.start && t <= q.end) ? 1u : 0u;
  std::uint64_t adj = (t == q.start - 1) ? 1u : (t == q.end + 1 ? 2u : 0u);
  std::uint64_t width = distance_bucket(q.end - q.start);

  slots->push_back(slot(mix(tpl(head, 1), dr)));
  slots->push_back(slot(mix(mix(tpl(head, 2), pt), dr)));
  slots->push_back(slot(mix(mix(tpl(head, 3), pt), pr)));
  slots->push_back(slot(mix(mix(tpl(head, 4), fr), pt)));
  slots->push_back(slot(mix(mix(tpl(head, 5), ft), pr)));
  slots->push_back(slot(mix(mix(tpl(head, 6), inside), pt)));
  slots->push_back(slot(mix(mix(tpl(head, 7), adj), pr)));
  slots->push_back(slot(mix(mix(tpl(head, 8), ds), pt)));
  slots->push_back(slot(mix(mix(tpl(head, 9), de), pt)));
  slots->push_back(slot(mix(mix(tpl(head, 10), width), dr)));
  slots->push_back(slot(mix(mix(mix(tpl(head, 11), pt), pr), dr)));
  slots->push_back(slot(mix(mix(tpl(head, 12), ft), dr)));
}

void FeatureExtractor::label_cell(const TokenHashes& tok,
                                  const QueryEncoding& query, Head head, int t,
                                  int label,
                                  std::vector<std::uint32_t>* slots) const {
  const SubtreeSpan& q = query.span;
  std::uint64_t l = static_cast<std::uint64_t>(label) + 1;
  std::uint64_t pt = tok.pos_at(t), ft = tok.form_at(t);
  std::uint64_t pr = tok.pos_at(q.root), fr = tok.form_at(q.root);
  std::uint64_t dr = distance_bucket(t - q.root);
  std::uint64_t inside = (t >= q.start && t <= q.end) ? 1u : 0u;

  slots->push_back(slot(mix(mix(mix(tpl(head, 1), l), pt), pr)));
  slots->push_back(slot(mix(mix(tpl(head, 2), l), ft)));
  slots->push_back(slot(mix(mix(tpl(head, 3), l), fr)));
  slots->push_back(slot(mix(mix(tpl(head, 4), l), dr)));
  slots->push_back(slot(mix(mix(tpl(head, 5), l), pt)));
  slots->push_back(slot(mix(mix(tpl(head, 6), l), pr)));
  slots->push_back(slot(mix(mix(tpl(head, 7), l), inside)));
}

}  // namespace spanqa
