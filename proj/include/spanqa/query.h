#ifndef SPANQA_QUERY_H
#define SPANQA_QUERY_H

#include <string>
#include <vector>

#include "spanqa/core.h"

namespace spanqa {

constexpr const char* kSos = "<sos>";
constexpr const char* kSor = "<sor>";
constexpr const char* kEor = "<eor>";
constexpr const char* kEos = "<eos>";

// The sentence with <sos>/<sor>/<eor>/<eos> markers delimiting a subtree
// span and its root: <sos> sits before token span.start, <sor> before
// span.root, <eor> after span.root, <eos> after span.end. Stripping the
// markers recovers the sentence token-for-token.
struct QueryEncoding {
  std::vector<std::string> tokens;  // forms with the four markers inserted
  int sos = -1, sor = -1, eor = -1, eos = -1;  // marker positions
  SubtreeSpan span;

  static QueryEncoding build(const Sentence& sent, const SubtreeSpan& span);

  // The token forms with markers removed; equals the sentence forms.
  std::vector<std::string> strip() const;
};

}  // namespace spanqa

#endif  // SPANQA_QUERY_H
