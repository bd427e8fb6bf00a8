#include "spanqa/query.h"

namespace spanqa {

QueryEncoding QueryEncoding::build(const Sentence& sent,
                                   const SubtreeSpan& span) {
  int n = sent.real_size();
  if (span.start < 0 || span.end > n || span.start > span.root ||
      span.root > span.end) {
    throw IndexError("invalid query span (" + std::to_string(span.root) +
                     ", " + std::to_string(span.start) + ", " +
                     std::to_string(span.end) + ")");
  }
  QueryEncoding q;
  q.span = span;
  q.tokens.reserve(sent.size() + 4);
  for (int i = 0; i <= n; ++i) {
    if (i == span.start) {
      q.sos = static_cast<int>(q.tokens.size());
      q.tokens.push_back(kSos);
    }
    if (i == span.root) {
      q.sor = static_cast<int>(q.tokens.size());
      q.tokens.push_back(kSor);
    }
    q.tokens.push_back(sent.form(i));
    if (i == span.root) {
      q.eor = static_cast<int>(q.tokens.size());
      q.tokens.push_back(kEor);
    }
    if (i == span.end) {
      q.eos = static_cast<int>(q.tokens.size());
      q.tokens.push_back(kEos);
    }
  }
  return q;
}

std::vector<std::string> QueryEncoding::strip() const {
  std::vector<std::string> forms;
  forms.reserve(tokens.size() - 4);
  for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
    if (i == sos || i == sor || i == eor || i == eos) continue;
    forms.push_back(tokens[i]);
  }
  return forms;
}

}  // namespace spanqa
