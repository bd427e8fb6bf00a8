#include "spanqa/core.h"

#include <algorithm>

namespace spanqa {

Sentence::Sentence(std::vector<Token> words) {
  if (words.empty()) {
    throw IndexError("sentence must contain at least one real token");
  }
  tokens_.reserve(words.size() + 1);
  tokens_.push_back(Token{kRootForm, kRootPos});
  for (auto& w : words) tokens_.push_back(std::move(w));
}

DepTree validate_tree(const std::vector<int>& heads,
                      const std::vector<std::string>& labels, int n) {
  if (n < 1 || static_cast<int>(heads.size()) != n ||
      static_cast<int>(labels.size()) != n) {
    throw IndexError("head/label arrays must have one entry per real token");
  }
  int roots = 0;
  for (int i = 1; i <= n; ++i) {
    int h = heads[i - 1];
    if (h < 0 || h > n) {
      throw IndexError("head index " + std::to_string(h) + " of token " +
                       std::to_string(i) + " outside [0, " +
                       std::to_string(n) + "]");
    }
    if (h == i) {
      throw CycleError("token " + std::to_string(i) + " is its own head");
    }
    if (h == 0) ++roots;
  }
  if (roots != 1) {
    throw MultiRootError("expected exactly one root child, found " +
                         std::to_string(roots));
  }
  // Every token must reach 0 by following heads; a token that revisits
  // itself sits on a cycle.
  std::vector<int> state(n + 1, 0);  // 0 unseen, 1 on path, 2 done
  state[0] = 2;
  for (int i = 1; i <= n; ++i) {
    int v = i;
    std::vector<int> path;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = heads[v - 1];
    }
    if (state[v] == 1) {
      throw CycleError("cycle through token " + std::to_string(v));
    }
    for (int p : path) state[p] = 2;
  }

  DepTree tree;
  tree.heads_.resize(n + 1, -1);
  tree.labels_.resize(n + 1);
  for (int i = 1; i <= n; ++i) {
    tree.heads_[i] = heads[i - 1];
    tree.labels_[i] = labels[i - 1];
  }
  return tree;
}

namespace {

struct Yields {
  std::vector<int> lo, hi, count;
};

// Yield bounds and sizes in one bottom-up pass; DepTree instances are
// acyclic by construction, so a reverse BFS order visits children first.
Yields compute_yields(const DepTree& tree) {
  int n = tree.size();
  std::vector<std::vector<int>> kids(n + 1);
  for (int i = 1; i <= n; ++i) kids[tree.head(i)].push_back(i);
  Yields y;
  y.lo.resize(n + 1);
  y.hi.resize(n + 1);
  y.count.assign(n + 1, 1);
  for (int i = 0; i <= n; ++i) y.lo[i] = y.hi[i] = i;

  std::vector<int> bfs{0};
  bfs.reserve(n + 1);
  for (std::size_t q = 0; q < bfs.size(); ++q) {
    for (int c : kids[bfs[q]]) bfs.push_back(c);
  }
  for (int q = n; q >= 0; --q) {
    int v = bfs[q];
    for (int c : kids[v]) {
      y.lo[v] = std::min(y.lo[v], y.lo[c]);
      y.hi[v] = std::max(y.hi[v], y.hi[c]);
      y.count[v] += y.count[c];
    }
  }
  return y;
}

}  // namespace

bool is_projective(const DepTree& tree) {
  Yields y = compute_yields(tree);
  for (int i = 0; i <= tree.size(); ++i) {
    if (y.hi[i] - y.lo[i] + 1 != y.count[i]) return false;
  }
  return true;
}

std::vector<SubtreeSpan> gold_spans(const DepTree& tree) {
  int n = tree.size();
  Yields y = compute_yields(tree);
  std::vector<SubtreeSpan> spans(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (y.hi[i] - y.lo[i] + 1 != y.count[i]) {
      throw NonProjectiveError("yield of token " + std::to_string(i) +
                               " is not contiguous");
    }
    spans[i] = SubtreeSpan{i, y.lo[i], y.hi[i]};
  }
  return spans;
}

std::vector<SubtreeSpan> gold_spans(const DepTree& tree,
                                    const Sentence& sent) {
  if (sent.real_size() != tree.size()) {
    throw IndexError("sentence / tree length mismatch");
  }
  return gold_spans(tree);
}

}  // namespace spanqa
