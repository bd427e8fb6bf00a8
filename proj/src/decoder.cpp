#include "spanqa/decoder.h"

#include <algorithm>
#include <limits>

namespace spanqa {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool shorter_first(const Candidate& a, const Candidate& b) {
  if (a.span.length() != b.span.length()) {
    return a.span.length() < b.span.length();
  }
  if (a.span.start != b.span.start) return a.span.start < b.span.start;
  return a.span.root < b.span.root;
}

}  // namespace

DecodeResult decode_projective(const CandidateSet& candidates,
                               const ScoreTables& tables, double lambda,
                               Chart* chart_out) {
  int n = tables.n();
  if (!candidates.contains(SubtreeSpan{0, 0, n})) {
    throw InfeasibleError("candidate set lacks the forced root span");
  }

  // Process candidates in increasing span length so every tiling only
  // reads finalized entries; within a length the order fixes tie-breaks.
  std::vector<Candidate> all;
  for (const auto& v : candidates.per_token) {
    all.insert(all.end(), v.begin(), v.end());
  }
  std::sort(all.begin(), all.end(), shorter_first);
  int m = static_cast<int>(all.size());

  std::vector<std::vector<int>> by_end(n + 1);
  for (int i = 0; i < m; ++i) by_end[all[i].span.end].push_back(i);
  for (auto& v : by_end) {
    std::sort(v.begin(), v.end(), [&](int a, int b) {
      if (all[a].span.start != all[b].span.start) {
        return all[a].span.start < all[b].span.start;
      }
      return all[a].span.root < all[b].span.root;
    });
  }

  std::vector<double> best(m, kNegInf);
  std::vector<char> done(m, 0);
  std::vector<std::vector<int>> kids(m);

  auto link = [&](int parent, int child) {
    return score_link_unchecked(tables, all[parent].span, all[child].span);
  };

  // Best adjacent tiling of region [a, b] by finalized candidate spans,
  // each contributing score(child) + lambda * link(parent, child).
  auto tile = [&](int a, int b, int parent, std::vector<int>* children) {
    if (a > b) return 0.0;
    int width = b - a + 2;  // positions a-1 .. b
    std::vector<double> dp(width, kNegInf);
    std::vector<int> choice(width, -1);
    dp[0] = 0.0;
    for (int x = a; x <= b; ++x) {
      int xi = x - a + 1;
      for (int ci : by_end[x]) {
        const SubtreeSpan& c = all[ci].span;
        if (c.start < a || !done[ci] || best[ci] == kNegInf) continue;
        double left = dp[c.start - a];
        if (left == kNegInf) continue;
        double val = left + best[ci] + lambda * link(parent, ci).score;
        if (val > dp[xi]) {
          dp[xi] = val;
          choice[xi] = ci;
        }
      }
    }
    if (dp[width - 1] == kNegInf) return kNegInf;
    for (int x = b; x >= a; x = all[choice[x - a + 1]].span.start - 1) {
      children->push_back(choice[x - a + 1]);
    }
    return dp[width - 1];
  };

  int root_idx = -1;
  for (int i = 0; i < m; ++i) {
    const SubtreeSpan& s = all[i].span;
    if (s.length() == 0) {
      best[i] = all[i].span_score;
      done[i] = 1;
      continue;
    }
    if (s.root == 0) {
      // The root span takes exactly one child covering [1, n]; tiling the
      // region with several spans would attach several tokens to the root.
      root_idx = i;
      double b = kNegInf;
      int bc = -1;
      for (int ci : by_end[n]) {
        const SubtreeSpan& c = all[ci].span;
        if (c.start != 1 || c.root == 0 || !done[ci] || best[ci] == kNegInf) {
          continue;
        }
        double val = best[ci] + lambda * link(i, ci).score;
        if (val > b) {
          b = val;
          bc = ci;
        }
      }
      if (bc >= 0) {
        best[i] = all[i].span_score + b;
        kids[i] = {bc};
      }
      done[i] = 1;
      continue;
    }
    std::vector<int> lk, rk;
    double left = tile(s.start, s.root - 1, i, &lk);
    if (left != kNegInf) {
      double right = tile(s.root + 1, s.end, i, &rk);
      if (right != kNegInf) {
        best[i] = all[i].span_score + left + right;
        kids[i] = std::move(lk);
        kids[i].insert(kids[i].end(), rk.begin(), rk.end());
      }
    }
    done[i] = 1;
  }

  if (root_idx < 0 || best[root_idx] == kNegInf) {
    throw InfeasibleError(
        "no adjacent tiling of the root span exists; the candidate set is "
        "too sparse (raise k)");
  }

  std::vector<int> heads(n, 0);
  std::vector<std::string> labels(n, tables.labels.empty()
                                         ? std::string(kUnkLabel)
                                         : tables.labels.front());
  std::vector<int> stack{root_idx};
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    for (int c : kids[p]) {
      int dep = all[c].span.root;
      heads[dep - 1] = all[p].span.root;
      labels[dep - 1] = tables.labels.at(link(p, c).label);
      stack.push_back(c);
    }
  }

  if (chart_out) {
    chart_out->entries.clear();
    for (int i = 0; i < m; ++i) {
      if (best[i] == kNegInf) continue;
      ChartEntry e;
      e.score = best[i];
      for (int c : kids[i]) e.children.push_back(all[c].span);
      chart_out->entries.emplace(all[i].span, std::move(e));
    }
  }

  return DecodeResult{validate_tree(heads, labels, n), best[root_idx]};
}

EdgeMatrix::EdgeMatrix(int n)
    : n_(n),
      score_(static_cast<std::size_t>(n + 1) * (n + 1), kNegInf),
      label_(static_cast<std::size_t>(n + 1) * (n + 1), -1),
      pair_(static_cast<std::size_t>(n + 1) * (n + 1)) {}

void EdgeMatrix::set(int i, int j, double score, int label,
                     const SubtreeSpan& pi, const SubtreeSpan& pj) {
  score_[idx(i, j)] = score;
  label_[idx(i, j)] = label;
  pair_[idx(i, j)] = {pi, pj};
}

EdgeMatrix build_edge_matrix(const CandidateSet& candidates,
                             const ScoreTables& tables, double lambda,
                             bool halve_span_terms) {
  int n = tables.n();
  EdgeMatrix em(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      double best = kNegInf;
      int best_label = -1;
      std::pair<SubtreeSpan, SubtreeSpan> best_pair;
      for (const Candidate& ti : candidates.per_token[i]) {
        for (const Candidate& tj : candidates.per_token[j]) {
          LinkScore ls = score_link_unchecked(tables, ti.span, tj.span);
          double spans = ti.span_score + tj.span_score;
          if (halve_span_terms) spans *= 0.5;
          double v = spans + lambda * ls.score;
          if (v > best) {
            best = v;
            best_label = ls.label;
            best_pair = {ti.span, tj.span};
          }
        }
      }
      if (best != kNegInf) {
        em.set(i, j, best, best_label, best_pair.first, best_pair.second);
      }
    }
  }
  return em;
}

namespace {

// Maximum arborescence rooted at node 0 by greedy selection plus cycle
// contraction. Returns the head of every node 1..m-1.
std::vector<int> chu_liu_edmonds(const std::vector<std::vector<double>>& s) {
  int m = static_cast<int>(s.size());
  std::vector<int> best_in(m, -1);
  for (int v = 1; v < m; ++v) {
    for (int u = 0; u < m; ++u) {
      if (u == v || s[u][v] == kNegInf) continue;
      if (best_in[v] < 0 || s[u][v] > s[best_in[v]][v]) best_in[v] = u;
    }
    if (best_in[v] < 0) {
      throw InfeasibleError("token " + std::to_string(v) +
                            " has no incoming finite edge");
    }
  }

  // Look for a cycle among the greedy picks.
  std::vector<int> color(m, 0);  // 0 unseen, 1 on path, 2 done
  color[0] = 2;
  std::vector<int> cycle;
  for (int v = 1; v < m && cycle.empty(); ++v) {
    if (color[v]) continue;
    int u = v;
    std::vector<int> path;
    while (color[u] == 0) {
      color[u] = 1;
      path.push_back(u);
      u = best_in[u];
    }
    if (color[u] == 1) {
      int w = u;
      do {
        cycle.push_back(w);
        w = best_in[w];
      } while (w != u);
    }
    for (int p : path) color[p] = 2;
  }
  if (cycle.empty()) {
    best_in[0] = -1;
    return best_in;
  }

  // Contract the cycle into one supernode and recurse on the smaller
  // graph. Entering the cycle at v costs the cycle edge into v.
  std::vector<char> in_cycle(m, 0);
  for (int v : cycle) in_cycle[v] = 1;
  std::vector<int> old_of;
  std::vector<int> new_of(m, -1);
  for (int v = 0; v < m; ++v) {
    if (!in_cycle[v]) {
      new_of[v] = static_cast<int>(old_of.size());
      old_of.push_back(v);
    }
  }
  int super = static_cast<int>(old_of.size());
  int m2 = super + 1;
  std::vector<std::vector<double>> s2(m2, std::vector<double>(m2, kNegInf));
  std::vector<int> enter_at(m2, -1);    // per source: cycle node entered
  std::vector<int> leave_from(m2, -1);  // per target: cycle node exited
  for (int u = 0; u < m; ++u) {
    for (int v = 1; v < m; ++v) {
      if (u == v || s[u][v] == kNegInf) continue;
      if (!in_cycle[u] && !in_cycle[v]) {
        s2[new_of[u]][new_of[v]] = s[u][v];
      } else if (!in_cycle[u] && in_cycle[v]) {
        int a = new_of[u];
        double w = s[u][v] - s[best_in[v]][v];
        if (w > s2[a][super]) {
          s2[a][super] = w;
          enter_at[a] = v;
        }
      } else if (in_cycle[u] && !in_cycle[v]) {
        int b = new_of[v];
        if (s[u][v] > s2[super][b]) {
          s2[super][b] = s[u][v];
          leave_from[b] = u;
        }
      }
    }
  }

  std::vector<int> reduced = chu_liu_edmonds(s2);
  std::vector<int> heads(m, -1);
  for (int v : cycle) heads[v] = best_in[v];
  for (int b = 1; b < m2; ++b) {
    int a = reduced[b];
    if (b == super) {
      heads[enter_at[a]] = old_of[a];
    } else {
      heads[old_of[b]] = (a == super) ? leave_from[b] : old_of[a];
    }
  }
  return heads;
}

}  // namespace

DecodeResult decode_mst(const CandidateSet& candidates,
                        const ScoreTables& tables, double lambda,
                        bool halve_span_terms) {
  int n = tables.n();
  for (int j = 1; j <= n; ++j) {
    if (candidates.per_token[j].empty()) {
      throw InfeasibleError("token " + std::to_string(j) +
                            " has no candidate spans");
    }
  }
  EdgeMatrix em = build_edge_matrix(candidates, tables, lambda,
                                    halve_span_terms);

  auto matrix_with_fixed_root = [&](int fixed) {
    std::vector<std::vector<double>> s(
        n + 1, std::vector<double>(n + 1, kNegInf));
    for (int i = 0; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j) continue;
        if (i == 0 && fixed > 0 && j != fixed) continue;
        s[i][j] = em.at(i, j);
      }
    }
    return s;
  };
  auto total = [&](const std::vector<int>& heads) {
    double t = 0.0;
    for (int v = 1; v <= n; ++v) t += em.at(heads[v], v);
    return t;
  };

  std::vector<int> heads = chu_liu_edmonds(matrix_with_fixed_root(0));
  int root_children = 0;
  for (int v = 1; v <= n; ++v) root_children += (heads[v] == 0);
  if (root_children != 1) {
    // Re-run with each candidate root child fixed and keep the best.
    std::vector<int> best_heads;
    double best_total = kNegInf;
    for (int c = 1; c <= n; ++c) {
      try {
        std::vector<int> h = chu_liu_edmonds(matrix_with_fixed_root(c));
        double t = total(h);
        if (t > best_total) {
          best_total = t;
          best_heads = std::move(h);
        }
      } catch (const InfeasibleError&) {
        continue;
      }
    }
    if (best_heads.empty()) {
      throw InfeasibleError("no single-root arborescence exists");
    }
    heads = std::move(best_heads);
  }

  std::vector<int> hv(heads.begin() + 1, heads.end());
  std::vector<std::string> labels(n);
  for (int v = 1; v <= n; ++v) {
    labels[v - 1] = tables.labels.at(em.label_at(heads[v], v));
  }
  return DecodeResult{validate_tree(hv, labels, n), total(heads)};
}

namespace {

bool arcs_cross(int h1, int d1, int h2, int d2) {
  int a1 = std::min(h1, d1), b1 = std::max(h1, d1);
  int a2 = std::min(h2, d2), b2 = std::max(h2, d2);
  return (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1);
}

struct BruteForceState {
  const CandidateSet* candidates = nullptr;
  const ScoreTables* tables = nullptr;
  double lambda = 1.0;
  BruteForceMode mode = BruteForceMode::kProjective;
  const EdgeMatrix* edges = nullptr;
  int n = 0;
  std::vector<int> heads;  // index 1..n, -1 = unassigned
  int roots = 0;
  double best = kNegInf;
  std::vector<int> best_heads;
};

void brute_force_leaf(BruteForceState& st) {
  int n = st.n;
  double score;
  std::vector<int> hv(st.heads.begin() + 1, st.heads.end());
  if (st.mode == BruteForceMode::kAll) {
    score = 0.0;
    for (int v = 1; v <= n; ++v) score += st.edges->at(st.heads[v], v);
  } else {
    DepTree tree =
        validate_tree(hv, std::vector<std::string>(n, kUnkLabel), n);
    std::vector<SubtreeSpan> spans;
    try {
      spans = gold_spans(tree);
    } catch (const NonProjectiveError&) {
      return;
    }
    for (int i = 0; i <= n; ++i) {
      if (!st.candidates->contains(spans[i])) return;
    }
    score = 0.0;
    for (int i = 1; i <= n; ++i) score += span_score(*st.tables, spans[i]);
    for (int d = 1; d <= n; ++d) {
      score += st.lambda *
               score_link(*st.tables, spans[st.heads[d]], spans[d]).score;
    }
  }
  if (score > st.best) {
    st.best = score;
    st.best_heads = hv;
  }
}

void brute_force_dfs(BruteForceState& st, int d) {
  if (d > st.n) {
    if (st.roots == 1) brute_force_leaf(st);
    return;
  }
  for (int h = 0; h <= st.n; ++h) {
    if (h == d) continue;
    if (h == 0 && st.roots == 1) continue;
    // Cycle check within assigned tokens.
    bool cyclic = false;
    for (int v = h; v != 0;) {
      if (v == d) {
        cyclic = true;
        break;
      }
      if (v > st.n || st.heads[v] < 0) break;
      v = st.heads[v];
    }
    if (cyclic) continue;
    if (st.mode == BruteForceMode::kProjective) {
      bool crosses = false;
      for (int j = 1; j < d && !crosses; ++j) {
        crosses = arcs_cross(st.heads[j], j, h, d);
      }
      if (crosses) continue;
    }
    st.heads[d] = h;
    st.roots += (h == 0);
    brute_force_dfs(st, d + 1);
    st.roots -= (h == 0);
    st.heads[d] = -1;
  }
}

}  // namespace

DecodeResult decode_bruteforce(const CandidateSet& candidates,
                               const ScoreTables& tables, double lambda,
                               BruteForceMode mode, bool halve_span_terms) {
  int n = tables.n();
  if (n > 10) {
    throw TooLargeError("brute-force decoding is limited to n <= 10, got " +
                        std::to_string(n));
  }
  EdgeMatrix em(0);
  BruteForceState st;
  st.candidates = &candidates;
  st.tables = &tables;
  st.lambda = lambda;
  st.mode = mode;
  st.edges = nullptr;
  st.n = n;
  st.heads.assign(n + 1, -1);
  if (mode == BruteForceMode::kAll) {
    em = build_edge_matrix(candidates, tables, lambda, halve_span_terms);
    st.edges = &em;
  }
  brute_force_dfs(st, 1);
  if (st.best == kNegInf) {
    throw InfeasibleError("no feasible tree over the candidate set");
  }

  // Re-derive labels the same way the main decoders do.
  std::vector<std::string> labels(n);
  if (mode == BruteForceMode::kAll) {
    for (int v = 1; v <= n; ++v) {
      labels[v - 1] = tables.labels.at(em.label_at(st.best_heads[v - 1], v));
    }
  } else {
    DepTree bare = validate_tree(
        st.best_heads, std::vector<std::string>(n, kUnkLabel), n);
    std::vector<SubtreeSpan> spans = gold_spans(bare);
    for (int v = 1; v <= n; ++v) {
      int h = st.best_heads[v - 1];
      labels[v - 1] =
          tables.labels.at(score_link(tables, spans[h], spans[v]).label);
    }
  }
  return DecodeResult{validate_tree(st.best_heads, labels, n), st.best};
}

}  // namespace spanqa
