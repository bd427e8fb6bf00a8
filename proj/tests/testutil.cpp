#include "testutil.h"

#include <algorithm>
#include <functional>

namespace spanqa::testutil {

Sentence make_sentence(const std::vector<std::string>& forms,
                       const std::vector<std::string>& upos) {
  std::vector<Token> words;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    words.push_back(Token{forms[i], i < upos.size() ? upos[i] : "X"});
  }
  return Sentence(std::move(words));
}

TreebankEntry example_entry() {
  Sentence sent = make_sentence({"I", "love", "Tim's", "cat"},
                                {"PRON", "VERB", "PROPN", "NOUN"});
  DepTree tree = validate_tree({2, 0, 4, 2}, {"nsubj", "root", "nmod", "obj"},
                               4);
  return TreebankEntry{std::move(sent), std::move(tree), {}};
}

namespace {

// Tiles [lo, hi] with adjacent child blocks of `head`, right to left; each
// block picks a root and recurses on the two sides of it.
void partition_region(int lo, int hi, int head, std::vector<int>& heads,
                      std::mt19937_64& rng) {
  if (lo > hi) return;
  int x = hi;
  while (x >= lo) {
    int s = lo + static_cast<int>(rng() % (x - lo + 1));
    int r = s + static_cast<int>(rng() % (x - s + 1));
    heads[r - 1] = head;
    partition_region(s, r - 1, r, heads, rng);
    partition_region(r + 1, x, r, heads, rng);
    x = s - 1;
  }
}

}  // namespace

DepTree random_projective_tree(int n, std::mt19937_64& rng,
                               const std::vector<std::string>& labels) {
  std::vector<int> heads(n, -1);
  int top = 1 + static_cast<int>(rng() % n);
  heads[top - 1] = 0;
  if (top > 1) partition_region(1, top - 1, top, heads, rng);
  if (top < n) partition_region(top + 1, n, top, heads, rng);
  std::vector<std::string> ls(n);
  for (int i = 0; i < n; ++i) {
    ls[i] = heads[i] == 0 ? labels.front() : labels[rng() % labels.size()];
  }
  return validate_tree(heads, ls, n);
}

DepTree random_tree(int n, std::mt19937_64& rng,
                    const std::vector<std::string>& labels) {
  while (true) {
    std::vector<int> heads(n);
    int root = 1 + static_cast<int>(rng() % n);
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      if (i == root) {
        heads[i - 1] = 0;
        continue;
      }
      heads[i - 1] = static_cast<int>(rng() % (n + 1));
      if (heads[i - 1] == i || heads[i - 1] == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<std::string> ls(n);
    for (int i = 0; i < n; ++i) ls[i] = labels[rng() % labels.size()];
    try {
      return validate_tree(heads, ls, n);
    } catch (const Error&) {
      continue;
    }
  }
}

bool yields_contiguous(const DepTree& tree) {
  int n = tree.size();
  for (int i = 1; i <= n; ++i) {
    std::vector<int> yield;
    for (int j = 1; j <= n; ++j) {
      int v = j;
      while (v != 0 && v != i) v = tree.head(v);
      if (v == i) yield.push_back(j);
    }
    if (yield.empty()) continue;
    int lo = *std::min_element(yield.begin(), yield.end());
    int hi = *std::max_element(yield.begin(), yield.end());
    if (hi - lo + 1 != static_cast<int>(yield.size())) return false;
  }
  return true;
}

CandidateSet all_spans_candidates(const ScoreTables& tables) {
  int n = tables.n();
  CandidateSet set;
  set.n = n;
  set.per_token.resize(n + 1);
  set.per_token[0].push_back(Candidate{SubtreeSpan{0, 0, n}, 0.0, false});
  for (int i = 1; i <= n; ++i) {
    for (int s = 1; s <= i; ++s) {
      for (int e = i; e <= n; ++e) {
        SubtreeSpan span{i, s, e};
        set.per_token[i].push_back(
            Candidate{span, span_score(tables, span), false});
      }
    }
  }
  return set;
}

namespace {

std::vector<std::string> label_names(int num_labels) {
  std::vector<std::string> labels;
  for (int i = 0; i + 1 < num_labels; ++i) {
    labels.push_back("rel" + std::to_string(i));
  }
  labels.push_back(kUnkLabel);
  return labels;
}

ScoreTables tables_from_raw(
    int n, int num_labels,
    const std::function<double()>& draw) {
  ScoreTables t;
  t.labels = label_names(num_labels);
  std::vector<double> start(static_cast<std::size_t>(n + 1) * n);
  std::vector<double> end(start.size());
  std::vector<double> row(n);
  for (auto* table : {&start, &end}) {
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j < n; ++j) row[j] = draw();
      log_normalize(row);
      std::copy(row.begin(), row.end(), table->begin() + i * n);
    }
  }
  t.span = SpanTables(n, std::move(start), std::move(end));

  std::vector<SubtreeSpan> queries{{0, 0, n}};
  for (int i = 1; i <= n; ++i) {
    for (int s = 1; s <= i; ++s) {
      for (int e = i; e <= n; ++e) queries.push_back(SubtreeSpan{i, s, e});
    }
  }
  for (const SubtreeSpan& q : queries) {
    LinkRows rows(q, n, num_labels);
    for (auto* r : {&rows.parent_root(), &rows.parent_start(),
                    &rows.parent_end(), &rows.child_root(),
                    &rows.child_start(), &rows.child_end()}) {
      for (double& v : *r) v = draw();
      log_normalize(*r);
    }
    for (auto* block : {&rows.parent_label(), &rows.child_label()}) {
      std::vector<double> lrow(num_labels);
      int rows_count = static_cast<int>(block->size()) / num_labels;
      for (int tok = 0; tok < rows_count; ++tok) {
        for (int l = 0; l < num_labels; ++l) lrow[l] = draw();
        log_normalize(lrow);
        std::copy(lrow.begin(), lrow.end(),
                  block->begin() + static_cast<std::size_t>(tok) * num_labels);
      }
    }
    t.link.emplace(q, std::move(rows));
  }
  return t;
}

}  // namespace

ScoreTables random_tables(int n, int num_labels, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.5);
  return tables_from_raw(n, num_labels, [&]() { return gauss(rng); });
}

ScoreTables uniform_tables(int n, int num_labels) {
  return tables_from_raw(n, num_labels, []() { return 0.0; });
}

ScoreTables peaked_tables(const DepTree& tree, int num_labels, double peak) {
  int n = tree.size();
  std::vector<SubtreeSpan> spans = gold_spans(tree);
  ScoreTables t = uniform_tables(n, num_labels);

  std::vector<double> start(static_cast<std::size_t>(n + 1) * n, 0.0);
  std::vector<double> end(start.size(), 0.0);
  std::vector<double> row(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      row[j - 1] = (i >= 1 && spans[i].start == j) ? peak : 0.0;
    }
    log_normalize(row);
    std::copy(row.begin(), row.end(), start.begin() + i * n);
    for (int j = 1; j <= n; ++j) {
      row[j - 1] = (i >= 1 && spans[i].end == j) ? peak : 0.0;
    }
    log_normalize(row);
    std::copy(row.begin(), row.end(), end.begin() + i * n);
  }
  t.span = SpanTables(n, std::move(start), std::move(end));

  for (auto& [q, rows] : t.link) {
    // Peak parent rows when the query is a gold span; peak child rows when
    // the query is a gold parent.
    if (q == spans[q.root] && q.root >= 1) {
      int p = tree.head(q.root);
      auto peak_row = [&](std::vector<double>& r, int gold) {
        for (int tt = 0; tt < static_cast<int>(r.size()); ++tt) {
          r[tt] = (tt == gold) ? peak : 0.0;
        }
        log_normalize(r);
      };
      peak_row(rows.parent_root(), spans[p].root);
      peak_row(rows.parent_start(), spans[p].start);
      peak_row(rows.parent_end(), spans[p].end);
    }
    if (q == spans[q.root]) {
      std::vector<char> is_root(n + 1, 0), is_start(n + 1, 0),
          is_end(n + 1, 0);
      for (int c = 1; c <= n; ++c) {
        if (tree.head(c) != q.root) continue;
        is_root[c] = 1;
        is_start[spans[c].start] = 1;
        is_end[spans[c].end] = 1;
      }
      auto peak_multi = [&](std::vector<double>& r,
                            const std::vector<char>& y) {
        for (int tt = 1; tt <= n; ++tt) r[tt - 1] = y[tt] ? peak : 0.0;
        log_normalize(r);
      };
      peak_multi(rows.child_root(), is_root);
      peak_multi(rows.child_start(), is_start);
      peak_multi(rows.child_end(), is_end);
    }
  }
  return t;
}

}  // namespace spanqa::testutil
