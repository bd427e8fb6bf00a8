#include "spanqa/proposal.h"

#include <algorithm>
#include <queue>
#include <set>

namespace spanqa {

int CandidateSet::total() const {
  int t = 0;
  for (const auto& v : per_token) t += static_cast<int>(v.size());
  return t;
}

bool CandidateSet::contains(const SubtreeSpan& span) const {
  if (span.root < 0 || span.root >= static_cast<int>(per_token.size())) {
    return false;
  }
  for (const auto& c : per_token[span.root]) {
    if (c.span == span) return true;
  }
  return false;
}

std::vector<SubtreeSpan> CandidateSet::all_spans() const {
  std::vector<SubtreeSpan> spans;
  for (const auto& v : per_token) {
    for (const auto& c : v) spans.push_back(c.span);
  }
  return spans;
}

double span_score(const SpanTables& tables, const SubtreeSpan& span) {
  int n = tables.n();
  if (span.root == 0) {
    if (span.start != 0 || span.end != n) {
      throw IndexError("the root span must be (0, 0, n)");
    }
    return 0.0;  // forced event
  }
  if (span.start < 1 || span.end > n || span.start > span.root ||
      span.root > span.end) {
    throw IndexError("invalid span (" + std::to_string(span.root) + ", " +
                     std::to_string(span.start) + ", " +
                     std::to_string(span.end) + ")");
  }
  return tables.start_lp(span.root, span.start) +
         tables.end_lp(span.root, span.end);
}

double span_score(const ScoreTables& tables, const SubtreeSpan& span) {
  return span_score(tables.span, span);
}

namespace {

// Deterministic candidate order: higher score first, then shorter span,
// then smaller start.
bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.span_score != b.span_score) return a.span_score > b.span_score;
  if (a.span.length() != b.span.length()) {
    return a.span.length() < b.span.length();
  }
  return a.span.start < b.span.start;
}

// Top-k sums of start_cells[a] + end_cells[b] via lazy frontier expansion
// over the two descending-sorted cell lists; all sum-ties of the k-th best
// are collected so the final composite tie-break is exact.
std::vector<Candidate> top_k_for_token(const SpanTables& tables, int i,
                                       int k) {
  int n = tables.n();
  struct Cell { double score; int j; };
  std::vector<Cell> starts, ends;
  for (int j = 1; j <= i; ++j) starts.push_back({tables.start_lp(i, j), j});
  for (int j = i; j <= n; ++j) ends.push_back({tables.end_lp(i, j), j});
  auto desc = [](const Cell& a, const Cell& b) {
    return a.score != b.score ? a.score > b.score : a.j < b.j;
  };
  std::sort(starts.begin(), starts.end(), desc);
  std::sort(ends.begin(), ends.end(), desc);

  struct Item { double sum; int a, b; };
  auto worse = [](const Item& x, const Item& y) { return x.sum < y.sum; };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> heap(worse);
  std::set<std::pair<int, int>> seen;
  auto push = [&](int a, int b) {
    if (a >= static_cast<int>(starts.size()) ||
        b >= static_cast<int>(ends.size())) {
      return;
    }
    if (!seen.insert({a, b}).second) return;
    heap.push({starts[a].score + ends[b].score, a, b});
  };
  push(0, 0);

  std::vector<Candidate> out;
  while (!heap.empty()) {
    // Pops arrive in non-increasing sum order, so once k candidates are
    // collected we only keep draining exact ties of the k-th sum.
    if (static_cast<int>(out.size()) >= k &&
        heap.top().sum != out.back().span_score) {
      break;
    }
    Item it = heap.top();
    heap.pop();
    out.push_back(Candidate{
        SubtreeSpan{i, starts[it.a].j, ends[it.b].j}, it.sum, false});
    push(it.a + 1, it.b);
    push(it.a, it.b + 1);
  }
  std::stable_sort(out.begin(), out.end(), candidate_before);
  if (static_cast<int>(out.size()) > k) out.resize(k);
  return out;
}

}  // namespace

CandidateSet propose(const ScoreTables& tables, const Sentence& sent, int k) {
  int n = tables.n();
  if (sent.real_size() != n) {
    throw DimensionError("tables built for n=" + std::to_string(n) +
                         " but sentence has n=" +
                         std::to_string(sent.real_size()));
  }
  if (k < 1) throw ConfigError("k must be >= 1");
  CandidateSet set;
  set.n = n;
  set.per_token.resize(n + 1);
  set.per_token[0].push_back(Candidate{SubtreeSpan{0, 0, n}, 0.0, false});
  for (int i = 1; i <= n; ++i) {
    set.per_token[i] = top_k_for_token(tables.span, i, k);
  }
  return set;
}

}  // namespace spanqa
