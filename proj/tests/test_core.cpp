#include <random>

#include "doctest.h"
#include "spanqa/core.h"
#include "testutil.h"

using namespace spanqa;
using namespace spanqa::testutil;

TEST_CASE("gold spans of the running example match the known table") {
  TreebankEntry e = example_entry();
  std::vector<SubtreeSpan> spans = gold_spans(e.tree, e.sentence);
  REQUIRE(spans.size() == 5);
  CHECK(spans[0] == SubtreeSpan{0, 0, 4});  // root I love Tim's cat
  CHECK(spans[1] == SubtreeSpan{1, 1, 1});  // I
  CHECK(spans[2] == SubtreeSpan{2, 1, 4});  // I love Tim's cat
  CHECK(spans[3] == SubtreeSpan{3, 3, 3});  // Tim's
  CHECK(spans[4] == SubtreeSpan{4, 3, 4});  // Tim's cat
}

TEST_CASE("single-token sentence has the leaf span") {
  Sentence sent = make_sentence({"a"});
  DepTree tree = validate_tree({0}, {"root"}, 1);
  std::vector<SubtreeSpan> spans = gold_spans(tree, sent);
  CHECK(spans[0] == SubtreeSpan{0, 0, 1});
  CHECK(spans[1] == SubtreeSpan{1, 1, 1});
}

TEST_CASE("non-contiguous yield raises and is detected") {
  // Arcs 3->1 and 4->2 cross.
  DepTree tree = validate_tree({3, 4, 0, 1}, {"a", "a", "a", "a"}, 4);
  CHECK_FALSE(is_projective(tree));
  Sentence sent = make_sentence({"w1", "w2", "w3", "w4"});
  CHECK_THROWS_AS(gold_spans(tree, sent), NonProjectiveError);
}

TEST_CASE("projectivity of simple shapes") {
  CHECK(is_projective(example_entry().tree));
  // Chain: each token headed by its left neighbor.
  DepTree chain = validate_tree({0, 1, 2, 3}, {"a", "a", "a", "a"}, 4);
  CHECK(is_projective(chain));
}

TEST_CASE("validate_tree accepts and rejects the advertised cases") {
  CHECK_NOTHROW(validate_tree({0}, {"root"}, 1));
  CHECK_THROWS_AS(validate_tree({2, 1}, {"a", "a"}, 2), CycleError);
  CHECK_THROWS_AS(validate_tree({0, 0}, {"a", "a"}, 2), MultiRootError);
  CHECK_THROWS_AS(validate_tree({5, 0}, {"a", "a"}, 2), IndexError);
  CHECK_THROWS_AS(validate_tree({0, 2}, {"a", "a"}, 2), CycleError);
  CHECK_THROWS_AS(validate_tree({0, 1, 1}, {"a", "a"}, 3), IndexError);
}

TEST_CASE("sentence construction") {
  Sentence s = make_sentence({"x", "y"});
  CHECK(s.size() == 3);
  CHECK(s.real_size() == 2);
  CHECK(s.form(0) == std::string(kRootForm));
  CHECK_THROWS_AS(Sentence({}), IndexError);
}

TEST_CASE("arc containment holds for every arc of random projective trees") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(rng() % 12);
    DepTree tree = random_projective_tree(n, rng);
    REQUIRE(is_projective(tree));
    std::vector<SubtreeSpan> spans = gold_spans(tree);
    for (int i = 1; i <= n; ++i) {
      int h = tree.head(i);
      CHECK(spans[h].start <= spans[i].start);
      CHECK(spans[i].end <= spans[h].end);
      CHECK(spans[i].start <= i);
      CHECK(i <= spans[i].end);
    }
    CHECK(spans[0] == SubtreeSpan{0, 0, n});
  }
}

TEST_CASE("is_projective agrees with brute-force yield contiguity") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + static_cast<int>(rng() % 7);
    DepTree tree = random_tree(n, rng);
    CHECK(is_projective(tree) == yields_contiguous(tree));
  }
}

TEST_CASE("a tree is recoverable from its spans plus arcs") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + static_cast<int>(rng() % 9);
    DepTree tree = random_projective_tree(n, rng);
    std::vector<SubtreeSpan> spans = gold_spans(tree);
    // Rebuild: each token's head is the root of the smallest strictly
    // containing gold span.
    std::vector<int> heads(n);
    for (int i = 1; i <= n; ++i) {
      int best = -1;
      for (int j = 0; j <= n; ++j) {
        if (j == i) continue;
        if (spans[j].contains(spans[i])) {
          if (best < 0 || spans[best].length() > spans[j].length()) best = j;
        }
      }
      REQUIRE(best >= 0);
      heads[i - 1] = best;
    }
    std::vector<std::string> labels(n);
    for (int i = 1; i <= n; ++i) labels[i - 1] = tree.label(i);
    CHECK(validate_tree(heads, labels, n) == tree);
  }
}
