#include <random>
#include <sstream>

#include "doctest.h"
#include "spanqa/eval.h"
#include "testutil.h"

using namespace spanqa;
using namespace spanqa::testutil;

TEST_CASE("identical trees score perfect attachment") {
  TreebankEntry e = example_entry();
  auto [uas, las] = uas_las(e.tree, e.tree, e.sentence, default_punct_set());
  CHECK(uas == 1.0);
  CHECK(las == 1.0);
}

TEST_CASE("all-wrong heads score zero") {
  Sentence sent = make_sentence({"a", "b"}, {"X", "X"});
  DepTree gold = validate_tree({0, 1}, {"root", "dep"}, 2);
  DepTree pred = validate_tree({2, 0}, {"root", "dep"}, 2);
  auto [uas, las] = uas_las(pred, gold, sent, default_punct_set());
  CHECK(uas == 0.0);
  CHECK(las == 0.0);
}

TEST_CASE("punctuation tokens are excluded from both numerator and "
          "denominator") {
  Sentence sent =
      make_sentence({"a", "b", "c", "."}, {"X", "X", "X", "PUNCT"});
  DepTree gold =
      validate_tree({2, 0, 2, 2}, {"s", "root", "o", "punct"}, 4);
  // heads of a, b, c correct; labels of a, b correct, c wrong; punct wrong.
  DepTree pred = validate_tree({2, 0, 2, 3}, {"s", "root", "x", "punct"}, 4);
  auto [uas, las] = uas_las(pred, gold, sent, default_punct_set());
  CHECK(uas == doctest::Approx(3.0 / 3));
  CHECK(las == doctest::Approx(2.0 / 3));
  // With an empty punctuation set the fourth token counts.
  auto [uas2, las2] = uas_las(pred, gold, sent, PunctSet{});
  CHECK(uas2 == doctest::Approx(3.0 / 4));
}

TEST_CASE("las never exceeds uas") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 8);
    Sentence sent = make_sentence(std::vector<std::string>(n, "w"));
    DepTree gold = random_tree(n, rng, {"a", "b", "c"});
    DepTree pred = random_tree(n, rng, {"a", "b", "c"});
    auto [uas, las] = uas_las(pred, gold, sent, default_punct_set());
    CHECK(las <= uas);
    CHECK(uas <= 1.0);
    CHECK(las >= 0.0);
  }
}

TEST_CASE("length mismatch is an error") {
  Sentence sent = make_sentence({"a", "b"});
  DepTree two = validate_tree({0, 1}, {"r", "d"}, 2);
  DepTree three = validate_tree({0, 1, 1}, {"r", "d", "d"}, 3);
  CHECK_THROWS_AS(uas_las(three, two, sent, default_punct_set()),
                  DimensionError);
}

TEST_CASE("span recall counts exact triple matches") {
  std::mt19937_64 rng(7);
  ScoreTables t = random_tables(4, 2, rng);
  CandidateSet all = all_spans_candidates(t);
  TreebankEntry e = example_entry();
  std::vector<SubtreeSpan> gold = gold_spans(e.tree);
  CHECK(span_recall(all, gold) == 1.0);

  CandidateSet empty;
  empty.n = 4;
  empty.per_token.resize(5);
  CHECK(span_recall(empty, gold) == 0.0);

  CandidateSet some = empty;
  some.per_token[0].push_back(Candidate{SubtreeSpan{0, 0, 4}, 0.0, false});
  some.per_token[1].push_back(Candidate{SubtreeSpan{1, 1, 1}, 0.0, false});
  some.per_token[2].push_back(Candidate{SubtreeSpan{2, 2, 4}, 0.0, false});
  CHECK(span_recall(some, gold) == doctest::Approx(2.0 / 5));
}

TEST_CASE("bucket reports aggregate back to the overall scores") {
  std::mt19937_64 rng(11);
  std::vector<DepTree> preds, golds;
  std::vector<Sentence> sents;
  AttachmentCounts direct;
  for (int s = 0; s < 40; ++s) {
    int n = 1 + static_cast<int>(rng() % 14);
    sents.push_back(make_sentence(std::vector<std::string>(n, "w")));
    golds.push_back(random_projective_tree(n, rng));
    preds.push_back(random_projective_tree(n, rng));
    direct.add(attachment_counts(preds.back(), golds.back(), sents.back(),
                                 default_punct_set()));
  }
  for (Bucketing b : {Bucketing::kSentenceLength, Bucketing::kDependencyLength,
                      Bucketing::kSubtreeSpanLength}) {
    BucketReport report =
        bucket_report(preds, golds, sents, b, default_punct_set());
    AttachmentCounts sum = report.overall();
    CHECK(sum.total == direct.total);
    CHECK(sum.correct_heads == direct.correct_heads);
    CHECK(sum.correct_labeled == direct.correct_labeled);
    CHECK(sum.uas() == doctest::Approx(direct.uas()));
  }
}

TEST_CASE("equal-length sentences land in one sentence-length bucket") {
  std::vector<DepTree> preds, golds;
  std::vector<Sentence> sents;
  for (int s = 0; s < 5; ++s) {
    sents.push_back(make_sentence({"a", "b", "c"}));
    golds.push_back(validate_tree({0, 1, 2}, {"r", "d", "d"}, 3));
    preds.push_back(validate_tree({0, 1, 1}, {"r", "d", "d"}, 3));
  }
  BucketReport report =
      bucket_report(preds, golds, sents, Bucketing::kSentenceLength,
                    default_punct_set());
  int populated = 0;
  for (const auto& row : report.rows) populated += (row.counts.total > 0);
  CHECK(populated == 1);
  CHECK(report.rows.front().counts.total == 15);
}

TEST_CASE("subtree span buckets use seven ranges and carry recall") {
  std::mt19937_64 rng(13);
  std::vector<DepTree> golds;
  std::vector<Sentence> sents;
  std::vector<CandidateSet> cands;
  for (int s = 0; s < 10; ++s) {
    int n = 6 + static_cast<int>(rng() % 9);
    sents.push_back(make_sentence(std::vector<std::string>(n, "w")));
    golds.push_back(random_projective_tree(n, rng));
    ScoreTables t = random_tables(n, 2, rng);
    cands.push_back(all_spans_candidates(t));
  }
  BucketReport report =
      bucket_report(golds, golds, sents, Bucketing::kSubtreeSpanLength,
                    default_punct_set(), &cands);
  CHECK(report.rows.size() == 7);
  int total_recall = 0, hit_recall = 0;
  for (const auto& row : report.rows) {
    total_recall += row.recall_total;
    hit_recall += row.recall_hits;
  }
  CHECK(total_recall > 0);
  CHECK(hit_recall == total_recall);  // complete candidate sets
  std::string tsv = report.to_tsv();
  CHECK(tsv.find("span_recall") != std::string::npos);
  CHECK(report.to_table().find("recall") != std::string::npos);
}

TEST_CASE("tsv output is line-per-bucket") {
  std::vector<DepTree> golds{validate_tree({0, 1}, {"r", "d"}, 2)};
  std::vector<Sentence> sents{make_sentence({"a", "b"})};
  BucketReport report =
      bucket_report(golds, golds, sents, Bucketing::kDependencyLength,
                    default_punct_set());
  std::istringstream tsv(report.to_tsv());
  std::string line;
  int lines = 0;
  while (std::getline(tsv, line)) ++lines;
  CHECK(lines == 8);  // header plus seven buckets
}
