#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "spanqa/conllu.h"
#include "testutil.h"

using namespace spanqa;
using namespace spanqa::testutil;

namespace {

TreebankDoc parse_text(const std::string& text) {
  std::istringstream in(text);
  return read_conllu_stream(in, "<test>");
}

std::string write_text(const TreebankDoc& doc) {
  std::ostringstream out;
  write_conllu_stream(doc, out);
  return out.str();
}

const char* kTwoTokens =
    "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
    "2\tb\t_\tX\t_\t_\t0\troot\t_\t_\n\n";

}  // namespace

TEST_CASE("reads a two-token sentence") {
  TreebankDoc doc = parse_text(kTwoTokens);
  REQUIRE(doc.size() == 1);
  const TreebankEntry& e = doc.entries[0];
  CHECK(e.sentence.real_size() == 2);
  CHECK(e.sentence.form(1) == "a");
  CHECK(e.tree.head(1) == 2);
  CHECK(e.tree.head(2) == 0);
  CHECK(e.tree.label(2) == "root");
}

TEST_CASE("comment-only sentence is a parse error") {
  CHECK_THROWS_AS(parse_text("# sent_id = 1\n# text = nothing\n\n"),
                  ParseError);
}

TEST_CASE("multiword ranges and empty nodes are skipped") {
  TreebankDoc doc = parse_text(
      "1-2\tab\t_\t_\t_\t_\t_\t_\t_\t_\n"
      "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
      "1.1\tghost\t_\tX\t_\t_\t_\t_\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t0\troot\t_\t_\n\n");
  REQUIRE(doc.size() == 1);
  CHECK(doc.entries[0].sentence.real_size() == 2);
}

TEST_CASE("multi-root sentences are repaired with a warning") {
  TreebankDoc doc = parse_text(
      "1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t0\troot\t_\t_\n"
      "3\tc\t_\tX\t_\t_\t2\tdep\t_\t_\n\n");
  REQUIRE(doc.size() == 1);
  CHECK(doc.entries[0].tree.head(1) == 0);
  CHECK(doc.entries[0].tree.head(2) == 1);  // re-attached to first root child
  CHECK(doc.entries[0].tree.head(3) == 2);
  REQUIRE(doc.multi_root_warnings.size() == 1);
}

TEST_CASE("malformed input reports the line") {
  try {
    parse_text("1\ta\t_\tX\t_\t_\tnot_a_head\tdep\t_\t_\n\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
  }
  CHECK_THROWS_AS(parse_text("1\ta\tX\t2\tdep\n\n"), ParseError);   // columns
  CHECK_THROWS_AS(parse_text(
      "1\ta\t_\tX\t_\t_\t2\tdep\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t1\tdep\t_\t_\n\n"), ParseError);  // no root
}

TEST_CASE("round-trip preserves consumed and opaque columns") {
  std::string text =
      "1\ta\tla\tDET\txd\tf=1\t2\tdet\t_\tm=1\n"
      "2\tb\tlb\tNOUN\txn\t_\t0\troot\t_\t_\n"
      "\n"
      "1\tc\t_\tVERB\t_\t_\t0\troot:x\t_\t_\n"
      "\n";
  TreebankDoc doc = parse_text(text);
  CHECK(doc.entries[1].tree.label(1) == "root:x");  // ':' kept verbatim
  CHECK(write_text(doc) == text);
}

TEST_CASE("empty document round-trips to an empty file") {
  TreebankDoc doc = parse_text("");
  CHECK(doc.size() == 0);
  CHECK(write_text(doc).empty());
}

TEST_CASE("file io surfaces missing paths") {
  CHECK_THROWS_AS(read_conllu("/nonexistent/file.conllu"), IoError);
}

TEST_CASE("write then read through actual files") {
  SynthGrammar grammar(5);
  TreebankDoc doc = grammar.generate(20);
  std::string path =
      (std::filesystem::temp_directory_path() / "spanqa_io_test.conllu")
          .string();
  write_conllu(doc, path);
  TreebankDoc back = read_conllu(path);
  REQUIRE(back.size() == doc.size());
  for (int i = 0; i < doc.size(); ++i) {
    CHECK(back.entries[i].tree == doc.entries[i].tree);
    CHECK(back.entries[i].sentence.size() == doc.entries[i].sentence.size());
  }
  std::remove(path.c_str());
}

TEST_CASE("make_instances emits n links and n+1 spans per projective tree") {
  TreebankDoc doc;
  doc.entries.push_back(example_entry());
  std::vector<Instance> insts = make_instances(doc);
  REQUIRE(insts.size() == 1);
  const Instance& inst = insts[0];
  CHECK(inst.projective);
  REQUIRE(inst.spans.has_value());
  CHECK(inst.spans->size() == 5);
  CHECK(inst.arcs.size() == 4);
  CHECK((*inst.spans)[2] == SubtreeSpan{2, 1, 4});
  bool found = false;
  for (const auto& arc : inst.arcs) {
    if (arc.parent == 2 && arc.child == 4) {
      CHECK(arc.label == "obj");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("single-token instance has one link and the token span") {
  TreebankDoc doc = parse_text("1\ta\t_\tX\t_\t_\t0\troot\t_\t_\n\n");
  std::vector<Instance> insts = make_instances(doc);
  REQUIRE(insts.size() == 1);
  CHECK(insts[0].arcs.size() == 1);
  CHECK(insts[0].arcs[0] == LabeledArc{0, 1, "root"});
  CHECK((*insts[0].spans)[1] == SubtreeSpan{1, 1, 1});
}

TEST_CASE("non-projective sentences are flagged and carry no span targets") {
  // 3->1 and 4->2 cross; validated against brute-force contiguity.
  TreebankDoc doc = parse_text(
      "1\ta\t_\tX\t_\t_\t3\tdep\t_\t_\n"
      "2\tb\t_\tX\t_\t_\t4\tdep\t_\t_\n"
      "3\tc\t_\tX\t_\t_\t0\troot\t_\t_\n"
      "4\td\t_\tX\t_\t_\t1\tdep\t_\t_\n\n");
  std::vector<Instance> insts = make_instances(doc);
  REQUIRE(insts.size() == 1);
  CHECK_FALSE(insts[0].projective);
  CHECK_FALSE(insts[0].spans.has_value());
  CHECK(insts[0].arcs.size() == 4);
  CHECK_FALSE(yields_contiguous(insts[0].tree));
  CHECK(doc.projective_fraction() == doctest::Approx(0.0));
}

TEST_CASE("conllu round-trip on random synthetic documents") {
  std::mt19937_64 rng(99);
  SynthGrammar grammar(17);
  TreebankDoc doc = grammar.generate(50);
  std::string once = write_text(doc);
  TreebankDoc back = parse_text(once);
  std::string twice = write_text(back);
  CHECK(once == twice);
  REQUIRE(back.size() == doc.size());
  for (int i = 0; i < doc.size(); ++i) {
    CHECK(back.entries[i].tree == doc.entries[i].tree);
  }
}
