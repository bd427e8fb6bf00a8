#include "synth.h"

#include <random>

namespace spanqa::testutil {

namespace {

const std::vector<std::string> kNouns = {"cat",   "dog",  "bird",  "fish",
                                         "man",   "woman", "child", "fox",
                                         "cow",   "owl"};
const std::vector<std::string> kVerbs = {"sees",    "likes",  "finds",
                                         "follows", "chases", "feeds"};
const std::vector<std::string> kDets = {"the", "a", "every"};
const std::vector<std::string> kAdjs = {"big", "small", "red",
                                        "old", "happy", "lazy"};
const std::vector<std::string> kAdps = {"in", "on", "near", "under"};
const std::vector<std::string> kAdvs = {"today", "quickly", "often",
                                        "silently"};

struct Builder {
  std::vector<Token> words;
  std::vector<int> heads;
  std::vector<std::string> labels;

  int add(const std::string& form, const std::string& upos, int head,
          const std::string& label) {
    words.push_back(Token{form, upos});
    heads.push_back(head);
    labels.push_back(label);
    return static_cast<int>(words.size());  // 1-based token index
  }
};

const std::string& pick(const std::vector<std::string>& v,
                        std::mt19937_64& rng) {
  return v[rng() % v.size()];
}

// Emits an NP and returns the noun's index. Heads of earlier tokens point
// forward to the not-yet-added noun, so they are patched afterwards.
int emit_np(Builder& b, std::mt19937_64& rng, int noun_head,
            const std::string& noun_label) {
  int first = static_cast<int>(b.words.size()) + 1;
  int mods = 0;
  if (rng() % 2 == 0) {
    b.add(pick(kDets, rng), "DET", -1, "det");
    ++mods;
  }
  int adjs = static_cast<int>(rng() % 3);
  for (int a = 0; a < adjs; ++a) {
    b.add(pick(kAdjs, rng), "ADJ", -1, "amod");
    ++mods;
  }
  int noun = b.add(pick(kNouns, rng), "NOUN", noun_head, noun_label);
  for (int i = first; i < first + mods; ++i) b.heads[i - 1] = noun;
  return noun;
}

}  // namespace

TreebankDoc SynthGrammar::generate(int count) const {
  std::mt19937_64 rng(seed_);
  TreebankDoc doc;
  doc.provenance = "synthetic";
  for (int s = 0; s < count; ++s) {
    Builder b;
    // Subject NP's noun index is known only after emission; the verb comes
    // after it, so emit with a placeholder and patch.
    int subj = emit_np(b, rng, -1, "nsubj");
    int verb = b.add(pick(kVerbs, rng), "VERB", 0, "root");
    b.heads[subj - 1] = verb;
    int obj = emit_np(b, rng, verb, "obj");
    int attach = obj;  // prepositional phrases chain off the object
    int pps = static_cast<int>(rng() % 3);
    for (int p = 0; p < pps; ++p) {
      int adp = b.add(pick(kAdps, rng), "ADP", -1, "case");
      int noun = emit_np(b, rng, attach, "nmod");
      b.heads[adp - 1] = noun;
      attach = noun;
    }
    if (rng() % 3 == 0) b.add(pick(kAdvs, rng), "ADV", verb, "advmod");

    int n = static_cast<int>(b.words.size());
    DepTree tree = validate_tree(b.heads, b.labels, n);
    doc.entries.push_back(
        TreebankEntry{Sentence(std::move(b.words)), std::move(tree), {}});
  }
  return doc;
}

}  // namespace spanqa::testutil
