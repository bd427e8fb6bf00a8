#ifndef SPANQA_CONLLU_H
#define SPANQA_CONLLU_H

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "spanqa/core.h"

namespace spanqa {

// One parsed treebank sentence. `extras` keeps the unconsumed CoNLL-U
// columns (LEMMA, XPOS, FEATS, DEPS, MISC) of each real token verbatim so
// writing reproduces them.
struct TreebankEntry {
  Sentence sentence;
  DepTree tree;
  // Per real token: {lemma, xpos, feats, deps, misc}.
  std::vector<std::array<std::string, 5>> extras;
};

struct TreebankDoc {
  std::vector<TreebankEntry> entries;
  std::string provenance;
  // One note per sentence repaired at ingestion (extra root children
  // re-attached to the first root child).
  std::vector<std::string> multi_root_warnings;

  int size() const { return static_cast<int>(entries.size()); }
  // Fraction of sentences whose tree is projective, in [0, 1].
  double projective_fraction() const;
};

// Parses ID/FORM/UPOS/HEAD/DEPREL; keeps remaining columns opaquely.
// Comment lines and multi-word token ranges (IDs like "1-2") as well as
// empty nodes (IDs like "1.1") are skipped. Multi-root sentences are
// repaired and recorded in multi_root_warnings. Throws ParseError.
TreebankDoc read_conllu(const std::string& path);
TreebankDoc read_conllu_stream(std::istream& in, const std::string& name);

// Like read_conllu, but sentences with missing or invalid HEAD/DEPREL
// columns get a left-branching chain tree instead of failing; useful for
// parsing inputs that carry no annotation.
TreebankDoc read_conllu_lenient(const std::string& path);

// Writes ten-column CoNLL-U; read_conllu(write_conllu(doc)) == doc on the
// consumed columns. Throws IoError.
void write_conllu(const TreebankDoc& doc, const std::string& path);
void write_conllu_stream(const TreebankDoc& doc, std::ostream& out);

// One training instance. Span targets exist only for projective trees;
// non-projective sentences contribute arcs and are flagged.
struct Instance {
  Sentence sentence;
  DepTree tree;
  std::optional<std::vector<SubtreeSpan>> spans;  // one per token 0..n
  std::vector<LabeledArc> arcs;                   // one per real token
  bool projective = false;
};

std::vector<Instance> make_instances(const TreebankDoc& doc);

}  // namespace spanqa

#endif  // SPANQA_CONLLU_H
