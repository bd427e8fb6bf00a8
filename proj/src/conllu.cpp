#include "spanqa/conllu.h"

#include <fstream>
#include <sstream>

namespace spanqa {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

struct RawToken {
  std::string form, upos, head, deprel;
  std::array<std::string, 5> extras;
  int line;
};

// Replaces unusable annotation with a left-branching chain.
void chain_fallback(std::vector<int>& heads, std::vector<std::string>& labels) {
  for (std::size_t i = 0; i < heads.size(); ++i) {
    heads[i] = static_cast<int>(i);
    labels[i] = i == 0 ? "root" : "dep";
  }
}

// Finishes one sentence block: validates indices, repairs multiple root
// attachments, and appends the entry.
void flush_sentence(std::vector<RawToken>& raw, int block_line,
                    TreebankDoc* doc, bool lenient) {
  if (raw.empty()) {
    throw ParseError("sentence block contains no token lines", block_line);
  }
  int n = static_cast<int>(raw.size());
  std::vector<Token> words;
  std::vector<int> heads;
  std::vector<std::string> labels;
  std::vector<std::array<std::string, 5>> extras;
  words.reserve(n);
  bool headless = false;
  for (int i = 0; i < n; ++i) {
    const RawToken& t = raw[i];
    int h = -1;
    if (is_integer(t.head)) h = std::stoi(t.head);
    if (h < 0 || h > n || h == i + 1) {
      if (!lenient) {
        throw ParseError("invalid HEAD '" + t.head + "' for token " +
                         std::to_string(i + 1), t.line);
      }
      headless = true;
      h = 0;
    }
    words.push_back(Token{t.form, t.upos});
    heads.push_back(h);
    labels.push_back(t.deprel);
    extras.push_back(t.extras);
  }
  if (headless) chain_fallback(heads, labels);

  // Single-root repair: extra root children hang off the first root child.
  int first_root = -1;
  int repaired = 0;
  for (int i = 1; i <= n; ++i) {
    if (heads[i - 1] != 0) continue;
    if (first_root < 0) {
      first_root = i;
    } else {
      heads[i - 1] = first_root;
      ++repaired;
    }
  }
  if (repaired > 0) {
    doc->multi_root_warnings.push_back(
        "sentence " + std::to_string(doc->entries.size() + 1) + " near line " +
        std::to_string(block_line) + ": re-attached " +
        std::to_string(repaired) + " extra root child(ren) to token " +
        std::to_string(first_root));
  }

  DepTree tree;
  try {
    tree = validate_tree(heads, labels, n);
  } catch (const Error& e) {
    if (!lenient) {
      throw ParseError(std::string("invalid tree: ") + e.what(), block_line);
    }
    chain_fallback(heads, labels);
    tree = validate_tree(heads, labels, n);
  }
  doc->entries.push_back(
      TreebankEntry{Sentence(std::move(words)), std::move(tree),
                    std::move(extras)});
  raw.clear();
}

}  // namespace

double TreebankDoc::projective_fraction() const {
  if (entries.empty()) return 1.0;
  int proj = 0;
  for (const auto& e : entries) {
    if (is_projective(e.tree)) ++proj;
  }
  return static_cast<double>(proj) / entries.size();
}

namespace {

TreebankDoc read_stream(std::istream& in, const std::string& name,
                        bool lenient) {
  TreebankDoc doc;
  doc.provenance = name;
  std::vector<RawToken> raw;
  std::string line;
  int lineno = 0;
  int block_line = 0;   // first line of the current block
  bool in_block = false;
  int expected_id = 1;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (in_block) {
        flush_sentence(raw, block_line, &doc, lenient);
        in_block = false;
        expected_id = 1;
      }
      continue;
    }
    if (!in_block) {
      in_block = true;
      block_line = lineno;
    }
    if (line[0] == '#') continue;  // comment

    std::vector<std::string> f = split_tabs(line);
    if (f.size() != 10) {
      throw ParseError("expected 10 tab-separated columns, got " +
                       std::to_string(f.size()), lineno);
    }
    const std::string& id = f[0];
    if (id.find('-') != std::string::npos) continue;  // multi-word range
    if (id.find('.') != std::string::npos) continue;  // empty node
    if (!is_integer(id)) {
      throw ParseError("malformed token ID '" + id + "'", lineno);
    }
    if (std::stoi(id) != expected_id) {
      throw ParseError("token ID " + id + " out of order (expected " +
                       std::to_string(expected_id) + ")", lineno);
    }
    ++expected_id;
    raw.push_back(RawToken{f[1], f[3], f[6], f[7],
                           {f[2], f[4], f[5], f[8], f[9]}, lineno});
  }
  if (in_block) flush_sentence(raw, block_line, &doc, lenient);
  return doc;
}

}  // namespace

TreebankDoc read_conllu_stream(std::istream& in, const std::string& name) {
  return read_stream(in, name, false);
}

TreebankDoc read_conllu(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_stream(in, path, false);
}

TreebankDoc read_conllu_lenient(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_stream(in, path, true);
}

void write_conllu_stream(const TreebankDoc& doc, std::ostream& out) {
  for (const auto& entry : doc.entries) {
    int n = entry.sentence.real_size();
    for (int i = 1; i <= n; ++i) {
      const auto& ex = entry.extras.empty() ? std::array<std::string, 5>{
          "_", "_", "_", "_", "_"} : entry.extras[i - 1];
      out << i << '\t' << entry.sentence.form(i) << '\t' << ex[0] << '\t'
          << entry.sentence.upos(i) << '\t' << ex[1] << '\t' << ex[2] << '\t'
          << entry.tree.head(i) << '\t' << entry.tree.label(i) << '\t'
          << ex[3] << '\t' << ex[4] << '\n';
    }
    out << '\n';
  }
}

void write_conllu(const TreebankDoc& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_conllu_stream(doc, out);
  if (!out) throw IoError("write failed: " + path);
}

std::vector<Instance> make_instances(const TreebankDoc& doc) {
  std::vector<Instance> instances;
  instances.reserve(doc.entries.size());
  for (const auto& entry : doc.entries) {
    Instance inst{entry.sentence, entry.tree, std::nullopt, {}, false};
    int n = entry.sentence.real_size();
    for (int i = 1; i <= n; ++i) {
      inst.arcs.push_back(
          LabeledArc{entry.tree.head(i), i, entry.tree.label(i)});
    }
    if (is_projective(entry.tree)) {
      inst.spans = gold_spans(entry.tree, entry.sentence);
      inst.projective = true;
    }
    instances.push_back(std::move(inst));
  }
  return instances;
}

}  // namespace spanqa
