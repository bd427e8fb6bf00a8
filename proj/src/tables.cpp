#include "spanqa/tables.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace spanqa {

double log_normalize(std::vector<double>& row) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : row) hi = std::max(hi, v);
  double sum = 0.0;
  for (double v : row) sum += std::exp(v - hi);
  double lz = hi + std::log(sum);
  for (double& v : row) v -= lz;
  return lz;
}

SpanTables::SpanTables(int n, std::vector<double> start_lp,
                       std::vector<double> end_lp)
    : n_(n), start_(std::move(start_lp)), end_(std::move(end_lp)) {
  std::size_t want = static_cast<std::size_t>(n + 1) * n;
  if (start_.size() != want || end_.size() != want) {
    throw DimensionError("span table size mismatch for n=" +
                         std::to_string(n));
  }
}

int SpanTables::idx(int i, int j) const {
  if (i < 0 || i > n_ || j < 1 || j > n_) {
    throw IndexError("span table cell (" + std::to_string(i) + ", " +
                     std::to_string(j) + ") outside bounds, n=" +
                     std::to_string(n_));
  }
  return i * n_ + (j - 1);
}

LinkRows::LinkRows(SubtreeSpan query, int n, int num_labels)
    : query_(query), n_(n), num_labels_(num_labels) {
  parent_root_.assign(n + 1, 0.0);
  parent_start_.assign(n + 1, 0.0);
  parent_end_.assign(n + 1, 0.0);
  parent_label_.assign(static_cast<std::size_t>(n + 1) * num_labels, 0.0);
  child_root_.assign(n, 0.0);
  child_start_.assign(n, 0.0);
  child_end_.assign(n, 0.0);
  child_label_.assign(static_cast<std::size_t>(n) * num_labels, 0.0);
}

int LinkRows::argmax_parent_label(int t) const {
  int best = 0;
  for (int l = 1; l < num_labels_; ++l) {
    if (parent_label_lp(t, l) > parent_label_lp(t, best)) best = l;
  }
  return best;
}

const LinkRows& ScoreTables::rows_for(const SubtreeSpan& query) const {
  auto it = link.find(query);
  if (it == link.end()) {
    throw DimensionError("no link rows for query span (" +
                         std::to_string(query.root) + ", " +
                         std::to_string(query.start) + ", " +
                         std::to_string(query.end) + ")");
  }
  return it->second;
}

int ScoreTables::label_id(const std::string& label) const {
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == label) return i;
  }
  for (int i = 0; i < static_cast<int>(labels.size()); ++i) {
    if (labels[i] == kUnkLabel) return i;
  }
  throw DimensionError("label set lacks the reserved unknown label");
}

namespace {

void write_block(std::ostream& out, const std::string& name,
                 const std::vector<double>& data, int rows, int cols) {
  if (static_cast<int>(data.size()) != rows * cols) {
    throw DimensionError("table " + name + " has " +
                         std::to_string(data.size()) + " cells, expected " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
  out << "table " << name << ' ' << rows << ' ' << cols << '\n';
  out << std::setprecision(17);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double v = data[static_cast<std::size_t>(r) * cols + c];
      if (!std::isfinite(v)) {
        throw FormatError("non-finite score in table " + name + " at row " +
                          std::to_string(r) + " col " + std::to_string(c));
      }
      out << v << (c + 1 == cols ? '\n' : ' ');
    }
  }
}

struct BlockReader {
  std::istream& in;
  std::string path;
  int lineno = 0;

  std::string next_line() {
    std::string line;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return line;
    }
    throw FormatError(path + ": unexpected end of file at line " +
                      std::to_string(lineno));
  }

  std::vector<double> read_table(const std::string& want_name, int want_rows,
                                 int want_cols) {
    std::istringstream hdr(next_line());
    std::string kw, name;
    int rows = -1, cols = -1;
    hdr >> kw >> name >> rows >> cols;
    if (kw != "table" || name != want_name) {
      throw FormatError(path + ": expected 'table " + want_name +
                        "' header at line " + std::to_string(lineno));
    }
    if (rows != want_rows || cols != want_cols) {
      throw DimensionError(path + ": table " + name + " is " +
                           std::to_string(rows) + "x" + std::to_string(cols) +
                           ", expected " + std::to_string(want_rows) + "x" +
                           std::to_string(want_cols) + " at line " +
                           std::to_string(lineno));
    }
    std::vector<double> data;
    data.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r) {
      std::istringstream row(next_line());
      for (int c = 0; c < cols; ++c) {
        double v;
        if (!(row >> v)) {
          throw FormatError(path + ": short row in table " + name +
                            " at line " + std::to_string(lineno) + " col " +
                            std::to_string(c));
        }
        if (!std::isfinite(v)) {
          throw FormatError(path + ": non-finite score in table " + name +
                            " at line " + std::to_string(lineno));
        }
        data.push_back(v);
      }
      std::string trailing;
      if (row >> trailing) {
        throw FormatError(path + ": excess cell in table " + name +
                          " at line " + std::to_string(lineno));
      }
    }
    return data;
  }
};

}  // namespace

void save_tables(const std::vector<ScoreTables>& tables,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "SPANQA-TABLES v1\n";
  const std::vector<std::string>* labels =
      tables.empty() ? nullptr : &tables.front().labels;
  out << "labels";
  if (labels) {
    out << ' ' << labels->size();
    for (const auto& l : *labels) out << ' ' << l;
  } else {
    out << " 0";
  }
  out << '\n';
  out << "sentences " << tables.size() << '\n';
  for (std::size_t s = 0; s < tables.size(); ++s) {
    const ScoreTables& t = tables[s];
    if (labels && t.labels != *labels) {
      throw DimensionError("all tables in one file must share a label set");
    }
    int n = t.n();
    int L = static_cast<int>(t.labels.size());
    out << "sentence " << s << " n " << n << " queries " << t.link.size()
        << '\n';
    write_block(out, "start", t.span.start_data(), n + 1, n);
    write_block(out, "end", t.span.end_data(), n + 1, n);
    for (const auto& [span, rows] : t.link) {
      out << "query " << span.root << ' ' << span.start << ' ' << span.end
          << '\n';
      write_block(out, "parent_root", rows.parent_root(), 1, n + 1);
      write_block(out, "parent_start", rows.parent_start(), 1, n + 1);
      write_block(out, "parent_end", rows.parent_end(), 1, n + 1);
      write_block(out, "parent_label", rows.parent_label(), n + 1, L);
      write_block(out, "child_root", rows.child_root(), 1, n);
      write_block(out, "child_start", rows.child_start(), 1, n);
      write_block(out, "child_end", rows.child_end(), 1, n);
      write_block(out, "child_label", rows.child_label(), n, L);
    }
    out << "end\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<ScoreTables> load_tables(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  BlockReader r{in, path};

  if (r.next_line() != "SPANQA-TABLES v1") {
    throw FormatError(path + ": missing SPANQA-TABLES v1 header");
  }
  std::istringstream lab(r.next_line());
  std::string kw;
  int num_labels = -1;
  lab >> kw >> num_labels;
  if (kw != "labels" || num_labels < 0) {
    throw FormatError(path + ": malformed labels line");
  }
  std::vector<std::string> labels(num_labels);
  for (auto& l : labels) {
    if (!(lab >> l)) throw FormatError(path + ": short labels line");
  }
  std::istringstream cnt(r.next_line());
  int num_sentences = -1;
  cnt >> kw >> num_sentences;
  if (kw != "sentences" || num_sentences < 0) {
    throw FormatError(path + ": malformed sentences line");
  }

  std::vector<ScoreTables> tables;
  tables.reserve(num_sentences);
  for (int s = 0; s < num_sentences; ++s) {
    std::istringstream hdr(r.next_line());
    std::string kw2, kw3, kw4;
    int idx = -1, n = -1;
    std::size_t queries = 0;
    hdr >> kw2 >> idx >> kw3 >> n >> kw4 >> queries;
    if (kw2 != "sentence" || kw3 != "n" || kw4 != "queries" || n < 1) {
      throw FormatError(path + ": malformed sentence header at line " +
                        std::to_string(r.lineno));
    }
    ScoreTables t;
    t.labels = labels;
    t.span = SpanTables(n, r.read_table("start", n + 1, n),
                        r.read_table("end", n + 1, n));
    for (std::size_t q = 0; q < queries; ++q) {
      std::istringstream qh(r.next_line());
      std::string qkw;
      SubtreeSpan span;
      qh >> qkw >> span.root >> span.start >> span.end;
      if (qkw != "query") {
        throw FormatError(path + ": expected query header at line " +
                          std::to_string(r.lineno));
      }
      LinkRows rows(span, n, num_labels);
      rows.parent_root() = r.read_table("parent_root", 1, n + 1);
      rows.parent_start() = r.read_table("parent_start", 1, n + 1);
      rows.parent_end() = r.read_table("parent_end", 1, n + 1);
      rows.parent_label() = r.read_table("parent_label", n + 1, num_labels);
      rows.child_root() = r.read_table("child_root", 1, n);
      rows.child_start() = r.read_table("child_start", 1, n);
      rows.child_end() = r.read_table("child_end", 1, n);
      rows.child_label() = r.read_table("child_label", n, num_labels);
      t.link.emplace(span, std::move(rows));
    }
    if (r.next_line() != "end") {
      throw FormatError(path + ": missing sentence terminator at line " +
                        std::to_string(r.lineno));
    }
    tables.push_back(std::move(t));
  }
  return tables;
}

}  // namespace spanqa
