#include "mipsched/mps.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mipsched {

MpsError::MpsError(MpsErrorKind kind, int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what),
      kind_(kind), line_(line) {}

namespace {

enum class Section { None, Name, ObjSense, Rows, Columns, Rhs, Ranges, Bounds, End };

std::optional<Section> section_keyword(const std::string& word) {
  static const std::map<std::string, Section> keywords = {
      {"NAME", Section::Name},       {"OBJSENSE", Section::ObjSense},
      {"ROWS", Section::Rows},       {"COLUMNS", Section::Columns},
      {"RHS", Section::Rhs},         {"RANGES", Section::Ranges},
      {"BOUNDS", Section::Bounds},   {"ENDATA", Section::End}};
  auto it = keywords.find(word);
  if (it == keywords.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

// Row index sentinels in the name table.
constexpr int kObjectiveRow = -1;
constexpr int kFreeRow = -2;

class Reader {
public:
  MipModel read(std::string_view text) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      ++line_no_;
      handle(line);
      if (section_ == Section::End) break;
      pos = end + 1;
    }
    if (!seen_rows_) fail(MpsErrorKind::MalformedSection, "missing ROWS section");
    if (!seen_columns_) fail(MpsErrorKind::MalformedSection, "missing COLUMNS section");
    if (section_ != Section::End) fail(MpsErrorKind::MalformedSection, "missing ENDATA");
    return finish();
  }

private:
  [[noreturn]] void fail(MpsErrorKind kind, const std::string& what) const {
    throw MpsError(kind, line_no_, what);
  }

  double number(const std::string& token) const {
    try {
      std::size_t used = 0;
      double v = std::stod(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      return v;
    } catch (const std::exception&) {
      fail(MpsErrorKind::MalformedSection, "expected a number, got '" + token + "'");
    }
  }

  int row_index(const std::string& name) const {
    auto it = row_lookup_.find(name);
    if (it == row_lookup_.end())
      fail(MpsErrorKind::UnknownRowReference, "unknown row '" + name + "'");
    return it->second;
  }

  void handle(std::string_view line) {
    if (line.empty() || line.front() == '*') return;
    auto tokens = split(line);
    if (tokens.empty()) return;
    const bool header = !std::isspace(static_cast<unsigned char>(line.front()));
    if (header) {
      if (auto sec = section_keyword(tokens[0])) {
        enter(*sec, tokens);
        return;
      }
      if (section_ != Section::ObjSense)
        fail(MpsErrorKind::MalformedSection, "unknown section '" + tokens[0] + "'");
    }
    switch (section_) {
      case Section::None:
      case Section::Name:
        fail(MpsErrorKind::MalformedSection, "data line outside a section");
      case Section::ObjSense: objsense(tokens[0]); break;
      case Section::Rows: row_line(tokens); break;
      case Section::Columns: column_line(tokens); break;
      case Section::Rhs: rhs_line(tokens); break;
      case Section::Ranges: range_line(tokens); break;
      case Section::Bounds: bound_line(tokens); break;
      case Section::End: break;
    }
  }

  void enter(Section sec, const std::vector<std::string>& tokens) {
    auto require_after = [&](bool ok, const char* what) {
      if (!ok) fail(MpsErrorKind::MalformedSection, what);
    };
    switch (sec) {
      case Section::Name:
        model_.name = tokens.size() > 1 ? tokens[1] : "";
        break;
      case Section::ObjSense:
        if (tokens.size() > 1) objsense(tokens[1]);
        break;
      case Section::Rows: require_after(!seen_rows_, "duplicate ROWS section"); seen_rows_ = true; break;
      case Section::Columns:
        require_after(seen_rows_, "COLUMNS before ROWS");
        require_after(!seen_columns_, "duplicate COLUMNS section");
        seen_columns_ = true;
        break;
      case Section::Rhs:
      case Section::Ranges:
      case Section::Bounds:
        require_after(seen_columns_, "section before COLUMNS");
        break;
      case Section::End:
      case Section::None:
        break;
    }
    section_ = sec;
  }

  void objsense(const std::string& word) {
    if (word == "MAX" || word == "MAXIMIZE") maximize_ = true;
    else if (word == "MIN" || word == "MINIMIZE") maximize_ = false;
    else fail(MpsErrorKind::MalformedSection, "bad OBJSENSE '" + word + "'");
  }

  void row_line(const std::vector<std::string>& t) {
    if (t.size() != 2) fail(MpsErrorKind::MalformedSection, "ROWS line needs sense and name");
    if (row_lookup_.count(t[1]))
      fail(MpsErrorKind::MalformedSection, "duplicate row '" + t[1] + "'");
    const std::string& s = t[0];
    if (s == "N") {
      if (!have_objective_) {
        have_objective_ = true;
        model_.objective_name = t[1];
        row_lookup_[t[1]] = kObjectiveRow;
      } else {
        row_lookup_[t[1]] = kFreeRow;
      }
      return;
    }
    RowSense sense;
    if (s == "L") sense = RowSense::LessEqual;
    else if (s == "G") sense = RowSense::GreaterEqual;
    else if (s == "E") sense = RowSense::Equal;
    else fail(MpsErrorKind::MalformedSection, "bad row sense '" + s + "'");
    row_lookup_[t[1]] = static_cast<int>(senses_.size());
    senses_.push_back(sense);
    row_names_.push_back(t[1]);
  }

  void column_line(const std::vector<std::string>& t) {
    if (t.size() >= 3 && t[1] == "'MARKER'") {
      if (t[2] == "'INTORG'") in_integer_block_ = true;
      else if (t[2] == "'INTEND'") in_integer_block_ = false;
      else fail(MpsErrorKind::MalformedSection, "bad marker " + t[2]);
      return;
    }
    if (t.size() != 3 && t.size() != 5)
      fail(MpsErrorKind::MalformedSection, "COLUMNS line needs 3 or 5 fields");
    int col;
    auto it = col_lookup_.find(t[0]);
    if (it == col_lookup_.end()) {
      col = static_cast<int>(col_names_.size());
      col_lookup_[t[0]] = col;
      col_names_.push_back(t[0]);
      cost_.push_back(0.0);
      integer_.push_back(in_integer_block_);
    } else {
      col = it->second;
    }
    for (std::size_t k = 1; k + 1 < t.size(); k += 2) {
      const int r = row_index(t[k]);
      const double v = number(t[k + 1]);
      if (!entries_seen_.insert({col, r}).second)
        fail(MpsErrorKind::DuplicateColumnEntry,
             "column '" + t[0] + "' lists row '" + t[k] + "' twice");
      if (r == kObjectiveRow) cost_[col] = v;
      else if (r >= 0) entries_.push_back({r, col, v});
    }
  }

  // Returns the offset of the first (row, value) pair; set names optional.
  std::size_t pair_start(const std::vector<std::string>& t) const {
    if (t.size() < 2) fail(MpsErrorKind::MalformedSection, "short data line");
    return t.size() % 2 == 1 ? 1 : 0;
  }

  void rhs_line(const std::vector<std::string>& t) {
    for (std::size_t k = pair_start(t); k + 1 < t.size(); k += 2) {
      const int r = row_index(t[k]);
      if (r >= 0) rhs_[r] = number(t[k + 1]);
    }
  }

  void range_line(const std::vector<std::string>& t) {
    for (std::size_t k = pair_start(t); k + 1 < t.size(); k += 2) {
      const int r = row_index(t[k]);
      if (r >= 0) ranges_[r] = number(t[k + 1]);
    }
  }

  void bound_line(const std::vector<std::string>& t) {
    if (t.size() < 2) fail(MpsErrorKind::MalformedSection, "short BOUNDS line");
    const std::string& type = t[0];
    const bool valued = type == "UP" || type == "LO" || type == "FX" || type == "LI" || type == "UI";
    const bool bare = type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (!valued && !bare) fail(MpsErrorKind::MalformedSection, "bad bound type '" + type + "'");
    std::size_t col_pos = 2;
    if (col_lookup_.count(t[1]) &&
        (t.size() == 2 || (t.size() == 3 && (valued || !col_lookup_.count(t[2])))))
      col_pos = 1;
    if (col_pos >= t.size()) fail(MpsErrorKind::MalformedSection, "BOUNDS line lacks a column");
    auto it = col_lookup_.find(t[col_pos]);
    if (it == col_lookup_.end())
      fail(MpsErrorKind::MalformedSection, "BOUNDS references unknown column '" + t[col_pos] + "'");
    const int j = it->second;
    double v = 0.0;
    if (valued) {
      if (col_pos + 1 >= t.size()) fail(MpsErrorKind::MalformedSection, "bound needs a value");
      v = number(t[col_pos + 1]);
    }
    Bound& b = bounds_[j];
    if (type == "UP" || type == "UI") {
      b.upper = v;
      if (v < 0 && !b.lower) b.lower = -kInf;
      if (type == "UI") integer_[j] = true;
    } else if (type == "LO" || type == "LI") {
      b.lower = v;
      if (type == "LI") integer_[j] = true;
    } else if (type == "FX") {
      b.lower = b.upper = v;
    } else if (type == "FR") {
      b.lower = -kInf;
      b.upper = kInf;
    } else if (type == "MI") {
      b.lower = -kInf;
    } else if (type == "PL") {
      b.upper = kInf;
    } else if (type == "BV") {
      b.lower = 0.0;
      b.upper = 1.0;
      integer_[j] = true;
    }
  }

  MipModel finish() {
    const int n = static_cast<int>(col_names_.size());
    for (int j = 0; j < n; ++j) {
      double lo = 0.0;
      double up = kInf;
      const Bound& b = bounds_[j];
      if (b.lower) lo = *b.lower;
      if (b.upper) up = *b.upper;
      else if (integer_[j]) up = (lo <= 1.0) ? 1.0 : kInf;
      model_.add_variable(maximize_ ? -cost_[j] : cost_[j], lo, up, integer_[j], col_names_[j]);
    }
    if (maximize_) model_.negated_objective = true;
    std::vector<SparseRow> rows(senses_.size());
    for (const auto& e : entries_) rows[e.row].push_back({e.col, e.value});
    struct Extra {
      SparseRow row;
      RowSense sense;
      double rhs;
      std::string name;
    };
    std::vector<Extra> extras;
    for (std::size_t i = 0; i < senses_.size(); ++i) {
      RowSense sense = senses_[i];
      double b = rhs_.count(static_cast<int>(i)) ? rhs_[static_cast<int>(i)] : 0.0;
      auto rit = ranges_.find(static_cast<int>(i));
      if (rit != ranges_.end() && rit->second != 0.0) {
        const double r = rit->second;
        const std::string name = row_names_[i] + "_rng";
        switch (sense) {
          case RowSense::LessEqual: extras.push_back({rows[i], RowSense::GreaterEqual, b - std::abs(r), name}); break;
          case RowSense::GreaterEqual: extras.push_back({rows[i], RowSense::LessEqual, b + std::abs(r), name}); break;
          case RowSense::Equal:
            if (r > 0) {
              sense = RowSense::GreaterEqual;
              extras.push_back({rows[i], RowSense::LessEqual, b + r, name});
            } else {
              sense = RowSense::LessEqual;
              extras.push_back({rows[i], RowSense::GreaterEqual, b + r, name});
            }
            break;
        }
      }
      model_.add_row(std::move(rows[i]), sense, b, row_names_[i]);
    }
    for (auto& e : extras) model_.add_row(std::move(e.row), e.sense, e.rhs, e.name);
    try {
      model_.validate();
    } catch (const std::invalid_argument& ex) {
      fail(MpsErrorKind::MalformedSection, ex.what());
    }
    return std::move(model_);
  }

  struct Entry {
    int row;
    int col;
    double value;
  };
  struct Bound {
    std::optional<double> lower;
    std::optional<double> upper;
  };

  MipModel model_;
  Section section_ = Section::None;
  int line_no_ = 0;
  bool seen_rows_ = false;
  bool seen_columns_ = false;
  bool have_objective_ = false;
  bool maximize_ = false;
  bool in_integer_block_ = false;
  std::unordered_map<std::string, int> row_lookup_;
  std::vector<RowSense> senses_;
  std::vector<std::string> row_names_;
  std::unordered_map<std::string, int> col_lookup_;
  std::vector<std::string> col_names_;
  std::vector<double> cost_;
  std::vector<bool> integer_;
  std::vector<Entry> entries_;
  std::set<std::pair<int, int>> entries_seen_;
  std::map<int, double> rhs_;
  std::map<int, double> ranges_;
  std::map<int, Bound> bounds_;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* sense_code(RowSense s) {
  switch (s) {
    case RowSense::LessEqual: return "L";
    case RowSense::GreaterEqual: return "G";
    case RowSense::Equal: return "E";
  }
  return "E";
}

}  // namespace

MipModel parse_mps(std::string_view text) {
  return Reader{}.read(text);
}

std::string write_mps(const MipModel& model) {
  std::ostringstream out;
  out << "NAME " << model.name << "\n";
  const double sign = model.negated_objective ? -1.0 : 1.0;
  if (model.negated_objective) out << "OBJSENSE\n    MAX\n";
  out << "ROWS\n N  " << model.objective_name << "\n";
  for (int i = 0; i < model.num_rows(); ++i)
    out << " " << sense_code(model.row_senses[i]) << "  " << model.row_names[i] << "\n";

  std::vector<std::vector<std::pair<int, double>>> columns(model.num_vars());
  for (int i = 0; i < model.num_rows(); ++i)
    for (const auto& e : model.rows[i]) columns[e.col].push_back({i, e.value});

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.is_integer[j] != in_int) {
      out << "    M" << marker++ << "  'MARKER'  " << (model.is_integer[j] ? "'INTORG'" : "'INTEND'")
          << "\n";
      in_int = model.is_integer[j];
    }
    const auto& name = model.var_names[j];
    if (model.objective[j] != 0.0 || columns[j].empty())
      out << "    " << name << "  " << model.objective_name << "  " << fmt(sign * model.objective[j]) << "\n";
    for (const auto& [i, v] : columns[j])
      out << "    " << name << "  " << model.row_names[i] << "  " << fmt(v) << "\n";
  }
  if (in_int) out << "    M" << marker << "  'MARKER'  'INTEND'\n";

  out << "RHS\n";
  for (int i = 0; i < model.num_rows(); ++i)
    if (model.rhs[i] != 0.0) out << "    RHS  " << model.row_names[i] << "  " << fmt(model.rhs[i]) << "\n";

  out << "BOUNDS\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const double lo = model.lower[j];
    const double up = model.upper[j];
    const auto& name = model.var_names[j];
    const bool integer = model.is_integer[j];
    if (lo == up) {
      out << " FX BND  " << name << "  " << fmt(lo) << "\n";
      continue;
    }
    if (lo == -kInf) out << " MI BND  " << name << "\n";
    else if (lo != 0.0 || integer) out << " LO BND  " << name << "  " << fmt(lo) << "\n";
    if (up == kInf) {
      if (integer) out << " PL BND  " << name << "\n";
    } else {
      out << " UP BND  " << name << "  " << fmt(up) << "\n";
    }
  }
  out << "ENDATA\n";
  return out.str();
}

}  // namespace mipsched
