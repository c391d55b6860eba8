#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "mipsched/model.hpp"

namespace mipsched {

enum class MpsErrorKind { MalformedSection, UnknownRowReference, DuplicateColumnEntry };

class MpsError : public std::runtime_error {
public:
  MpsError(MpsErrorKind kind, int line, const std::string& what);
  MpsErrorKind kind() const { return kind_; }
  int line() const { return line_; }

private:
  MpsErrorKind kind_;
  int line_;
};

/// Reads the NAME/ROWS/COLUMNS/RHS/RANGES/BOUNDS/ENDATA subset, fixed or
/// free format (names must not contain blanks). OBJSENSE MAX is accepted
/// and negated into minimize form.
MipModel parse_mps(std::string_view text);

/// Writes free-format MPS that parse_mps reads back to an identical model.
std::string write_mps(const MipModel& model);

}  // namespace mipsched
