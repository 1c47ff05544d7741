#pragma once

#include <ostream>
#include <string>
#include <tuple>

namespace contracheck {

// A concrete position in an input file. Line and column are 1-based;
// column counts bytes from the start of the line.
struct SourceLoc {
  std::string file;
  int line = 0;
  int column = 0;

  bool operator==(const SourceLoc& o) const {
    return line == o.line && column == o.column && file == o.file;
  }
  bool operator!=(const SourceLoc& o) const { return !(*this == o); }
  bool operator<(const SourceLoc& o) const {
    return std::tie(file, line, column) < std::tie(o.file, o.line, o.column);
  }

  std::string to_string() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }
};

inline std::ostream& operator<<(std::ostream& os, const SourceLoc& l) {
  return os << l.to_string();
}

}  // namespace contracheck
