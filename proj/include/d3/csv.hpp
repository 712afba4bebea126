// Comma-separated output: one header row per file, '\n' line endings,
// integers in exact decimal, high-precision reals at 20 significant digits.
#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "d3/real.hpp"

namespace d3::csv {

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& cols) { line(cols); }

  Writer& field(const std::string& s) { push(s); return *this; }
  Writer& field(std::uint64_t v) { push(std::to_string(v)); return *this; }
  Writer& field(std::int64_t v) { push(std::to_string(v)); return *this; }
  Writer& field(int v) { push(std::to_string(v)); return *this; }
  Writer& field(const Real& v) { push(v.str(20)); return *this; }

  void end_row() {
    for (std::size_t i = 0; i < row_.size(); ++i) {
      if (i) out_ << ',';
      out_ << row_[i];
    }
    out_ << '\n';
    row_.clear();
  }

 private:
  void push(std::string s) { row_.push_back(std::move(s)); }
  void line(const std::vector<std::string>& cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out_ << ',';
      out_ << cols[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
  std::vector<std::string> row_;
};

}  // namespace d3::csv
