#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

// Deterministic CSV writing: fixed column order, 17 significant digits for
// floating values, '\n' line endings.

namespace torcli {

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
  }

  void header(const std::vector<std::string>& columns) {
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out_ << ',';
      out_ << columns[i];
    }
    out_ << '\n';
  }

  void field(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    sep();
    out_ << buf;
  }
  void field(int v) {
    sep();
    out_ << v;
  }
  void field(const std::string& v) {
    sep();
    out_ << v;
  }
  void empty() { sep(); }

  void end_row() {
    out_ << '\n';
    first_ = true;
  }

 private:
  void sep() {
    if (!first_) out_ << ',';
    first_ = false;
  }
  std::ofstream out_;
  bool first_ = true;
};

}  // namespace torcli
