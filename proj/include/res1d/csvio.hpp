#ifndef RES1D_CSVIO_HPP
#define RES1D_CSVIO_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "res1d/types.hpp"

namespace res1d {

// RFC-4180 CSV, UTF-8, '.' decimal separator, 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path + " for writing");
  }

  static std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
  }
  static std::string num(int x) { return std::to_string(x); }
  static std::string num(long x) { return std::to_string(x); }
  static std::string num(unsigned long long x) { return std::to_string(x); }

  void header(const std::vector<std::string>& cols) { row(cols); }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << escape(cells[i]);
    }
    out_ << "\r\n";
  }

 private:
  static std::string escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += "\"\"";
      else q += c;
    }
    q += '"';
    return q;
  }

  std::ofstream out_;
};

}  // namespace res1d

#endif
