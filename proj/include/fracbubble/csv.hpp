#pragma once

#include <sstream>
#include <string>
#include <vector>

namespace fracbubble {

// RFC-4180 style CSV assembly: fields containing commas, quotes or newlines
// are quoted, quotes doubled; rows end with \n.  Numeric formatting is fixed
// (max_digits10) so identical inputs serialize byte-identically.
class CsvWriter {
public:
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << escape(fields[i]);
    }
    out_ << '\n';
  }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

  std::string str() const { return out_.str(); }

private:
  static std::string escape(const std::string& f) {
    if (f.find_first_of(",\"\n\r") == std::string::npos) return f;
    std::string q = "\"";
    for (char c : f) {
      if (c == '"') q += "\"\"";
      else q += c;
    }
    q += "\"";
    return q;
  }
  std::ostringstream out_;
};

}  // namespace fracbubble
