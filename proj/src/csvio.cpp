#include "gpbose/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gpbose/errors.hpp"

namespace gpbose {

std::string format_sig17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ",";
    out += header[i];
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += row[i];
    }
    out += "\n";
  }
  return out;
}

std::string render_coo(const SparseMatrix& m) {
  std::string out;
  for (int row = 0; row < m.outerSize(); ++row)
    for (SparseMatrix::InnerIterator it(m, row); it; ++it) {
      out += std::to_string(it.row());
      out += " ";
      out += std::to_string(it.col());
      out += " ";
      out += format_sig17(it.value().real());
      out += " ";
      out += format_sig17(it.value().imag());
      out += "\n";
    }
  return out;
}

SparseMatrix parse_coo(const std::string& text, long rows, long cols) {
  std::vector<Eigen::Triplet<Complex>> trip;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    long r, c;
    double re, im;
    if (!(ls >> r >> c >> re >> im)) throw Error("parse_coo: malformed line: " + line);
    trip.emplace_back(r, c, Complex(re, im));
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

}  // namespace gpbose
