#include "cnb/matrix_io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cnb {

namespace {

Matrix matrix_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("matrix JSON parse error: ") + e.what());
  }
  if (!j.is_array()) throw std::runtime_error("matrix JSON must be an array of arrays");
  const int n = static_cast<int>(j.size());
  std::vector<double> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw std::runtime_error("matrix JSON rows must all have length equal to the row count");
    }
    for (const auto& v : row) {
      if (!v.is_number()) throw std::runtime_error("matrix JSON entries must be numbers");
      entries.push_back(v.get<double>());
    }
  }
  return Matrix(n, std::move(entries));
}

Matrix matrix_from_plain_text(const std::string& text) {
  std::istringstream in(text);
  int n = 0;
  if (!(in >> n) || n < 0) throw std::runtime_error("matrix text must start with the dimension");
  std::vector<double> entries(static_cast<size_t>(n) * n);
  for (auto& v : entries) {
    if (!(in >> v)) throw std::runtime_error("matrix text: expected " + std::to_string(n * n) + " entries");
  }
  double extra;
  if (in >> extra) throw std::runtime_error("matrix text: trailing entries beyond n*n");
  return Matrix(n, std::move(entries));
}

}  // namespace

Matrix parse_matrix(const std::string& text) {
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '[') return matrix_from_json_text(text);
    break;
  }
  return matrix_from_plain_text(text);
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix_text(const Matrix& m) {
  const int n = m.dim();
  std::string out = std::to_string(n) + "\n";
  char num[64];
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(num, sizeof num, "%.17g", m(i, j));
      out += num;
      out += (j + 1 == n) ? '\n' : ' ';
    }
  }
  return out;
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write matrix file: " + path);
  out << format_matrix_text(m);
}

}  // namespace cnb
