#include "qdemon/cli/matrix_file.hpp"

#include <cctype>
#include <cmath>
#include <optional>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qdemon/cli/state_spec.hpp"

namespace qdemon::cli {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

bool skippable(std::string_view line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Parses "re+imj" / "re-imj" (or a bare real) occupying the whole token.
bool parse_entry(std::string_view tok, cplx& out) {
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  double re = 0.0;
  auto r = std::from_chars(begin, end, re);
  if (r.ec != std::errc{}) return false;
  if (r.ptr == end) {
    out = cplx{re, 0.0};
    return true;
  }
  const char* p = r.ptr;
  if (*p != '+' && *p != '-') return false;
  const bool negative = *p == '-';
  ++p;
  double im = 0.0;
  auto i = std::from_chars(p, end, im);
  if (i.ec != std::errc{} || i.ptr + 1 != end || *i.ptr != 'j') return false;
  out = cplx{re, negative ? -im : im};
  return true;
}

}  // namespace

DensityMatrix parse_matrix(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::optional<SubsystemLayout> layout;
  CMatrix m;
  std::size_t row = 0;
  std::size_t dim = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (skippable(line)) continue;

    // tokenize with columns
    std::vector<std::pair<std::string_view, std::size_t>> tokens;
    for (std::size_t c = 0; c < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[c]))) {
        ++c;
        continue;
      }
      const std::size_t start = c;
      while (c < line.size() && !std::isspace(static_cast<unsigned char>(line[c]))) ++c;
      tokens.emplace_back(line.substr(start, c - start), start + 1);
    }

    if (!layout) {
      std::size_t n = 0;
      bool have_n = false;
      std::vector<std::string> labels;
      for (const auto& [tok, col] : tokens) {
        if (tok.starts_with("qubits=")) {
          const auto v = tok.substr(7);
          auto r = std::from_chars(v.data(), v.data() + v.size(), n);
          if (r.ec != std::errc{} || r.ptr != v.data() + v.size()) fail(line_no, col + 7, "invalid qubit count");
          if (n < 1 || n > kMaxQubits) fail(line_no, col + 7, "qubit count out of range");
          have_n = true;
        } else if (tok.starts_with("labels=")) {
          std::string_view rest = tok.substr(7);
          while (!rest.empty()) {
            const auto comma = rest.find(',');
            labels.emplace_back(rest.substr(0, comma));
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
          }
        } else {
          fail(line_no, col, "expected header 'qubits=<n>'");
        }
      }
      if (!have_n) fail(line_no, 1, "missing 'qubits=<n>' header");
      if (!labels.empty() && labels.size() != n) fail(line_no, 1, "label count does not match qubit count");
      layout = labels.empty() ? SubsystemLayout::qubits(n) : SubsystemLayout(labels);
      dim = layout->dimension();
      m = CMatrix::Zero(dim, dim);
      continue;
    }

    if (row >= dim) fail(line_no, 1, "more than 2^n matrix rows");
    if (tokens.size() != dim) {
      fail(line_no, tokens.size() > dim ? tokens[dim].second : line.size() + 1,
           "expected " + std::to_string(dim) + " entries, found " + std::to_string(tokens.size()));
    }
    for (std::size_t k = 0; k < dim; ++k) {
      cplx v;
      if (!parse_entry(tokens[k].first, v)) {
        fail(line_no, tokens[k].second, "malformed entry '" + std::string(tokens[k].first) + "' (expected re+imj)");
      }
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(k)) = v;
    }
    ++row;
  }
  if (!layout) fail(line_no, 1, "empty matrix file");
  if (row != dim) fail(line_no, 1, "expected " + std::to_string(dim) + " matrix rows, found " + std::to_string(row));
  return DensityMatrix(*layout, std::move(m));
}

DensityMatrix load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open state file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

std::string format_matrix(const DensityMatrix& rho) {
  std::string out = "qubits=" + std::to_string(rho.qubits()) + " labels=";
  for (std::size_t k = 0; k < rho.qubits(); ++k) out += (k ? "," : "") + rho.layout().label(k);
  out += '\n';
  const auto& m = rho.matrix();
  char buf[96];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double im = m(i, j).imag();
      std::snprintf(buf, sizeof buf, "%s%.17g%c%.17gj", j ? " " : "", m(i, j).real(), std::signbit(im) ? '-' : '+',
                    std::abs(im));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace qdemon::cli
