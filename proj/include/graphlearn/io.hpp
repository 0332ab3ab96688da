#pragma once

// Text formats.
//
// Edge list:                         Dense matrix CSV:
//   m=<node count>                     one row per line,
//   <i>,<j>,<weight>                   fields comma separated
//   ...
// with 0 <= i < j < m and one line per nonzero edge. Weights are written in
// scientific notation with 17 significant digits, so a write/read round
// trip reproduces the exact double values.

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "graphlearn/edge_space.hpp"

namespace graphlearn {

[[nodiscard]] inline std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
  if (res.ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, res.ptr);
}

[[nodiscard]] inline double parse_double(std::string_view token) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("parse_double: bad number '" + std::string(token) + "'");
  return value;
}

[[nodiscard]] inline long parse_long(std::string_view token) {
  long value = 0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc() || res.ptr != end)
    throw std::invalid_argument("parse_long: bad integer '" + std::string(token) + "'");
  return value;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t pos = text.find('\n', start);
    if (pos == std::string_view::npos) pos = text.size();
    std::string_view line = text.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) lines.push_back(line);
    start = pos + 1;
  }
  return lines;
}

}  // namespace detail

[[nodiscard]] inline std::string edge_list_to_string(const EdgeVector& g) {
  validate(g);
  std::string out = "m=" + std::to_string(g.m) + "\n";
  for_each_edge(g.m, [&](Index e, int i, int j) {
    if (g.w[e] != 0.0) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(j);
      out += ',';
      out += format_double(g.w[e]);
      out += '\n';
    }
  });
  return out;
}

[[nodiscard]] inline EdgeVector edge_list_from_string(std::string_view text) {
  const auto lines = detail::lines_of(text);
  if (lines.empty() || lines[0].substr(0, 2) != "m=")
    throw std::invalid_argument("edge list: missing 'm=<count>' header");
  const long m = parse_long(lines[0].substr(2));
  if (m < 2) throw std::invalid_argument("edge list: node count must be at least 2");
  EdgeVector g = EdgeVector::zeros(static_cast<int>(m));
  std::vector<char> seen(static_cast<std::size_t>(edge_count(static_cast<int>(m))), 0);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto fields = detail::split(lines[k], ',');
    if (fields.size() != 3)
      throw std::invalid_argument("edge list: expected 'i,j,weight' on line " +
                                  std::to_string(k + 1));
    const long i = parse_long(fields[0]);
    const long j = parse_long(fields[1]);
    const double w = parse_double(fields[2]);
    if (i < 0 || j <= i || j >= m)
      throw std::invalid_argument("edge list: bad pair on line " + std::to_string(k + 1));
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("edge list: bad weight on line " + std::to_string(k + 1));
    const Index e = edge_index(static_cast<int>(m), static_cast<int>(i), static_cast<int>(j));
    if (seen[static_cast<std::size_t>(e)])
      throw std::invalid_argument("edge list: duplicate edge on line " + std::to_string(k + 1));
    seen[static_cast<std::size_t>(e)] = 1;
    g.w[e] = w;
  }
  return g;
}

[[nodiscard]] inline std::string csv_from_matrix(const Matrix& A) {
  std::string out;
  for (Index i = 0; i < A.rows(); ++i) {
    for (Index j = 0; j < A.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(A(i, j));
    }
    out += '\n';
  }
  return out;
}

[[nodiscard]] inline Matrix csv_to_matrix(std::string_view text) {
  const auto lines = detail::lines_of(text);
  if (lines.empty()) throw std::invalid_argument("csv: empty input");
  const auto first = detail::split(lines[0], ',');
  const Index cols = static_cast<Index>(first.size());
  Matrix A(static_cast<Index>(lines.size()), cols);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto fields = detail::split(lines[i], ',');
    if (static_cast<Index>(fields.size()) != cols)
      throw std::invalid_argument("csv: ragged row at line " + std::to_string(i + 1));
    for (Index j = 0; j < cols; ++j)
      A(static_cast<Index>(i), j) = parse_double(fields[static_cast<std::size_t>(j)]);
  }
  return A;
}

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

[[nodiscard]] inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_edge_list(const std::string& path, const EdgeVector& g) {
  write_text_file(path, edge_list_to_string(g));
}

[[nodiscard]] inline EdgeVector read_edge_list(const std::string& path) {
  return edge_list_from_string(read_text_file(path));
}

inline void write_csv_matrix(const std::string& path, const Matrix& A) {
  write_text_file(path, csv_from_matrix(A));
}

[[nodiscard]] inline Matrix read_csv_matrix(const std::string& path) {
  return csv_to_matrix(read_text_file(path));
}

}  // namespace graphlearn
