#pragma once

// Edge-list readers for real-world graphs. Two inputs are accepted: Matrix
// Market coordinate files and plain whitespace-separated `u v` pairs.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "iidmatch/generators.hpp"

namespace iidmatch {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line), message_(what) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::string message_;
};

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == ',')) ++i;
    const std::size_t j = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r' && s[i] != ',') ++i;
    if (i > j) out.push_back(s.substr(j, i - j));
  }
  return out;
}

inline std::int64_t parse_id(std::string_view tok, std::size_t line) {
  std::int64_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError(line, "expected an integer node id, got '" + std::string(tok) + "'");
  return v;
}

}  // namespace detail

/// Reads an undirected simple graph. Self-loops are dropped and repeated
/// edges (in either direction) merged. In plain mode ids may be arbitrary
/// non-negative integers and are compacted by first appearance; Matrix
/// Market ids are 1-based against the declared dimension.
inline GeneralGraph parse_graph(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  bool matrix_market = false;
  bool have_dims = false;
  std::int64_t mm_nodes = 0;
  std::unordered_map<std::int64_t, int> compact;
  std::unordered_set<std::uint64_t> seen;
  GeneralGraph g;

  auto id_of = [&](std::int64_t raw, std::size_t line) -> int {
    if (matrix_market) {
      if (raw < 1 || raw > mm_nodes)
        throw ParseError(line, "node id " + std::to_string(raw) + " outside [1, " + std::to_string(mm_nodes) + "]");
      return static_cast<int>(raw - 1);
    }
    if (raw < 0) throw ParseError(line, "negative node id " + std::to_string(raw));
    const auto [it, fresh] = compact.try_emplace(raw, static_cast<int>(compact.size()));
    return it->second;
  };

  while (std::getline(in, text)) {
    ++line_no;
    if (line_no == 1 && text.rfind("%%MatrixMarket", 0) == 0) {
      if (text.find("coordinate") == std::string::npos) throw ParseError(line_no, "only coordinate Matrix Market files are supported");
      matrix_market = true;
      continue;
    }
    const auto toks = detail::split_ws(text);
    if (toks.empty() || toks[0][0] == '%' || toks[0][0] == '#') continue;
    if (matrix_market && !have_dims) {
      if (toks.size() != 3) throw ParseError(line_no, "expected 'rows cols entries' dimension line");
      const auto rows = detail::parse_id(toks[0], line_no);
      const auto cols = detail::parse_id(toks[1], line_no);
      if (rows < 1 || cols < 1) throw ParseError(line_no, "dimensions must be positive");
      mm_nodes = std::max(rows, cols);
      have_dims = true;
      continue;
    }
    // Matrix Market entries may carry a value column; plain lists may carry a weight.
    if (toks.size() < 2 || toks.size() > 3) throw ParseError(line_no, "expected 'u v' pair");
    const int u = id_of(detail::parse_id(toks[0], line_no), line_no);
    const int v = id_of(detail::parse_id(toks[1], line_no), line_no);
    if (u == v) continue;
    if (!seen.insert(detail::edge_key(u, v)).second) continue;
    g.edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  if (matrix_market && !have_dims) throw ParseError(line_no, "missing dimension line");
  g.node_count = matrix_market ? static_cast<int>(mm_nodes) : static_cast<int>(compact.size());
  if (g.edges.empty()) throw std::runtime_error("graph has no edges");
  return g;
}

inline GeneralGraph parse_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return parse_graph(in);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.message());
  }
}

/// Plain `u v` lines in stored order. Graphs read from plain files already
/// number nodes by first appearance, so reading the output back is exact.
inline void write_general_graph(std::ostream& out, const GeneralGraph& g) {
  for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
}

}  // namespace iidmatch
