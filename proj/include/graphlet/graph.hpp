#pragma once

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "graphlet/common.hpp"

namespace graphlet {

/// Immutable undirected simple graph in CSR form.
///
/// Neighbor lists are strictly ascending and symmetric. Edges are stored once
/// as (u, v) with u < v, sorted lexicographically, so an EdgeId is the rank of
/// the pair in that order.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary pair list over ids in [0, n). Self-loops and
  /// duplicates are dropped and direction is ignored.
  static Graph from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> pairs,
                          std::vector<std::string> labels = {}) {
    Graph g;
    g.n_ = n;
    g.edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
      if (a >= n || b >= n) throw std::out_of_range("edge endpoint outside vertex range");
      if (a == b) continue;
      g.edges_.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : g.edges_) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.adj_.resize(2 * g.edges_.size());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (u, v): appending v to u and u to v in this order
    // leaves every list ascending.
    for (auto [u, v] : g.edges_) g.adj_[cursor[u]++] = v;
    for (auto [u, v] : g.edges_) g.adj_[cursor[v]++] = u;
    for (std::size_t w = 0; w < n; ++w) std::sort(g.adj_.begin() + g.offsets_[w], g.adj_.begin() + g.offsets_[w + 1]);

    g.max_degree_ = 0;
    for (std::size_t w = 0; w < n; ++w) g.max_degree_ = std::max(g.max_degree_, g.degree(static_cast<VertexId>(w)));

    if (labels.empty()) {
      labels.reserve(n);
      for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != n) throw std::invalid_argument("label map size does not match vertex count");
    g.labels_ = std::move(labels);
    return g;
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t max_degree() const { return max_degree_; }

  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  std::pair<VertexId, VertexId> edge(EdgeId e) const { return edges_[e]; }
  std::span<const std::pair<VertexId, VertexId>> edges() const { return edges_; }

  bool has_edge(VertexId a, VertexId b) const {
    if (degree(a) > degree(b)) std::swap(a, b);
    auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const {
    if (a == b || a >= n_ || b >= n_) return std::nullopt;
    std::pair<VertexId, VertexId> key{std::min(a, b), std::max(a, b)};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<EdgeId>(it - edges_.begin());
  }

  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<VertexId> find_label(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<VertexId>(i);
    return std::nullopt;
  }

  /// Structural equality (labels are ignored).
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::size_t max_degree_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> adj_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Ingestion

enum class InputFormat { automatic, edge_list, matrix_market, canonical };

namespace detail {

inline bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

inline std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ' ' || c == '\t' || c == ',' || c == '\r' || c == '\n'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i])) ++i;
    std::size_t j = i;
    while (j < line.size() && !is_sep(line[j])) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view tok) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
  return v;
}

inline Graph parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool have_size = false;
  std::size_t n = 0;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%' || is_blank(line)) continue;
    auto tok = split_tokens(line);
    if (!have_size) {
      if (tok.size() < 2) throw ParseError("malformed Matrix-Market size line", lineno);
      auto rows = parse_uint(tok[0]);
      auto cols = parse_uint(tok[1]);
      if (!rows || !cols) throw ParseError("malformed Matrix-Market size line", lineno);
      n = static_cast<std::size_t>(std::max(*rows, *cols));
      if (n > std::numeric_limits<VertexId>::max()) throw ParseError("vertex count exceeds 32-bit id range", lineno);
      have_size = true;
      continue;
    }
    if (tok.size() < 2) throw ParseError("expected 'row col [value]'", lineno);
    auto a = parse_uint(tok[0]);
    auto b = parse_uint(tok[1]);
    if (!a || !b || *a == 0 || *b == 0 || *a > n || *b > n)
      throw ParseError("Matrix-Market entry out of range", lineno);
    pairs.emplace_back(static_cast<VertexId>(*a - 1), static_cast<VertexId>(*b - 1));
  }
  if (!have_size) throw ParseError("missing Matrix-Market size line", lineno);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
  return Graph::from_edges(n, pairs, std::move(labels));
}

inline Graph parse_canonical(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> header;
  std::vector<std::pair<VertexId, VertexId>> pairs;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line[0] == '%' || is_blank(line)) continue;
    auto tok = split_tokens(line);
    if (tok.size() != 2) throw ParseError("expected two integers", lineno);
    auto a = parse_uint(tok[0]);
    auto b = parse_uint(tok[1]);
    if (!a || !b) throw ParseError("expected two integers", lineno);
    if (!header) {
      header.emplace(*a, *b);
      continue;
    }
    if (*a >= header->first || *b >= header->first) throw ParseError("vertex id out of range", lineno);
    pairs.emplace_back(static_cast<VertexId>(*a), static_cast<VertexId>(*b));
  }
  if (!header) throw ParseError("missing 'n m' header", lineno);
  if (pairs.size() != header->second) throw ParseError("edge count does not match header", lineno);
  return Graph::from_edges(static_cast<std::size_t>(header->first), pairs);
}

inline Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::pair<std::string, std::string>> raw;
  bool all_numeric = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#' || line[0] == '%' || is_blank(line)) continue;
    auto tok = split_tokens(line);
    if (tok.size() < 2) throw ParseError("expected a vertex pair", lineno);
    all_numeric = all_numeric && parse_uint(tok[0]) && parse_uint(tok[1]);
    raw.emplace_back(std::string(tok[0]), std::string(tok[1]));
  }

  // Integer labels map in ascending numeric order so that canonical output
  // reloads to the same ids; other labels map in order of first appearance.
  std::unordered_map<std::string, VertexId> ids;
  std::vector<std::string> labels;
  if (all_numeric) {
    std::map<std::uint64_t, std::string> ordered;
    for (const auto& [a, b] : raw) {
      ordered.emplace(*parse_uint(a), a);
      ordered.emplace(*parse_uint(b), b);
    }
    for (const auto& [value, text] : ordered) {
      (void)value;
      ids.emplace(text, static_cast<VertexId>(labels.size()));
      labels.push_back(text);
    }
    // "01" and "1" are the same vertex
    for (const auto& [a, b] : raw)
      for (const auto* s : {&a, &b})
        if (!ids.count(*s)) ids.emplace(*s, ids.at(ordered.at(*parse_uint(*s))));
  } else {
    for (const auto& [a, b] : raw) {
      for (const auto* s : {&a, &b}) {
        if (ids.emplace(*s, static_cast<VertexId>(labels.size())).second) labels.push_back(*s);
      }
    }
  }
  if (labels.size() > std::numeric_limits<VertexId>::max()) throw ParseError("too many vertices", 0);
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(raw.size());
  for (const auto& [a, b] : raw) pairs.emplace_back(ids.at(a), ids.at(b));
  const std::size_t n = labels.size();
  return Graph::from_edges(n, pairs, std::move(labels));
}

inline std::string read_file(const std::string& path) {
  if (path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0) {
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string out;
    char buf[1 << 16];
    int got;
    while ((got = gzread(f, buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(got));
    int err = 0;
    const char* msg = gzerror(f, &err);
    gzclose(f);
    if (got < 0 || (err != Z_OK && err != Z_STREAM_END)) throw std::runtime_error("gzip read error: " + std::string(msg));
    return out;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Parses an edge list, Matrix-Market coordinate file, or canonical "n m"
/// serialization. Throws ParseError on malformed input or an empty graph.
inline Graph load_graph(std::istream& in, InputFormat format = InputFormat::automatic) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  if (format == InputFormat::automatic) {
    auto first = text.find_first_not_of(" \t\r\n");
    format = (first != std::string::npos && text.compare(first, 14, "%%MatrixMarket") == 0) ? InputFormat::matrix_market
                                                                                           : InputFormat::edge_list;
  }
  std::istringstream ss(std::move(text));
  Graph g;
  switch (format) {
    case InputFormat::matrix_market: g = detail::parse_matrix_market(ss); break;
    case InputFormat::canonical: g = detail::parse_canonical(ss); break;
    default: g = detail::parse_edge_list(ss); break;
  }
  if (g.num_vertices() == 0 || g.num_edges() == 0) throw ParseError("empty graph", 0);
  return g;
}

inline Graph load_graph(std::string_view text, InputFormat format = InputFormat::automatic) {
  std::istringstream ss{std::string(text)};
  return load_graph(ss, format);
}

/// Reads a file; names ending in .gz are decompressed.
inline Graph load_graph_file(const std::string& path, InputFormat format = InputFormat::automatic) {
  return load_graph(std::string_view(detail::read_file(path)), format);
}

/// Canonical form: "n m" then the sorted "u v" pairs with u < v.
inline std::string serialize(const Graph& g) {
  std::string out = std::to_string(g.num_vertices()) + " " + std::to_string(g.num_edges()) + "\n";
  for (auto [u, v] : g.edges()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cores and hardness

struct CoreDecomposition {
  std::vector<std::uint32_t> core;
  std::vector<std::uint32_t> edge_core;
  std::uint32_t max_core = 0;
};

/// Bucket-based peeling (Batagelj–Zaversnik), O(n + m).
inline CoreDecomposition kcore_numbers(const Graph& g) {
  const std::size_t n = g.num_vertices();
  CoreDecomposition out;
  out.core.assign(n, 0);
  std::size_t md = g.max_degree();

  std::vector<std::size_t> deg(n), bin(md + 2, 0), pos(n), vert(n);
  for (std::size_t v = 0; v < n; ++v) {
    deg[v] = g.degree(static_cast<VertexId>(v));
    ++bin[deg[v]];
  }
  std::size_t start = 0;
  for (std::size_t d = 0; d <= md; ++d) {
    std::size_t num = bin[d];
    bin[d] = start;
    start += num;
  }
  for (std::size_t v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = md; d >= 1; --d) bin[d] = bin[d - 1];
  bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t v = vert[i];
    for (VertexId u : g.neighbors(static_cast<VertexId>(v))) {
      if (deg[u] > deg[v]) {
        std::size_t du = deg[u], pu = pos[u], pw = bin[du], w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    out.core[v] = static_cast<std::uint32_t>(deg[v]);
    out.max_core = std::max(out.max_core, out.core[v]);
  }
  out.edge_core.reserve(g.num_edges());
  for (auto [u, v] : g.edges()) out.edge_core.push_back(std::min(out.core[u], out.core[v]));
  return out;
}

/// d_u + d_v; larger values mean more per-edge work.
inline std::size_t edge_hardness(const Graph& g, EdgeId e) {
  auto [u, v] = g.edge(e);
  return g.degree(u) + g.degree(v);
}

}  // namespace graphlet
