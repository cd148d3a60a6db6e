#ifndef ERGM_GRAPH_HPP
#define ERGM_GRAPH_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ergm {

using Edge = std::pair<int, int>;

/// Number of vertex pairs of the complete graph on n vertices.
constexpr std::int64_t pair_count(std::int64_t n) { return n * (n - 1) / 2; }

/// Number of vertex triples, i.e. the triangle count of K_n.
constexpr std::int64_t triple_count(std::int64_t n) {
  return n * (n - 1) * (n - 2) / 6;
}

/// Vertex pairs {u,v}, u < v, in lexicographic order. Position in this list is
/// the edge index used throughout the library.
inline std::vector<Edge> edge_list(int n) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(pair_count(n)));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  }
  return edges;
}

struct SubgraphCounts {
  std::int64_t triangles = 0;
  std::int64_t edges = 0;

  friend bool operator==(const SubgraphCounts&, const SubgraphCounts&) = default;
};

/// Simple labeled graph stored as one bit row per vertex.
class GraphConfig {
 public:
  explicit GraphConfig(int n) : n_(n), words_((n + 63) / 64) {
    if (n < 2) throw std::invalid_argument("GraphConfig needs at least 2 vertices");
    rows_.assign(static_cast<std::size_t>(n_) * words_, 0);
  }

  /// Graph whose edge i (in edge_list order) is present iff bit i of code is set.
  static GraphConfig from_code(int n, std::uint64_t code) {
    if (pair_count(n) > 64) throw std::invalid_argument("edge code needs n <= 11");
    GraphConfig g(n);
    int i = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v, ++i) {
        if ((code >> i) & 1U) g.set_edge(u, v, true);
      }
    }
    return g;
  }

  std::uint64_t to_code() const {
    if (pair_count(n_) > 64) throw std::invalid_argument("edge code needs n <= 11");
    std::uint64_t code = 0;
    int i = 0;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v, ++i) {
        if (has_edge(u, v)) code |= std::uint64_t{1} << i;
      }
    }
    return code;
  }

  int vertex_count() const noexcept { return n_; }

  bool has_edge(int u, int v) const {
    return (row(u)[v >> 6] >> (v & 63)) & 1U;
  }

  void set_edge(int u, int v, bool present) {
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
    if (has_edge(u, v) != present) flip(u, v);
  }

  void flip(int u, int v) {
    row(u)[v >> 6] ^= std::uint64_t{1} << (v & 63);
    row(v)[u >> 6] ^= std::uint64_t{1} << (u & 63);
  }

  /// |N(u) ∩ N(v)|, the number of triangles an edge {u,v} closes.
  int common_neighbors(int u, int v) const {
    const std::uint64_t* a = row(u);
    const std::uint64_t* b = row(v);
    int c = 0;
    for (int w = 0; w < words_; ++w) c += std::popcount(a[w] & b[w]);
    return c;
  }

  int degree(int u) const {
    const std::uint64_t* a = row(u);
    int d = 0;
    for (int w = 0; w < words_; ++w) d += std::popcount(a[w]);
    return d;
  }

  /// Full recount of edges and triangles.
  SubgraphCounts counts() const {
    SubgraphCounts c;
    std::int64_t closed = 0;
    for (int u = 0; u < n_; ++u) {
      for (int v = u + 1; v < n_; ++v) {
        if (!has_edge(u, v)) continue;
        ++c.edges;
        closed += common_neighbors(u, v);
      }
    }
    c.triangles = closed / 3;
    return c;
  }

  /// Homomorphism density of a single edge, 2*edges/n^2.
  double edge_density() const {
    const double n = n_;
    return 2.0 * static_cast<double>(counts().edges) / (n * n);
  }

  /// Homomorphism density of a triangle, 6*triangles/n^3.
  double triangle_density() const {
    const double n = n_;
    return 6.0 * static_cast<double>(counts().triangles) / (n * n * n);
  }

  const std::uint64_t* row(int u) const {
    return rows_.data() + static_cast<std::size_t>(u) * words_;
  }

  friend bool operator==(const GraphConfig&, const GraphConfig&) = default;

 private:
  std::uint64_t* row(int u) {
    return rows_.data() + static_cast<std::size_t>(u) * words_;
  }

  int n_;
  int words_;
  std::vector<std::uint64_t> rows_;
};

inline SubgraphCounts triangle_and_edge_count(const GraphConfig& g) {
  return g.counts();
}

}  // namespace ergm

#endif  // ERGM_GRAPH_HPP
