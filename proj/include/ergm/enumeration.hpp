#ifndef ERGM_ENUMERATION_HPP
#define ERGM_ENUMERATION_HPP

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ergm/errors.hpp"
#include "ergm/graph.hpp"

namespace ergm {

/// Exact counts G[m, l] of labeled graphs on n vertices with m triangles and
/// l edges. Dense storage; rows are triangle counts.
class CoefficientTable {
 public:
  explicit CoefficientTable(int n)
      : n_(n),
        max_triangles_(triple_count(n)),
        max_edges_(pair_count(n)),
        counts_(static_cast<std::size_t>((max_triangles_ + 1) * (max_edges_ + 1)), 0) {
    if (n < 2) throw std::invalid_argument("CoefficientTable needs n >= 2");
  }

  int n() const noexcept { return n_; }
  std::int64_t max_triangles() const noexcept { return max_triangles_; }
  std::int64_t max_edges() const noexcept { return max_edges_; }

  std::uint64_t count(std::int64_t m, std::int64_t l) const {
    if (m < 0 || m > max_triangles_ || l < 0 || l > max_edges_) return 0;
    return counts_[index(m, l)];
  }

  std::uint64_t& at(std::int64_t m, std::int64_t l) { return counts_[index(m, l)]; }

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (auto c : counts_) s += c;
    return s;
  }

  CoefficientTable& operator+=(const CoefficientTable& other) {
    if (other.n_ != n_) throw std::invalid_argument("merging tables of different n");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    return *this;
  }

  /// Calls f(m, l, count) for every nonzero entry, m-major order.
  template <typename F>
  void for_each_nonzero(F&& f) const {
    for (std::int64_t m = 0; m <= max_triangles_; ++m) {
      for (std::int64_t l = 0; l <= max_edges_; ++l) {
        const auto c = counts_[index(m, l)];
        if (c != 0) f(m, l, c);
      }
    }
  }

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;

 private:
  std::size_t index(std::int64_t m, std::int64_t l) const {
    return static_cast<std::size_t>(m * (max_edges_ + 1) + l);
  }

  int n_;
  std::int64_t max_triangles_;
  std::int64_t max_edges_;
  std::vector<std::uint64_t> counts_;
};

struct EnumerationOptions {
  /// Largest n accepted. Values above 8 are allowed but print a warning.
  int n_max = 8;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Absolute ceiling: counts must stay below 2^64 and vertex rows fit one word.
inline constexpr int kHardVertexLimit = 10;

namespace detail {

// Enumerates the 2^free_bits configurations of the low edges with the high
// edges fixed to `prefix`, walking in Gray-code order so each step is one flip.
inline void enumerate_block(int n, const std::vector<Edge>& edges, int free_bits,
                            std::uint64_t prefix, CoefficientTable& table) {
  std::uint64_t adj[64] = {};
  std::int64_t l = 0;
  const int total_bits = static_cast<int>(edges.size());
  for (int b = free_bits; b < total_bits; ++b) {
    if ((prefix >> (b - free_bits)) & 1U) {
      const auto [u, v] = edges[static_cast<std::size_t>(b)];
      adj[u] |= std::uint64_t{1} << v;
      adj[v] |= std::uint64_t{1} << u;
      ++l;
    }
  }
  std::int64_t m = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if ((adj[u] >> v) & 1U) m += std::popcount(adj[u] & adj[v]);
    }
  }
  m /= 3;

  const std::int64_t stride = table.max_edges() + 1;
  std::uint64_t* cell = &table.at(0, 0);
  ++cell[m * stride + l];

  const std::uint64_t steps = std::uint64_t{1} << free_bits;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int bit = std::countr_zero(i);
    const auto [u, v] = edges[static_cast<std::size_t>(bit)];
    const std::uint64_t mask_v = std::uint64_t{1} << v;
    const int common = std::popcount(adj[u] & adj[v]);
    if (adj[u] & mask_v) {
      m -= common;
      --l;
    } else {
      m += common;
      ++l;
    }
    adj[u] ^= mask_v;
    adj[v] ^= std::uint64_t{1} << u;
    ++cell[m * stride + l];
  }
}

}  // namespace detail

/// Builds the exact coefficient table by enumerating all 2^(n(n-1)/2) graphs.
/// The configuration space is split on a prefix of edge bits; blocks are
/// counted independently and summed, so the result is schedule-independent.
inline CoefficientTable enumerate_coefficients(int n, const EnumerationOptions& opts = {}) {
  if (n < 2) throw std::invalid_argument("enumerate_coefficients needs n >= 2");
  const int bound = std::min(opts.n_max, kHardVertexLimit);
  if (n > bound) {
    throw CapacityError("exact enumeration supports n <= " + std::to_string(bound) +
                            " (requested n = " + std::to_string(n) + ")",
                        bound);
  }
  if (n > 8) {
    std::clog << "warning: enumerating 2^" << pair_count(n) << " graphs for n = " << n
              << "; this may take a very long time\n";
  }

  const auto edges = edge_list(n);
  const int total_bits = static_cast<int>(edges.size());
  unsigned threads = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, threads);

  int prefix_bits = 0;
  while (prefix_bits < total_bits && prefix_bits < 12 &&
         (std::uint64_t{1} << prefix_bits) < 8ULL * threads) {
    ++prefix_bits;
  }
  const int free_bits = total_bits - prefix_bits;
  const std::uint64_t blocks = std::uint64_t{1} << prefix_bits;

  std::vector<CoefficientTable> partial(threads, CoefficientTable(n));
  std::atomic<std::uint64_t> next{0};
  auto worker = [&](unsigned id) {
    for (std::uint64_t b = next++; b < blocks; b = next++) {
      detail::enumerate_block(n, edges, free_bits, b, partial[id]);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }

  CoefficientTable table(n);
  for (const auto& p : partial) table += p;
  return table;
}

}  // namespace ergm

#endif  // ERGM_ENUMERATION_HPP
