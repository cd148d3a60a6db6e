#ifndef ERGM_SAMPLER_HPP
#define ERGM_SAMPLER_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "ergm/errors.hpp"
#include "ergm/graph.hpp"
#include "ergm/numerics.hpp"
#include "ergm/params.hpp"

namespace ergm {

/// Generator for one chain: std::mt19937_64 seeded through std::seed_seq with
/// the 32-bit halves of (seed, chain). Both are fully specified by the C++
/// standard, so streams are identical across platforms.
inline std::mt19937_64 chain_engine(std::uint64_t seed, std::uint64_t chain) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain), static_cast<std::uint32_t>(chain >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound) by multiply-shift with rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
    if (static_cast<std::uint64_t>(product) >= threshold) {
      return static_cast<std::uint64_t>(product >> 64);
    }
  }
}

struct ChainState {
  GraphConfig graph;
  std::int64_t m = 0;  ///< cached triangle count
  std::int64_t l = 0;  ///< cached edge count
  std::uint64_t step = 0;
  std::mt19937_64 rng;

  ChainState(GraphConfig g, std::mt19937_64 engine) : graph(std::move(g)), rng(engine) {
    const auto c = graph.counts();
    m = c.triangles;
    l = c.edges;
  }

  void audit() const {
    const auto c = graph.counts();
    if (c.triangles != m || c.edges != l) {
      throw AuditError("cached counts (m=" + std::to_string(m) + ", l=" + std::to_string(l) +
                       ") differ from recount (m=" + std::to_string(c.triangles) +
                       ", l=" + std::to_string(c.edges) + ") at step " + std::to_string(step));
    }
  }
};

struct FlipDelta {
  std::int64_t dm = 0;  ///< change in triangle count
  int dl = 0;           ///< +1 adds the edge, -1 removes it
  double dH = 0.0;      ///< change in the Hamiltonian
};

/// Floored edge-triangle Hamiltonian alpha*floor(T/n) + h*E.
struct EdgeTriangleTarget {
  TwoParam params;

  double delta(const ChainState& s, int, int, std::int64_t dm, int dl) const {
    const auto n = s.graph.vertex_count();
    const auto floor_change = floor_div(s.m + dm, n) - floor_div(s.m, n);
    return params.alpha * static_cast<double>(floor_change) + params.h * dl;
  }
};

/// Change of hom(H, G) when the edge {u,v} is flipped.
using SubgraphDelta = std::function<double(const GraphConfig&, int u, int v)>;

/// hom(K_{1,k}, G) = sum_v deg(v)^k.
inline SubgraphDelta star_delta(int k) {
  return [k](const GraphConfig& g, int u, int v) {
    const int s = g.has_edge(u, v) ? -1 : 1;
    const double du = g.degree(u);
    const double dv = g.degree(v);
    return std::pow(du + s, k) - std::pow(du, k) + std::pow(dv + s, k) - std::pow(dv, k);
  };
}

/// hom(C_4, G) = tr(A^4). Adding {u,v} to a graph without it changes the trace
/// by 8 W3(u,v) + 4 (deg u + deg v) + 2, W3 being the 3-walk count from u to v.
inline SubgraphDelta four_cycle_delta() {
  return [](const GraphConfig& g, int u, int v) {
    const int n = g.vertex_count();
    const bool present = g.has_edge(u, v);
    double walks = 0.0;
    for (int w = 0; w < n; ++w) {
      if (w == v || !g.has_edge(u, w)) continue;
      walks += g.common_neighbors(w, v) - (present ? 1 : 0);
    }
    const double du = g.degree(u) - (present ? 1 : 0);
    const double dv = g.degree(v) - (present ? 1 : 0);
    const double gain = 8.0 * walks + 4.0 * (du + dv) + 2.0;
    return present ? -gain : gain;
  };
}

/// Three-parameter Hamiltonian
///   beta3 hom(H3)/n^(v3-2) + beta2 floor(6T/n) + 2 beta1 E,
/// with H2 the triangle and H3 supplied through its flip delta.
struct ThreeParamTarget {
  ThreeParam params;
  SubgraphDelta h3_delta;
  int h3_vertices = 4;

  double delta(const ChainState& s, int u, int v, std::int64_t dm, int dl) const {
    const auto n = s.graph.vertex_count();
    const auto floor_change = floor_div(6 * (s.m + dm), n) - floor_div(6 * s.m, n);
    double d = params.beta2 * static_cast<double>(floor_change) + 2.0 * params.beta1 * dl;
    if (params.beta3 != 0.0) {
      d += params.beta3 * h3_delta(s.graph, u, v) / std::pow(double(n), h3_vertices - 2);
    }
    return d;
  }
};

template <typename Target>
FlipDelta flip_delta(const ChainState& s, const Target& target, int u, int v) {
  FlipDelta d;
  const auto common = s.graph.common_neighbors(u, v);
  if (s.graph.has_edge(u, v)) {
    d.dm = -common;
    d.dl = -1;
  } else {
    d.dm = common;
    d.dl = 1;
  }
  d.dH = target.delta(s, u, v, d.dm, d.dl);
  return d;
}

/// One Metropolis single-edge flip: uniform edge, accept with min(1, e^dH).
/// Returns whether the flip was accepted.
template <typename Target>
bool mcmc_step(ChainState& s, const Target& target, const std::vector<Edge>& edges) {
  const auto [u, v] = edges[uniform_below(s.rng, edges.size())];
  const auto d = flip_delta(s, target, u, v);
  ++s.step;
  if (d.dH < 0.0 && !(uniform01(s.rng) < std::exp(d.dH))) return false;
  s.graph.flip(u, v);
  s.m += d.dm;
  s.l += d.dl;
  return true;
}

struct Draw {
  std::int64_t m = 0;
  std::int64_t l = 0;
  friend bool operator==(const Draw&, const Draw&) = default;
};

struct ChainConfig {
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t chain = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t samples = 1;
  std::uint64_t thinning = 1;  ///< steps between recorded draws
  std::uint64_t audit_interval = 1'000'000;
  double initial_edge_probability = 0.5;
};

struct SampleSeries {
  int n = 0;
  ModelParams params;
  std::uint64_t seed = 0;
  std::uint64_t chain = 0;
  std::uint64_t burn_in = 0;
  std::uint64_t thinning = 1;
  std::vector<Draw> draws;
  double acceptance_rate = 0.0;
  std::uint64_t audits_passed = 0;

  /// Chain step at which draw i was recorded.
  std::uint64_t step_of(std::size_t i) const { return burn_in + (i + 1) * thinning; }
};

inline ChainState initial_state(const ChainConfig& cfg) {
  auto rng = chain_engine(cfg.seed, cfg.chain);
  GraphConfig g(cfg.n);
  for (int u = 0; u < cfg.n; ++u) {
    for (int v = u + 1; v < cfg.n; ++v) {
      if (uniform01(rng) < cfg.initial_edge_probability) g.flip(u, v);
    }
  }
  return ChainState(std::move(g), rng);
}

inline ModelParams target_params(const EdgeTriangleTarget& t) { return t.params; }
inline ModelParams target_params(const ThreeParamTarget& t) { return t.params; }

/// Runs one chain. `observe(state)` is called at every recorded draw. The cache
/// is audited every audit_interval steps and at the end.
template <typename Target, typename Observer>
SampleSeries run_chain(const ChainConfig& cfg, const Target& target, Observer&& observe) {
  if (cfg.n < 3) throw DomainError("run_chain needs n >= 3");
  if (cfg.samples < 1 || cfg.thinning < 1) throw DomainError("run_chain needs samples, thin >= 1");

  const auto edges = edge_list(cfg.n);
  auto state = initial_state(cfg);
  SampleSeries out;
  out.n = cfg.n;
  out.params = target_params(target);
  out.seed = cfg.seed;
  out.chain = cfg.chain;
  out.burn_in = cfg.burn_in;
  out.thinning = cfg.thinning;
  out.draws.reserve(cfg.samples);

  std::uint64_t accepted = 0;
  std::uint64_t until_audit = cfg.audit_interval;
  auto advance = [&](std::uint64_t steps) {
    for (std::uint64_t i = 0; i < steps; ++i) {
      accepted += mcmc_step(state, target, edges) ? 1 : 0;
      if (--until_audit == 0) {
        state.audit();
        ++out.audits_passed;
        until_audit = cfg.audit_interval;
      }
    }
  };

  advance(cfg.burn_in);
  for (std::uint64_t k = 0; k < cfg.samples; ++k) {
    advance(cfg.thinning);
    out.draws.push_back({state.m, state.l});
    observe(state);
  }
  state.audit();
  ++out.audits_passed;
  out.acceptance_rate = static_cast<double>(accepted) / static_cast<double>(state.step);
  return out;
}

template <typename Target>
SampleSeries run_chain(const ChainConfig& cfg, const Target& target) {
  return run_chain(cfg, target, [](const ChainState&) {});
}

/// Independent chains 0..chains-1 sharing a base seed. Each chain is strictly
/// sequential; the thread count only changes which worker runs which chain.
template <typename Target>
std::vector<SampleSeries> run_chains(const ChainConfig& base, const Target& target,
                                     std::uint64_t chains, unsigned threads) {
  std::vector<SampleSeries> out(chains);
  std::vector<std::exception_ptr> errors(chains);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chains; c = next++) {
      try {
        auto cfg = base;
        cfg.chain = c;
        out[c] = run_chain(cfg, target);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(chains)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace ergm

#endif  // ERGM_SAMPLER_HPP
