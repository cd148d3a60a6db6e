#ifndef ERGM_PARAMS_HPP
#define ERGM_PARAMS_HPP

#include <string>
#include <variant>

#include "ergm/errors.hpp"

namespace ergm {

/// Edge-triangle model: alpha weights floor(T/n), h weights the edge count.
struct TwoParam {
  double alpha = 0.0;
  double h = 0.0;

  /// Inside the replica-symmetric region alpha > -2.
  bool replica_symmetric() const { return alpha > -2.0; }
};

/// Three-parameter model: beta1 on edges, beta2 on a p-edge subgraph,
/// beta3 on a q-edge subgraph.
struct ThreeParam {
  double beta1 = 0.0;
  double beta2 = 0.0;
  double beta3 = 0.0;
  int p = 3;
  int q = 3;

  bool replica_symmetric() const { return beta2 >= 0.0 && beta3 >= 0.0; }

  void validate() const {
    if (p < 2 || q < p || q > 5 * p - 1) {
      throw DomainError("three-parameter model needs 2 <= p <= q <= 5p-1 (got p = " +
                        std::to_string(p) + ", q = " + std::to_string(q) + ")");
    }
    if (!replica_symmetric()) {
      throw DomainError("three-parameter model needs beta2 >= 0 and beta3 >= 0");
    }
  }
};

using ModelParams = std::variant<TwoParam, ThreeParam>;

}  // namespace ergm

#endif  // ERGM_PARAMS_HPP
