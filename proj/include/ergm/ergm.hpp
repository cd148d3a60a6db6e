#ifndef ERGM_ERGM_HPP
#define ERGM_ERGM_HPP

#include "ergm/clt.hpp"
#include "ergm/enumeration.hpp"
#include "ergm/errors.hpp"
#include "ergm/exact.hpp"
#include "ergm/graph.hpp"
#include "ergm/meanfield.hpp"
#include "ergm/numerics.hpp"
#include "ergm/params.hpp"
#include "ergm/phase_diagram.hpp"
#include "ergm/polynomial.hpp"
#include "ergm/sampler.hpp"

#endif  // ERGM_ERGM_HPP
