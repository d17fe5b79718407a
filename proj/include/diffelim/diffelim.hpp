#pragma once

// Umbrella header for the elimination library.

#include "diffelim/arith/crt.hpp"
#include "diffelim/arith/prime_field.hpp"
#include "diffelim/arith/rational.hpp"
#include "diffelim/arith/rng.hpp"
#include "diffelim/interp/eliminate.hpp"
#include "diffelim/interp/evaluation.hpp"
#include "diffelim/interp/linalg.hpp"
#include "diffelim/ode/jet.hpp"
#include "diffelim/ode/operators.hpp"
#include "diffelim/ode/order.hpp"
#include "diffelim/ode/system.hpp"
#include "diffelim/poly/io.hpp"
#include "diffelim/poly/monomial.hpp"
#include "diffelim/poly/sparse_poly.hpp"
#include "diffelim/support/bound.hpp"
#include "diffelim/support/newton_polytope.hpp"
#include "diffelim/verify/certified.hpp"
#include "diffelim/verify/membership.hpp"
#include "diffelim/cli/model.hpp"
#include "diffelim/cli/bench.hpp"
