#pragma once

#include <algorithm>
#include <vector>

#include "diffelim/arith/prime_field.hpp"
#include "diffelim/arith/rng.hpp"
#include "diffelim/interp/linalg.hpp"
#include "diffelim/ode/operators.hpp"
#include "diffelim/ode/system.hpp"

namespace diffelim {

/// Order of the minimal polynomial: rank of the Jacobian
/// (d L_g^{i-1}(x1) / d x_j)_{i,j=1..n}, estimated as the maximum rank at
/// random points modulo random primes over `repetitions` trials. Can only
/// underestimate the generic rank.
inline int order_nu(const OdeSystem& sys, Rng rng, int repetitions = 3, int prime_bits = 62) {
  const int n = sys.n();
  int best = 0;
  for (int rep = 0; rep < repetitions && best < n; ++rep) {
    PrimeField field(random_prime(prime_bits, rng));
    auto g = sys.reduce(field);
    if (!g) continue;
    auto iterates = lie_iterates<PrimeField>(*g, n - 1);
    std::vector<u64> point(static_cast<std::size_t>(n));
    for (auto& v : point) v = rng.uniform_u64(0, field.modulus() - 1);
    ModMatrix jac(field, static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        jac(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
            evaluate<PrimeField>(partial_derivative(iterates[static_cast<std::size_t>(i)], static_cast<std::size_t>(j)), point);
    best = std::max(best, static_cast<int>(rank(jac)));
  }
  return best;
}

}  // namespace diffelim
