#pragma once

#include <utility>
#include <vector>

#include "otarith/bigint.hpp"

namespace otarith {

bool is_probable_prime(const Int& n);

// Prime factorization of |n| (n != 0), primes ascending. Trial division
// followed by Pollard rho for the cofactor.
std::vector<std::pair<Int, unsigned>> factor_integer(const Int& n);

}  // namespace otarith
