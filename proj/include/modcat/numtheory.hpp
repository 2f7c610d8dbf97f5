#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace modcat {

using BigInt = mpz_class;
using BigRational = mpq_class;  // canonical: gcd(|num|, den) = 1, den > 0

long gcd_long(long a, long b);
long lcm_long(long a, long b);

// Prime factorization by trial division; returns (p, multiplicity) pairs with
// ascending p. Requires n >= 1.
std::vector<std::pair<long, int>> factorize(long n);

bool is_prime(long n);
bool is_squarefree(long n);
long euler_phi(long n);

// |((Z/mZ)^x)^2|, computed multiplicatively.
long phi2(long m);

// Legendre symbol (a|p) in {-1, 0, +1}; p must be an odd prime.
int legendre(long a, long p);

// Modular inverse of a mod m; requires gcd(a, m) = 1.
long inv_mod(long a, long m);
long pow_mod(long a, long e, long m);

// Units of Z/m in ascending order.
std::vector<long> units_mod(long m);

// Coefficients of the M-th cyclotomic polynomial, index = degree.
// Computed by recursive exact division of x^M - 1; results are cached.
const std::vector<BigInt>& cyclotomic_polynomial(long M);

}  // namespace modcat
