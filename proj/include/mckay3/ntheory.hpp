#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mckay3::nt {

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);
std::int64_t mod(std::int64_t a, std::int64_t n);

// (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);

std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);

// Inverse of a modulo n; a must be a unit.
std::int64_t inverse_mod(std::int64_t a, std::int64_t n);

// Integer coefficients of the d-th cyclotomic polynomial, constant term first.
std::vector<std::int64_t> cyclotomic_poly(std::int64_t d);

}  // namespace mckay3::nt
