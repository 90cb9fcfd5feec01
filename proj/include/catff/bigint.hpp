#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace catff {

using BigInt = boost::multiprecision::cpp_int;

/// Deterministic primality by trial division; intended for desk-scale inputs.
bool is_prime_u64(std::uint64_t n);

/// Distinct prime factors of n >= 2, ascending.
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);

BigInt pow_big(const BigInt& base, std::uint64_t exp);

inline bool divides(std::uint64_t d, const BigInt& n) { return n % d == 0; }

}  // namespace catff
