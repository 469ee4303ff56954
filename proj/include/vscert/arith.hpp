#pragma once

// Exact integer arithmetic used by the certificate legs: prime factorizations,
// p-adic valuations of factorials and of |GL_d(F_2)|, multiplicative orders.

#include <cstdint>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace vscert {

using BigInt = boost::multiprecision::cpp_int;

/// Prime -> exponent. Never contains zero exponents.
using Factorization = std::map<std::uint64_t, unsigned>;

namespace arith {

bool is_prime(std::uint64_t n);
Factorization factor(std::uint64_t n);

BigInt to_integer(const Factorization& f);
Factorization multiply(const Factorization& a, const Factorization& b);
/// True when a divides b, comparing exponents prime by prime.
bool divides(const Factorization& a, const Factorization& b);
std::string to_string(const Factorization& f);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// v_p(n) for n > 0.
unsigned valuation(std::uint64_t n, std::uint64_t p);

/// Legendre: v_p(d!) = sum_i floor(d / p^i).
std::uint64_t factorial_valuation(std::uint64_t d, std::uint64_t p);

/// v_p(d!/2). Requires d >= 2.
std::uint64_t half_factorial_valuation(std::uint64_t d, std::uint64_t p);

/// v_p(2^k - 1) for odd prime p and k >= 1, computed without big numbers.
std::uint64_t mersenne_valuation(std::uint64_t k, std::uint64_t p);

/// v_p(|GL_d(F_2)|) where |GL_d(F_2)| = 2^{d(d-1)/2} * prod_{k=1..d} (2^k - 1).
std::uint64_t gl2_valuation(std::uint64_t d, std::uint64_t p);

/// Smallest k >= 1 with 2^k = 1 mod p (p odd prime).
std::uint64_t order_of_two_mod(std::uint64_t p);

/// |PSL_m(F_q)| = q^{m(m-1)/2} prod_{i=2..m}(q^i - 1) / gcd(m, q-1).
Factorization psl_order(unsigned m, std::uint64_t q);
/// |PGL_m(F_q)| = q^{m(m-1)/2} prod_{i=2..m}(q^i - 1).
Factorization pgl_order(unsigned m, std::uint64_t q);

/// (q^m - 1)/(q - 1), throws on overflow.
std::uint64_t projective_point_count(unsigned m, std::uint64_t q);

} // namespace arith
} // namespace vscert
