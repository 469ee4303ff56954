#include "vscert/arith.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>

namespace vscert::arith {

namespace {

using u128 = unsigned __int128;

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod)
{
    std::uint64_t result = 1 % mod;
    base %= mod;
    while (exp > 0) {
        if (exp & 1)
            result = static_cast<std::uint64_t>(static_cast<u128>(result) * base % mod);
        base = static_cast<std::uint64_t>(static_cast<u128>(base) * base % mod);
        exp >>= 1;
    }
    return result;
}

Factorization divide_exact(Factorization a, const Factorization& b)
{
    for (const auto& [p, e] : b) {
        auto it = a.find(p);
        if (it == a.end() || it->second < e)
            throw std::logic_error("divide_exact: not a divisor");
        it->second -= e;
        if (it->second == 0)
            a.erase(it);
    }
    return a;
}

Factorization pgl_like(unsigned m, std::uint64_t q)
{
    if (m < 2)
        throw std::invalid_argument("linear group order: m must be >= 2");
    Factorization f;
    auto qf = factor(q);
    for (auto& [p, e] : qf)
        f[p] += e * (m * (m - 1) / 2);
    for (unsigned i = 2; i <= m; ++i) {
        BigInt term = BigInt(1);
        for (unsigned k = 0; k < i; ++k)
            term *= q;
        term -= 1;
        if (term > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("linear group order: q^m exceeds 64 bits");
        f = multiply(f, factor(static_cast<std::uint64_t>(term)));
    }
    return f;
}

} // namespace

bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0)
            return n == p;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = static_cast<std::uint64_t>(static_cast<u128>(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

Factorization factor(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("factor: zero has no factorization");
    Factorization f;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++f[p];
            n /= p;
        }
        if (n > 1 && is_prime(n))
            break;
    }
    if (n > 1)
        ++f[n];
    return f;
}

BigInt to_integer(const Factorization& f)
{
    BigInt r = 1;
    for (const auto& [p, e] : f)
        for (unsigned i = 0; i < e; ++i)
            r *= p;
    return r;
}

Factorization multiply(const Factorization& a, const Factorization& b)
{
    Factorization r = a;
    for (const auto& [p, e] : b)
        r[p] += e;
    return r;
}

bool divides(const Factorization& a, const Factorization& b)
{
    for (const auto& [p, e] : a) {
        auto it = b.find(p);
        if (it == b.end() || it->second < e)
            return false;
    }
    return true;
}

std::string to_string(const Factorization& f)
{
    if (f.empty())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, e] : f) {
        if (!first)
            os << '*';
        first = false;
        os << p;
        if (e > 1)
            os << '^' << e;
    }
    return os.str();
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b)
{
    while (b != 0) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
            throw std::overflow_error("ipow: overflow");
        r *= base;
    }
    return r;
}

unsigned valuation(std::uint64_t n, std::uint64_t p)
{
    if (n == 0 || p < 2)
        throw std::invalid_argument("valuation: need n > 0 and p >= 2");
    unsigned v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

std::uint64_t factorial_valuation(std::uint64_t d, std::uint64_t p)
{
    std::uint64_t v = 0;
    while (d > 0) {
        d /= p;
        v += d;
    }
    return v;
}

std::uint64_t half_factorial_valuation(std::uint64_t d, std::uint64_t p)
{
    if (d < 2)
        throw std::invalid_argument("half_factorial_valuation: d must be >= 2");
    auto v = factorial_valuation(d, p);
    return p == 2 ? v - 1 : v;
}

std::uint64_t order_of_two_mod(std::uint64_t p)
{
    if (p < 3 || p % 2 == 0)
        throw std::invalid_argument("order_of_two_mod: p must be an odd prime");
    // The order divides p - 1; test divisors in increasing order.
    std::uint64_t best = p - 1;
    for (std::uint64_t k = 1; k * k <= p - 1; ++k) {
        if ((p - 1) % k != 0)
            continue;
        if (powmod(2, k, p) == 1)
            return k;
        std::uint64_t other = (p - 1) / k;
        if (other < best && powmod(2, other, p) == 1)
            best = other;
    }
    return best;
}

std::uint64_t mersenne_valuation(std::uint64_t k, std::uint64_t p)
{
    if (k == 0)
        throw std::invalid_argument("mersenne_valuation: k must be >= 1");
    const std::uint64_t t = order_of_two_mod(p);
    if (k % t != 0)
        return 0;
    // Lifting the exponent: v_p(2^k - 1) = v_p(2^t - 1) + v_p(k / t).
    std::uint64_t base_val = 0;
    std::uint64_t pk = p;
    while (true) {
        if (powmod(2, t, pk) != 1)
            break;
        ++base_val;
        if (pk > std::numeric_limits<std::uint64_t>::max() / p / p)
            throw std::overflow_error("mersenne_valuation: modulus overflow");
        pk *= p;
    }
    return base_val + valuation(k / t, p);
}

std::uint64_t gl2_valuation(std::uint64_t d, std::uint64_t p)
{
    if (p == 2)
        return d * (d - 1) / 2;
    std::uint64_t v = 0;
    for (std::uint64_t k = 1; k <= d; ++k)
        v += mersenne_valuation(k, p);
    return v;
}

Factorization pgl_order(unsigned m, std::uint64_t q)
{
    return pgl_like(m, q);
}

Factorization psl_order(unsigned m, std::uint64_t q)
{
    auto f = pgl_like(m, q);
    // |SL| = |PGL|; |PSL| = |SL| / |Z(SL)| with |Z(SL)| = gcd(m, q-1).
    return divide_exact(std::move(f), factor(gcd(m, q - 1)));
}

std::uint64_t projective_point_count(unsigned m, std::uint64_t q)
{
    if (m < 1 || q < 2)
        throw std::invalid_argument("projective_point_count: need m >= 1, q >= 2");
    std::uint64_t n = 0;
    std::uint64_t term = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() - term)
            throw std::overflow_error("projective_point_count: overflow");
        n += term;
        if (i + 1 < m) {
            if (term > std::numeric_limits<std::uint64_t>::max() / q)
                throw std::overflow_error("projective_point_count: overflow");
            term *= q;
        }
    }
    return n;
}

} // namespace vscert::arith
