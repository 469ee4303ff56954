#include "vscert/field.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "vscert/arith.hpp"

namespace vscert {

namespace {

using Poly = std::vector<std::uint32_t>;

// Conway polynomials, coefficients low degree first.
const std::map<std::pair<std::uint32_t, unsigned>, Poly>& conway_table()
{
    static const std::map<std::pair<std::uint32_t, unsigned>, Poly> table = {
        {{3, 2}, {2, 2, 1}},       // x^2 + 2x + 2
        {{3, 3}, {1, 2, 0, 1}},    // x^3 + 2x + 1
        {{3, 4}, {2, 0, 0, 2, 1}}, // x^4 + 2x^3 + 2
        {{5, 2}, {2, 4, 1}},       // x^2 + 4x + 2
        {{5, 3}, {3, 3, 0, 1}},    // x^3 + 3x + 3
        {{7, 2}, {3, 6, 1}},       // x^2 + 6x + 3
        {{7, 3}, {4, 0, 6, 1}},    // x^3 + 6x^2 + 4
    };
    return table;
}

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// Remainder of a modulo monic b over F_p.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p)
{
    trim(a);
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const std::uint64_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            const std::uint64_t sub = lead * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

} // namespace

bool FqField::is_irreducible(std::uint32_t p, const Poly& monic)
{
    if (monic.size() < 2 || monic.back() != 1)
        throw std::invalid_argument("is_irreducible: expected a monic polynomial of degree >= 1");
    const unsigned deg = static_cast<unsigned>(monic.size() - 1);
    for (unsigned d = 1; d <= deg / 2; ++d) {
        // Enumerate every monic polynomial of degree d.
        const std::uint64_t count = arith::ipow(p, d);
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly divisor(d + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < d; ++i) {
                divisor[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            divisor[d] = 1;
            if (poly_mod(monic, divisor, p).empty())
                return false;
        }
    }
    return true;
}

Poly FqField::default_modulus(std::uint32_t p, unsigned e)
{
    if (e == 1)
        return {0, 1};
    const auto& table = conway_table();
    if (auto it = table.find({p, e}); it != table.end())
        return it->second;
    const std::uint64_t count = arith::ipow(p, e);
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly f(e + 1, 0);
        std::uint64_t c = code;
        for (unsigned i = 0; i < e; ++i) {
            f[i] = static_cast<std::uint32_t>(c % p);
            c /= p;
        }
        f[e] = 1;
        if (f[0] == 0 || !is_irreducible(p, f))
            continue;
        // Accept only if x has order q - 1 in F_p[x]/(f).
        const std::uint64_t q = count;
        auto order_factors = arith::factor(q - 1);
        bool primitive = true;
        for (const auto& [r, ex] : order_factors) {
            (void)ex;
            // x^((q-1)/r) mod f, by repeated squaring on polynomials.
            std::uint64_t k = (q - 1) / r;
            Poly result{1};
            Poly base{0, 1};
            while (k > 0) {
                if (k & 1) {
                    Poly prod(result.size() + base.size() - 1, 0);
                    for (std::size_t i = 0; i < result.size(); ++i)
                        for (std::size_t j = 0; j < base.size(); ++j)
                            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{result[i]} * base[j]) % p);
                    result = poly_mod(prod, f, p);
                }
                Poly sq(2 * base.size() - 1, 0);
                for (std::size_t i = 0; i < base.size(); ++i)
                    for (std::size_t j = 0; j < base.size(); ++j)
                        sq[i + j] = static_cast<std::uint32_t>((sq[i + j] + std::uint64_t{base[i]} * base[j]) % p);
                base = poly_mod(sq, f, p);
                if (base.empty())
                    base = {0};
                k >>= 1;
            }
            if (result.size() == 1 && result[0] == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive)
            return f;
    }
    throw std::logic_error("default_modulus: no primitive irreducible found");
}

FqField::FqField(std::uint32_t p, unsigned e, std::uint64_t cap)
    : p_(p), e_(e)
{
    if (e == 0)
        throw std::invalid_argument("FqField: extension degree must be >= 1");
    if (p == 2)
        throw std::invalid_argument("FqField: characteristic must be odd");
    if (!arith::is_prime(p))
        throw std::invalid_argument("FqField: p is not prime");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < e; ++i) {
        q *= p;
        if (q > cap)
            throw std::invalid_argument("FqField: field size exceeds cap");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = default_modulus(p, e);
    if (!is_irreducible(p, modulus_))
        throw std::logic_error("FqField: modulus is reducible");

    // Find the smallest primitive element and build log tables.
    auto order_factors = arith::factor(q_ - 1);
    for (FqElement g = 1; g < q_; ++g) {
        bool primitive = true;
        for (const auto& [r, ex] : order_factors) {
            (void)ex;
            FqElement acc = 1;
            FqElement base = g;
            std::uint64_t k = (q_ - 1) / r;
            while (k > 0) {
                if (k & 1)
                    acc = poly_mul_slow(acc, base);
                base = poly_mul_slow(base, base);
                k >>= 1;
            }
            if (acc == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            primitive_ = g;
            break;
        }
    }
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    FqElement x = 1;
    for (std::uint32_t k = 0; k + 1 < q_; ++k) {
        exp_[k] = x;
        log_[x] = k;
        x = poly_mul_slow(x, primitive_);
    }
    if (x != 1)
        throw std::logic_error("FqField: primitive element search failed");
}

FqElement FqField::poly_mul_slow(FqElement a, FqElement b) const
{
    Poly pa(e_, 0), pb(e_, 0);
    for (unsigned i = 0; i < e_; ++i) {
        pa[i] = a % p_;
        a /= p_;
        pb[i] = b % p_;
        b /= p_;
    }
    Poly prod(2 * e_ - 1, 0);
    for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j)
            prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{pa[i]} * pb[j]) % p_);
    Poly r = poly_mod(prod, modulus_, p_);
    FqElement out = 0;
    for (std::size_t i = r.size(); i-- > 0;)
        out = out * p_ + r[i];
    return out;
}

FqElement FqField::add(FqElement a, FqElement b) const
{
    if (e_ == 1)
        return (a + b) % p_;
    FqElement out = 0;
    FqElement scale = 1;
    for (unsigned i = 0; i < e_; ++i) {
        out += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

FqElement FqField::neg(FqElement a) const
{
    if (e_ == 1)
        return (p_ - a) % p_;
    FqElement out = 0;
    FqElement scale = 1;
    for (unsigned i = 0; i < e_; ++i) {
        out += ((p_ - a % p_) % p_) * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

FqElement FqField::sub(FqElement a, FqElement b) const
{
    return add(a, neg(b));
}

FqElement FqField::mul(FqElement a, FqElement b) const
{
    if (a == 0 || b == 0)
        return 0;
    std::uint64_t k = std::uint64_t{log_[a]} + log_[b];
    if (k >= q_ - 1)
        k -= q_ - 1;
    return exp_[k];
}

FqElement FqField::inv(FqElement a) const
{
    if (a == 0)
        throw std::domain_error("FqField::inv: zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FqElement FqField::pow(FqElement a, std::uint64_t k) const
{
    if (k == 0)
        return 1;
    if (a == 0)
        return 0;
    return exp_[(std::uint64_t{log_[a]} * (k % (q_ - 1))) % (q_ - 1)];
}

FqElement FqField::from_integer(std::int64_t k) const
{
    std::int64_t r = k % static_cast<std::int64_t>(p_);
    if (r < 0)
        r += p_;
    return static_cast<FqElement>(r);
}

} // namespace vscert
