#pragma once

#include <cstdint>
#include <vector>

namespace vscert {

/// Element of F_q encoded as the integer sum c_i p^i of its coefficients in the
/// polynomial basis 1, x, ..., x^{e-1}.
using FqElement = std::uint32_t;

/// F_q for an odd prime power q = p^e, realised as F_p[x]/(modulus).
///
/// Multiplication goes through discrete log tables built from a primitive
/// element, so every instance costs O(q) memory. Immutable after construction.
class FqField {
public:
    static constexpr std::uint64_t default_cap = std::uint64_t{1} << 20;

    /// Throws std::invalid_argument for even or non-prime p, e == 0, or q > cap.
    FqField(std::uint32_t p, unsigned e, std::uint64_t cap = default_cap);

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return e_; }
    std::uint32_t order() const noexcept { return q_; }

    /// Monic modulus, coefficients low degree first (size e + 1).
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    /// Smallest (by encoding) element of multiplicative order q - 1.
    FqElement primitive_element() const noexcept { return primitive_; }

    FqElement zero() const noexcept { return 0; }
    FqElement one() const noexcept { return 1; }

    FqElement add(FqElement a, FqElement b) const;
    FqElement sub(FqElement a, FqElement b) const;
    FqElement neg(FqElement a) const;
    FqElement mul(FqElement a, FqElement b) const;
    /// Throws std::domain_error on zero.
    FqElement inv(FqElement a) const;
    FqElement pow(FqElement a, std::uint64_t k) const;

    /// Embeds the integer k (mod p) into the prime subfield.
    FqElement from_integer(std::int64_t k) const;

    /// Trial division by every monic polynomial of degree 1..deg/2.
    static bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);

    /// The shipped modulus for (p, e): a Conway polynomial when tabulated,
    /// otherwise the smallest monic irreducible whose root is primitive.
    static std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned e);

private:
    FqElement poly_mul_slow(FqElement a, FqElement b) const;

    std::uint32_t p_;
    unsigned e_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    FqElement primitive_ = 1;
    std::vector<std::uint32_t> log_;  // log_[a] for a != 0
    std::vector<FqElement> exp_;      // exp_[k] = primitive^k, k in [0, q-1)
};

} // namespace vscert
