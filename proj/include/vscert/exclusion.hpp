#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "vscert/evidence.hpp"

namespace vscert {

using Rational = boost::multiprecision::cpp_rational;

/// floor((n-1)/2), the genus of y^2 = f(x) with deg f = n. Requires n >= 5.
std::uint64_t genus_of(std::uint64_t n);

/// Writes x = 2^v u with u a 2-adic unit; x is a square in Q_2 iff v is even
/// and u = 1 mod 8. Throws on zero.
bool is_square_in_q2(const Rational& x);
/// "p", "-p" or "p/q". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

/// Every homomorphism G -> GL_d(F_2) with d <= g is trivial: arithmetic when
/// |G| does not divide |GL_g(F_2)|, else a ledger bound on nontrivial
/// 2-modular dimensions exceeding g.
ProofOrFact central_kernel_gate(const Factorization& order, const CaseFacts& facts, std::uint64_t g, bool simple);

/// Neither G nor a double cover has a faithful absolutely irreducible
/// representation of dimension 2g over Q_2. Routes: projective dimension
/// bound above 2g; ordinary bound above 2g plus a degree-2g character value
/// of the double cover whose square is not a 2-adic square; an explicit list
/// of excluded dimensions.
ProofOrFact double_cover_gate(const CaseFacts& facts, std::uint64_t g);

struct ExclusionCertificate {
    std::string case_key;
    std::uint64_t n = 0;
    std::uint64_t g = 0;
    bool applicable = false; // n even
    ProofOrFact gate1;
    ProofOrFact gate2;
    bool verdict = false;
    std::string reason;
};

/// Both gates for even n; NOT_APPLICABLE for odd n.
ExclusionCertificate not_supersingular(const std::string& case_key, std::uint64_t n, const Factorization& order,
                                       bool simple, const CaseFacts& facts);

} // namespace vscert
