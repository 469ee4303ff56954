#include "vscert/exclusion.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vscert {

std::uint64_t genus_of(std::uint64_t n)
{
    if (n < 5)
        throw std::invalid_argument("genus_of: n must be at least 5");
    return (n - 1) / 2;
}

namespace {

unsigned strip_twos(BigInt& x)
{
    unsigned v = 0;
    while (x != 0 && (x & 1) == 0) {
        x >>= 1;
        ++v;
    }
    return v;
}

} // namespace

bool is_square_in_q2(const Rational& x)
{
    if (x == 0)
        throw std::invalid_argument("is_square_in_q2: zero");
    BigInt num = boost::multiprecision::numerator(x);
    BigInt den = boost::multiprecision::denominator(x);
    const bool negative = num < 0;
    if (negative)
        num = -num;
    const int v = static_cast<int>(strip_twos(num)) - static_cast<int>(strip_twos(den));
    if (v % 2 != 0)
        return false;
    // num/den = num * den mod 8, since den^2 = 1 mod 8 for odd den.
    unsigned r = static_cast<unsigned>(((num % 8) * (den % 8)) % 8);
    if (negative)
        r = (8 - r) % 8;
    return r == 1;
}

Rational parse_rational(std::string_view text)
{
    const std::string s(text);
    const auto slash = s.find('/');
    auto parse_int = [&](const std::string& part) {
        std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i == part.size() || part.find_first_not_of("0123456789", i) != std::string::npos)
            throw std::invalid_argument("parse_rational: bad number '" + s + "'");
        return BigInt(part[0] == '+' ? part.substr(1) : part);
    };
    if (slash == std::string::npos)
        return Rational(parse_int(s));
    const BigInt den = parse_int(s.substr(slash + 1));
    if (den <= 0)
        throw std::invalid_argument("parse_rational: denominator must be positive");
    return Rational(parse_int(s.substr(0, slash)), den);
}

ProofOrFact central_kernel_gate(const Factorization& order, const CaseFacts& facts, std::uint64_t g, bool simple)
{
    ProofOrFact out;
    if (g < 1)
        throw std::invalid_argument("central_kernel_gate: g must be positive");
    if (simple) {
        for (auto [p, e] : order) {
            const auto bound = arith::gl2_valuation(g, p);
            if (e > bound) {
                std::ostringstream os;
                os << "v_" << p << "(|G|) = " << e << " > v_" << p << "(|GL_" << g << "(F_2)|) = " << bound
                   << "; the simple group G has no nontrivial homomorphism to GL_d(F_2) for d <= " << g;
                out.kind = EvidenceKind::arithmetic_proof;
                out.detail = os.str();
                return out;
            }
        }
    }
    if (auto f = facts.integer("min_nontrivial_dim_mod2"); f && *f->evaluated > static_cast<std::int64_t>(g)) {
        out.kind = EvidenceKind::cited_fact;
        out.detail = "nontrivial 2-modular dimensions are >= " + std::to_string(*f->evaluated) + " > g = " +
                     std::to_string(g);
        out.facts.push_back(*f);
        return out;
    }
    out.detail = "no arithmetic proof and no ledger bound above g = " + std::to_string(g);
    return out;
}

ProofOrFact double_cover_gate(const CaseFacts& facts, std::uint64_t g)
{
    ProofOrFact out;
    if (g < 1)
        throw std::invalid_argument("double_cover_gate: g must be positive");
    const auto two_g = static_cast<std::int64_t>(2 * g);

    if (auto f = facts.integer("min_faithful_projective_dim"); f && *f->evaluated > two_g) {
        out.kind = EvidenceKind::cited_fact;
        out.detail = "nontrivial projective representations in characteristic 0 have dimension >= " +
                     std::to_string(*f->evaluated) + " > 2g = " + std::to_string(two_g);
        out.facts.push_back(*f);
        return out;
    }
    if (auto f = facts.raw("excluded_2adic_dims"); f) {
        const auto& dims = f->value;
        if (std::any_of(dims.begin(), dims.end(), [&](const auto& d) { return d.template get<std::int64_t>() == two_g; })) {
            out.kind = EvidenceKind::cited_fact;
            out.detail = "dimension 2g = " + std::to_string(two_g) +
                         " is excluded for faithful absolutely irreducible Q_2-representations of G and its double covers";
            out.facts.push_back(*f);
            return out;
        }
    }
    auto ordinary = facts.integer("min_faithful_ordinary_dim");
    auto obstruction = facts.raw("double_cover_2g_char_field_obstruction");
    if (ordinary && *ordinary->evaluated > two_g && obstruction) {
        const auto x = parse_rational(obstruction->value.get<std::string>());
        if (!is_square_in_q2(x)) {
            out.kind = EvidenceKind::cited_fact;
            out.detail = "G and trivial double covers: faithful dimension >= " + std::to_string(*ordinary->evaluated) +
                         " > 2g = " + std::to_string(two_g) + "; nontrivial double cover: each degree-" +
                         std::to_string(two_g) + " character takes a value whose square is " +
                         obstruction->value.get<std::string>() + ", and is_square_in_q2(" +
                         obstruction->value.get<std::string>() + ") = false";
            out.facts.push_back(*ordinary);
            out.facts.push_back(*obstruction);
            return out;
        }
    }
    out.detail = "no ledger route excludes dimension 2g = " + std::to_string(two_g);
    return out;
}

ExclusionCertificate not_supersingular(const std::string& case_key, std::uint64_t n, const Factorization& order,
                                       bool simple, const CaseFacts& facts)
{
    ExclusionCertificate cert;
    cert.case_key = case_key;
    cert.n = n;
    cert.g = genus_of(n);
    cert.applicable = n % 2 == 0;
    if (!cert.applicable) {
        cert.reason = "n is odd: NOT_APPLICABLE";
        return cert;
    }
    cert.gate1 = central_kernel_gate(order, facts, cert.g, simple);
    cert.gate2 = double_cover_gate(facts, cert.g);
    cert.verdict = cert.gate1.closed() && cert.gate2.closed();
    if (!cert.gate1.closed())
        cert.reason = "gate 1 (central kernel) is UNKNOWN";
    else if (!cert.gate2.closed())
        cert.reason = "gate 2 (double cover) is UNKNOWN";
    return cert;
}

} // namespace vscert
