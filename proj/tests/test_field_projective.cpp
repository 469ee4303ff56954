#include "doctest.h"

#include <random>
#include <set>

#include "vscert/arith.hpp"
#include "vscert/permgroup.hpp"
#include "vscert/projective.hpp"

using namespace vscert;

namespace {

FqField make_field(std::uint64_t q)
{
    const auto f = arith::factor(q);
    return FqField(static_cast<std::uint32_t>(f.begin()->first), f.begin()->second);
}

MatrixFq random_invertible(const FqField& f, unsigned m, std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint32_t> d(0, f.order() - 1);
    for (;;) {
        std::vector<FqElement> e(m * m);
        for (auto& x : e)
            x = d(rng);
        MatrixFq a(f, m, e);
        if (a.determinant() != 0)
            return a;
    }
}

} // namespace

TEST_CASE("field axioms, exhaustive for small q")
{
    for (std::uint64_t q : {3, 5, 7, 9, 25, 27}) {
        const FqField f = make_field(q);
        CHECK(f.order() == q);
        for (FqElement a = 0; a < q; ++a) {
            CHECK(f.add(a, f.neg(a)) == 0);
            CHECK(f.mul(a, 1) == a);
            if (a != 0)
                CHECK(f.mul(a, f.inv(a)) == 1);
            for (FqElement b = 0; b < q; ++b) {
                CHECK(f.add(a, b) == f.add(b, a));
                CHECK(f.mul(a, b) == f.mul(b, a));
                CHECK(f.sub(f.add(a, b), b) == a);
                for (FqElement c = 0; c < q; c += 2)
                    CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
        // primitive element has order exactly q - 1
        const FqElement w = f.primitive_element();
        std::set<FqElement> powers;
        for (std::uint64_t k = 0; k < q - 1; ++k)
            powers.insert(f.pow(w, k));
        CHECK(powers.size() == q - 1);
        CHECK(FqField::is_irreducible(f.characteristic(), f.modulus()));
    }
    CHECK_THROWS(FqField(2, 1));
    CHECK_THROWS(FqField(9, 1));
    CHECK_THROWS(make_field(5).inv(0));
}

TEST_CASE("point counts and parity across the grid")
{
    for (std::uint64_t q : {3, 5, 7, 9})
        for (unsigned m : {2u, 3u, 4u}) {
            const FqField f = make_field(q);
            const ProjectiveSpace space(f, m);
            std::uint64_t expect = 0, pw = 1;
            for (unsigned i = 0; i < m; ++i, pw *= q)
                expect += pw;
            CHECK(space.size() == expect);
            CHECK(space.size() % 2 == m % 2);
            // lexicographic, normalised, distinct
            for (std::size_t i = 0; i < space.size(); ++i) {
                const auto& c = space.points()[i].coords;
                std::size_t k = 0;
                while (c[k] == 0)
                    ++k;
                CHECK(c[k] == 1);
                CHECK(space.index_of(c) == i);
                if (i)
                    CHECK(space.points()[i - 1] < space.points()[i]);
            }
        }
}

TEST_CASE("generators lie in SL and GL; action is a homomorphism")
{
    std::mt19937_64 rng(11);
    for (std::uint64_t q : {3, 5, 9})
        for (unsigned m : {3u, 4u}) {
            const FqField f = make_field(q);
            const ProjectiveSpace space(f, m);
            for (const auto& a : sl_generators(m, f))
                CHECK(a.determinant() == 1);
            const auto gl = gl_generators(m, f);
            CHECK(gl.back().determinant() == f.primitive_element());
            for (int i = 0; i < 100 / 6 + 1; ++i) {
                const MatrixFq a = random_invertible(f, m, rng);
                const MatrixFq b = random_invertible(f, m, rng);
                const Permutation pa = action_to_permutation(a, space);
                const Permutation pb = action_to_permutation(b, space);
                // x -> a(b x): composition as functions
                CHECK(action_to_permutation(a * b, space) == pa * pb);
                // scalars act trivially
                CHECK(action_to_permutation(MatrixFq::scalar(f, m, f.primitive_element()) * a, space) == pa);
            }
        }
}

TEST_CASE("transvection on 13 points, brute force")
{
    const FqField f = make_field(3);
    const ProjectiveSpace space(f, 3);
    const MatrixFq t = MatrixFq::transvection(f, 3, 0, 1, 1);
    const Permutation p = action_to_permutation(t, space);
    for (std::size_t i = 0; i < 13; ++i) {
        const auto& x = space.points()[i].coords;
        // (I + E01) x = (x0 + x1, x1, x2)
        std::vector<FqElement> y{f.add(x[0], x[1]), x[1], x[2]};
        CHECK(p(static_cast<Point>(i)) == space.index_of(y));
    }
    // fixes exactly the points of the hyperplane x1 = 0: (q^2 - 1)/(q - 1) = 4
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < 13; ++i)
        fixed += p(static_cast<Point>(i)) == i;
    CHECK(fixed == 4);
}

TEST_CASE("stabilizer chain orders match the order formula")
{
    for (std::uint64_t q : {3, 5, 7, 9})
        for (unsigned m : {2u, 3u, 4u}) {
            if (m == 4 && q > 5)
                continue;
            const FqField f = make_field(q);
            const ProjectiveSpace space(f, m);
            std::vector<Permutation> sl, gl;
            for (const auto& a : sl_generators(m, f))
                sl.push_back(action_to_permutation(a, space));
            for (const auto& a : gl_generators(m, f))
                gl.push_back(action_to_permutation(a, space));
            const auto g = PermGroup::build_chain(sl, space.size());
            const auto h = PermGroup::build_chain(gl, space.size());
            CHECK(g.order() == arith::to_integer(arith::psl_order(m, q)));
            CHECK(h.order() == arith::to_integer(arith::pgl_order(m, q)));
            CHECK(g.is_two_transitive());
            for (const auto& s : g.generators())
                CHECK(h.contains(s));
        }
}
