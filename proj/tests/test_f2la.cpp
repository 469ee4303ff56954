#include "doctest.h"

#include <random>

#include "vscert/f2matrix.hpp"

using namespace vscert;

namespace {

using Dense = std::vector<std::vector<int>>;

Dense random_dense(std::size_t r, std::size_t c, std::mt19937_64& rng, int density = 2)
{
    Dense d(r, std::vector<int>(c));
    for (auto& row : d)
        for (auto& x : row)
            x = rng() % density == 0;
    return d;
}

// Plain Gaussian elimination on ints mod 2.
std::size_t naive_rank(Dense a)
{
    std::size_t r = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && !a[p][c])
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < a.size(); ++i)
            if (i != r && a[i][c])
                for (std::size_t k = 0; k < cols; ++k)
                    a[i][k] ^= a[r][k];
        ++r;
    }
    return r;
}

Dense naive_mul(const Dense& a, const Dense& b)
{
    Dense c(a.size(), std::vector<int>(b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j)
            for (std::size_t k = 0; k < b.size(); ++k)
                c[i][j] ^= a[i][k] & b[k][j];
    return c;
}

Dense to_dense(const F2Matrix& m)
{
    Dense d(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            d[i][j] = m.get(i, j);
    return d;
}

} // namespace

TEST_CASE("rank and products against naive oracles")
{
    std::mt19937_64 rng(1);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = 1 + rng() % 90, k = 1 + rng() % 90, c = 1 + rng() % 90;
        const Dense a = random_dense(r, k, rng, 1 + t % 4), b = random_dense(k, c, rng);
        const auto ma = F2Matrix::from_rows(a), mb = F2Matrix::from_rows(b);
        CHECK(rank(ma) == naive_rank(a));
        CHECK(to_dense(mat_mul(ma, mb)) == naive_mul(a, b));
        CHECK(mat_mul_m4rm(ma, mb) == mat_mul(ma, mb));
        CHECK(to_dense(ma.transpose().transpose()) == a);
        // rank-nullity on both sides
        const auto ns = nullspace(ma);
        const auto lns = left_nullspace(ma);
        CHECK(ns.rows() + rank(ma) == k);
        CHECK(lns.rows() + rank(ma) == r);
        if (ns.rows())
            CHECK(mat_mul(ma, ns.transpose()).is_zero());
        if (lns.rows())
            CHECK(mat_mul(lns, ma).is_zero());
        CHECK(rank(ns) == ns.rows());
    }
    CHECK_THROWS(mat_mul(F2Matrix(3, 4), F2Matrix(3, 4)));
}

TEST_CASE("vec_mul, solve and inverse")
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng() % 70;
        const Dense a = random_dense(n, n, rng);
        const auto m = F2Matrix::from_rows(a);
        const auto inv = inverse(m);
        CHECK(inv.has_value() == (naive_rank(a) == n));
        if (inv) {
            CHECK(mat_mul(m, *inv).is_identity());
            CHECK(mat_mul(*inv, m).is_identity());
        }
        const Dense v = random_dense(1, n, rng);
        const auto mv = F2Matrix::from_rows(v);
        const auto expect = F2Matrix::from_rows(naive_mul(v, a));
        CHECK(vec_mul(mv.row(0), m) == F2Vector(expect.row(0).begin(), expect.row(0).end()));
        // solvable right-hand side: b = M x0
        const Dense x0 = random_dense(n, 1, rng);
        const Dense bd = naive_mul(a, x0);
        Dense bt(1, std::vector<int>(n));
        for (std::size_t i = 0; i < n; ++i)
            bt[0][i] = bd[i][0];
        const auto b = F2Matrix::from_rows(bt);
        const auto x = solve(m, F2Vector(b.row(0).begin(), b.row(0).end()));
        REQUIRE(x.has_value());
        F2Matrix xm(0, n);
        xm.append_row(*x);
        CHECK(mat_mul(m, xm.transpose()).transpose() == b);
    }
    // inconsistent system
    const auto z = F2Matrix::from_rows({{1, 1}, {1, 1}});
    CHECK_FALSE(solve(z, F2Matrix::from_rows({{1, 0}}).data()).has_value());
}

TEST_CASE("kron index probes")
{
    std::mt19937_64 rng(4);
    const Dense a = random_dense(3, 5, rng), b = random_dense(4, 2, rng);
    const auto k = kron(F2Matrix::from_rows(a), F2Matrix::from_rows(b));
    REQUIRE(k.rows() == 12);
    REQUIRE(k.cols() == 10);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 5; ++j)
            for (std::size_t r = 0; r < 4; ++r)
                for (std::size_t s = 0; s < 2; ++s)
                    CHECK(k.get(i * 4 + r, j * 2 + s) == (a[i][j] && b[r][s]));
}

TEST_CASE("echelon basis")
{
    std::mt19937_64 rng(6);
    const Dense a = random_dense(30, 100, rng, 3);
    EchelonBasis eb(100);
    std::size_t added = 0;
    for (const auto& row : a) {
        const auto m = F2Matrix::from_rows({row});
        added += eb.insert(F2Vector(m.row(0).begin(), m.row(0).end()));
    }
    CHECK(added == naive_rank(a));
    CHECK(eb.dim() == added);
    CHECK(eb.to_rref() == rref(F2Matrix::from_rows(a)).reduced);
    for (const auto& row : a) {
        const auto m = F2Matrix::from_rows({row});
        CHECK(eb.contains(m.row(0)));
    }
}
