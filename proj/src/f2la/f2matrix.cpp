#include "vscert/f2matrix.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace vscert {

using Word = F2Matrix::Word;

namespace {

inline void xor_into(Word* dst, const Word* src, std::size_t from, std::size_t n)
{
    for (std::size_t w = from; w < n; ++w)
        dst[w] ^= src[w];
}

} // namespace

bool is_zero_vector(std::span<const Word> v) noexcept
{
    for (Word w : v)
        if (w != 0)
            return false;
    return true;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(f2_words(cols)), data_(rows * f2_words(cols), 0)
{
}

F2Matrix F2Matrix::identity(std::size_t n)
{
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<std::vector<int>>& rows)
{
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    F2Matrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw std::invalid_argument("F2Matrix::from_rows: ragged rows");
        for (std::size_t c = 0; c < cols; ++c)
            m.set(r, c, rows[r][c] & 1);
    }
    return m;
}

void F2Matrix::append_row(std::span<const Word> words)
{
    if (words.size() != stride_)
        throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), words.begin(), words.end());
    ++rows_;
}

F2Matrix F2Matrix::row_matrix(std::size_t r) const
{
    F2Matrix out(1, cols_);
    auto src = row(r);
    std::copy(src.begin(), src.end(), out.row(0).begin());
    return out;
}

F2Matrix F2Matrix::transpose() const
{
    F2Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            Word bits = rw[w];
            while (bits != 0) {
                const unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                t.set(w * 64 + b, r, true);
                bits &= bits - 1;
            }
        }
    }
    return t;
}

bool F2Matrix::is_zero() const noexcept
{
    return is_zero_vector(data_);
}

bool F2Matrix::is_identity() const noexcept
{
    if (rows_ != cols_)
        return false;
    for (std::size_t r = 0; r < rows_; ++r) {
        auto rw = row(r);
        for (std::size_t w = 0; w < stride_; ++w) {
            const Word expect = (r / 64 == w) ? (Word{1} << (r % 64)) : 0;
            if (rw[w] != expect)
                return false;
        }
    }
    return true;
}

std::size_t F2Matrix::popcount() const noexcept
{
    std::size_t n = 0;
    for (Word w : data_)
        n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

F2Matrix& F2Matrix::operator+=(const F2Matrix& other)
{
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("F2Matrix sum: dimension mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] ^= other.data_[i];
    return *this;
}

RrefResult rref(const F2Matrix& m)
{
    F2Matrix a = m;
    const std::size_t stride = a.words_per_row();
    std::vector<std::size_t> pivots;
    std::size_t prow = 0;
    for (std::size_t col = 0; col < a.cols() && prow < a.rows(); ++col) {
        const std::size_t w = col / 64;
        const Word bit = Word{1} << (col % 64);
        std::size_t r = prow;
        while (r < a.rows() && !(a.row(r)[w] & bit))
            ++r;
        if (r == a.rows())
            continue;
        if (r != prow) {
            auto x = a.row(r);
            auto y = a.row(prow);
            std::swap_ranges(x.begin(), x.end(), y.begin());
        }
        const Word* src = a.row(prow).data();
        for (std::size_t k = 0; k < a.rows(); ++k) {
            if (k == prow)
                continue;
            Word* dst = a.row(k).data();
            if (dst[w] & bit)
                xor_into(dst, src, w, stride);
        }
        pivots.push_back(col);
        ++prow;
    }
    RrefResult out;
    out.rank = prow;
    out.pivots = std::move(pivots);
    out.reduced = F2Matrix(0, a.cols());
    for (std::size_t r = 0; r < prow; ++r)
        out.reduced.append_row(a.row(r));
    return out;
}

std::size_t rank(const F2Matrix& m)
{
    return rref(m).rank;
}

F2Matrix nullspace(const F2Matrix& m)
{
    const auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    F2Matrix basis(0, m.cols());
    F2Vector v(f2_words(m.cols()));
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::fill(v.begin(), v.end(), 0);
        flip_bit(v, f);
        for (std::size_t i = 0; i < r.rank; ++i)
            if (r.reduced.get(i, f))
                flip_bit(v, r.pivots[i]);
        basis.append_row(v);
    }
    return basis;
}

F2Matrix left_nullspace(const F2Matrix& m)
{
    return nullspace(m.transpose());
}

std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b)
{
    if (b.size() != f2_words(m.rows()))
        throw std::invalid_argument("solve: right-hand side has the wrong length");
    F2Matrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.get(r, c))
                aug.set(r, c, true);
        if (bit_of(b, r))
            aug.set(r, m.cols(), true);
    }
    const auto red = rref(aug);
    if (!red.pivots.empty() && red.pivots.back() == m.cols())
        return std::nullopt;
    F2Vector x(f2_words(m.cols()), 0);
    for (std::size_t i = 0; i < red.rank; ++i)
        if (red.reduced.get(i, m.cols()))
            flip_bit(x, red.pivots[i]);
    return x;
}

F2Matrix mat_mul(const F2Matrix& a, const F2Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul: dimension mismatch");
    F2Matrix c(a.rows(), b.cols());
    const std::size_t stride = c.words_per_row();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto ar = a.row(i);
        Word* dst = c.row(i).data();
        for (std::size_t w = 0; w < ar.size(); ++w) {
            Word bits = ar[w];
            while (bits != 0) {
                const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                xor_into(dst, b.row(k).data(), 0, stride);
                bits &= bits - 1;
            }
        }
    }
    return c;
}

F2Matrix mat_mul_m4rm(const F2Matrix& a, const F2Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("mat_mul_m4rm: dimension mismatch");
    constexpr std::size_t k = 8;
    F2Matrix c(a.rows(), b.cols());
    const std::size_t stride = c.words_per_row();
    std::vector<Word> table((std::size_t{1} << k) * stride);
    for (std::size_t k0 = 0; k0 < b.rows(); k0 += k) {
        const std::size_t width = std::min(k, b.rows() - k0);
        const std::size_t entries = std::size_t{1} << width;
        // Gray-code fill: table[g] = sum of rows k0 + j for bits j of g.
        std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(stride), 0);
        for (std::size_t i = 1; i < entries; ++i) {
            const std::size_t gray = i ^ (i >> 1);
            const std::size_t prev = (i - 1) ^ ((i - 1) >> 1);
            const std::size_t changed = static_cast<std::size_t>(std::countr_zero(gray ^ prev));
            Word* dst = table.data() + gray * stride;
            const Word* from = table.data() + prev * stride;
            const Word* row = b.row(k0 + changed).data();
            for (std::size_t w = 0; w < stride; ++w)
                dst[w] = from[w] ^ row[w];
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            auto ar = a.row(i);
            std::size_t idx = 0;
            for (std::size_t j = 0; j < width; ++j)
                if (bit_of(ar, k0 + j))
                    idx |= std::size_t{1} << j;
            if (idx != 0)
                xor_into(c.row(i).data(), table.data() + idx * stride, 0, stride);
        }
    }
    return c;
}

F2Matrix kron(const F2Matrix& a, const F2Matrix& b)
{
    F2Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.get(i, j))
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (b.get(k, l))
                        out.set(i * b.rows() + k, j * b.cols() + l, true);
        }
    return out;
}

F2Vector vec_mul(std::span<const Word> v, const F2Matrix& m)
{
    if (v.size() != f2_words(m.rows()))
        throw std::invalid_argument("vec_mul: dimension mismatch");
    F2Vector out(m.words_per_row(), 0);
    for (std::size_t w = 0; w < v.size(); ++w) {
        Word bits = v[w];
        while (bits != 0) {
            const std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
            xor_into(out.data(), m.row(k).data(), 0, out.size());
            bits &= bits - 1;
        }
    }
    return out;
}

std::optional<F2Matrix> inverse(const F2Matrix& m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix is not square");
    const std::size_t n = m.rows();
    F2Matrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            if (m.get(r, c))
                aug.set(r, c, true);
        aug.set(r, n + r, true);
    }
    const auto red = rref(aug);
    if (red.rank < n || (n > 0 && red.pivots[n - 1] != n - 1))
        return std::nullopt;
    F2Matrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (red.reduced.get(r, n + c))
                inv.set(r, c, true);
    return inv;
}

void EchelonBasis::reduce(std::span<Word> v) const
{
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        const std::size_t p = pivots_[i];
        if ((v[p / 64] >> (p % 64)) & 1u)
            xor_into(v.data(), rows_.data() + i * stride_, 0, stride_);
    }
}

bool EchelonBasis::contains(std::span<const Word> v) const
{
    F2Vector tmp(v.begin(), v.end());
    reduce(tmp);
    return is_zero_vector(tmp);
}

bool EchelonBasis::insert(F2Vector v)
{
    if (v.size() != stride_)
        throw std::invalid_argument("EchelonBasis::insert: width mismatch");
    reduce(v);
    for (std::size_t w = 0; w < stride_; ++w) {
        if (v[w] == 0)
            continue;
        pivots_.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(v[w])));
        rows_.insert(rows_.end(), v.begin(), v.end());
        return true;
    }
    return false;
}

F2Matrix EchelonBasis::to_rref() const
{
    F2Matrix m(0, cols_);
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        m.append_row(row(i));
    return rref(m).reduced;
}

} // namespace vscert
