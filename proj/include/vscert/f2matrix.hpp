#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace vscert {

/// Dense matrix over F_2, row-major, 64 columns per word. Pad bits past
/// cols() in the last word of each row are always zero.
class F2Matrix {
public:
    using Word = std::uint64_t;

    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols);

    static F2Matrix identity(std::size_t n);
    /// Builds a matrix from 0/1 rows; throws if rows are ragged.
    static F2Matrix from_rows(const std::vector<std::vector<int>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t words_per_row() const noexcept { return stride_; }

    bool get(std::size_t r, std::size_t c) const
    {
        return (data_[r * stride_ + c / 64] >> (c % 64)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v)
    {
        Word& w = data_[r * stride_ + c / 64];
        const Word bit = Word{1} << (c % 64);
        w = v ? (w | bit) : (w & ~bit);
    }
    void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / 64] ^= Word{1} << (c % 64); }

    std::span<Word> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }
    std::span<const Word> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }

    /// Appends a row of matching width.
    void append_row(std::span<const Word> words);
    /// Copy of the given row as a 1 x cols matrix.
    F2Matrix row_matrix(std::size_t r) const;
    F2Matrix transpose() const;
    bool is_zero() const noexcept;
    bool is_identity() const noexcept;
    std::size_t popcount() const noexcept;

    const std::vector<Word>& data() const noexcept { return data_; }

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;
    F2Matrix& operator+=(const F2Matrix& other);
    friend F2Matrix operator+(F2Matrix a, const F2Matrix& b) { return a += b; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> data_;
};

/// Row vector over F_2 (same packing as a single matrix row).
using F2Vector = std::vector<F2Matrix::Word>;

inline std::size_t f2_words(std::size_t bits) { return (bits + 63) / 64; }
inline bool bit_of(std::span<const F2Matrix::Word> v, std::size_t i) { return (v[i / 64] >> (i % 64)) & 1u; }
inline void flip_bit(std::span<F2Matrix::Word> v, std::size_t i) { v[i / 64] ^= F2Matrix::Word{1} << (i % 64); }
bool is_zero_vector(std::span<const F2Matrix::Word> v) noexcept;

struct RrefResult {
    F2Matrix reduced;                 // rank rows, reduced row-echelon form
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;  // pivot column of each row, increasing
};

/// Reduced row-echelon form by word-XOR sweeps. Zero rows are dropped.
RrefResult rref(const F2Matrix& m);
std::size_t rank(const F2Matrix& m);

/// Rows form a basis of {v : M v^T = 0}, i.e. the right nullspace.
F2Matrix nullspace(const F2Matrix& m);
/// Rows form a basis of {v : v M = 0}.
F2Matrix left_nullspace(const F2Matrix& m);

/// One x with M x^T = b^T, or nullopt when the system is inconsistent.
/// b has m.rows() bits.
std::optional<F2Vector> solve(const F2Matrix& m, const F2Vector& b);

/// Product by row-XOR sweeps. Throws std::invalid_argument on mismatch.
F2Matrix mat_mul(const F2Matrix& a, const F2Matrix& b);
/// Same contract as mat_mul, using 8-bit Gray-code tables (four Russians).
F2Matrix mat_mul_m4rm(const F2Matrix& a, const F2Matrix& b);
F2Matrix kron(const F2Matrix& a, const F2Matrix& b);

/// v M for a row vector v with m.rows() bits.
F2Vector vec_mul(std::span<const F2Matrix::Word> v, const F2Matrix& m);
/// Inverse, or nullopt when singular.
std::optional<F2Matrix> inverse(const F2Matrix& m);

/// Incrementally built semi-echelon basis: each stored row has a pivot column
/// that is zero in every row stored after it.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t cols) : cols_(cols), stride_(f2_words(cols)) {}

    std::size_t cols() const noexcept { return cols_; }
    std::size_t dim() const noexcept { return pivots_.size(); }

    /// Reduces v in place against the stored rows.
    void reduce(std::span<F2Matrix::Word> v) const;
    bool contains(std::span<const F2Matrix::Word> v) const;
    /// Reduces v and stores it if it is nonzero. Returns true when added.
    bool insert(F2Vector v);

    std::span<const F2Matrix::Word> row(std::size_t i) const { return {rows_.data() + i * stride_, stride_}; }
    /// Canonical reduced row-echelon matrix of the span.
    F2Matrix to_rref() const;

private:
    std::size_t cols_;
    std::size_t stride_;
    std::vector<F2Matrix::Word> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace vscert
