#include "vscert/projective.hpp"

#include <stdexcept>

#include "vscert/arith.hpp"

namespace vscert {

std::vector<FqElement> normalize(const FqField& field, std::vector<FqElement> v)
{
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0)
            continue;
        const FqElement s = field.inv(v[i]);
        for (std::size_t j = i; j < v.size(); ++j)
            v[j] = field.mul(v[j], s);
        return v;
    }
    throw std::invalid_argument("normalize: zero vector has no projective point");
}

namespace {

FqElement determinant_of(const FqField& F, unsigned m, std::vector<FqElement> a)
{
    FqElement det = 1;
    for (unsigned col = 0; col < m; ++col) {
        unsigned pivot = col;
        while (pivot < m && a[pivot * m + col] == 0)
            ++pivot;
        if (pivot == m)
            return 0;
        if (pivot != col) {
            for (unsigned c = 0; c < m; ++c)
                std::swap(a[pivot * m + c], a[col * m + c]);
            det = F.neg(det);
        }
        const FqElement p = a[col * m + col];
        det = F.mul(det, p);
        const FqElement pinv = F.inv(p);
        for (unsigned r = col + 1; r < m; ++r) {
            const FqElement f = F.mul(a[r * m + col], pinv);
            if (f == 0)
                continue;
            for (unsigned c = col; c < m; ++c)
                a[r * m + c] = F.sub(a[r * m + c], F.mul(f, a[col * m + c]));
        }
    }
    return det;
}

} // namespace

MatrixFq::MatrixFq(const FqField& field, unsigned m, std::vector<FqElement> entries)
    : field_(&field), m_(m), entries_(std::move(entries))
{
    if (entries_.size() != std::size_t{m} * m)
        throw std::invalid_argument("MatrixFq: entry count does not match m*m");
    for (FqElement x : entries_)
        if (x >= field.order())
            throw std::invalid_argument("MatrixFq: entry outside the field");
    det_ = determinant_of(field, m, entries_);
}

MatrixFq MatrixFq::identity(const FqField& field, unsigned m)
{
    return scalar(field, m, 1);
}

MatrixFq MatrixFq::scalar(const FqField& field, unsigned m, FqElement c)
{
    std::vector<FqElement> e(std::size_t{m} * m, 0);
    for (unsigned i = 0; i < m; ++i)
        e[i * m + i] = c;
    return MatrixFq(field, m, std::move(e));
}

MatrixFq MatrixFq::transvection(const FqField& field, unsigned m, unsigned row, unsigned col, FqElement c)
{
    if (row == col || row >= m || col >= m)
        throw std::invalid_argument("transvection: need distinct in-range row and column");
    std::vector<FqElement> e(std::size_t{m} * m, 0);
    for (unsigned i = 0; i < m; ++i)
        e[i * m + i] = 1;
    e[row * m + col] = c;
    return MatrixFq(field, m, std::move(e));
}

bool MatrixFq::is_identity() const
{
    for (unsigned r = 0; r < m_; ++r)
        for (unsigned c = 0; c < m_; ++c)
            if (at(r, c) != (r == c ? 1u : 0u))
                return false;
    return true;
}

std::vector<FqElement> MatrixFq::apply(const std::vector<FqElement>& v) const
{
    if (v.size() != m_)
        throw std::invalid_argument("MatrixFq::apply: dimension mismatch");
    std::vector<FqElement> out(m_, 0);
    for (unsigned r = 0; r < m_; ++r) {
        FqElement acc = 0;
        for (unsigned c = 0; c < m_; ++c)
            acc = field_->add(acc, field_->mul(at(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

MatrixFq MatrixFq::operator*(const MatrixFq& other) const
{
    if (other.m_ != m_)
        throw std::invalid_argument("MatrixFq product: size mismatch");
    std::vector<FqElement> e(std::size_t{m_} * m_, 0);
    for (unsigned r = 0; r < m_; ++r)
        for (unsigned c = 0; c < m_; ++c) {
            FqElement acc = 0;
            for (unsigned k = 0; k < m_; ++k)
                acc = field_->add(acc, field_->mul(at(r, k), other.at(k, c)));
            e[r * m_ + c] = acc;
        }
    return MatrixFq(*field_, m_, std::move(e));
}

ProjectiveSpace::ProjectiveSpace(const FqField& field, unsigned m, std::size_t cap)
    : field_(&field), m_(m)
{
    if (m < 2)
        throw std::invalid_argument("ProjectiveSpace: m must be >= 2");
    const std::uint64_t n = arith::projective_point_count(m, field.order());
    if (n > cap)
        throw std::invalid_argument("ProjectiveSpace: point count exceeds cap");
    const std::uint32_t q = field.order();
    points_.reserve(n);
    // Lexicographic order: more leading zeros first, then the free tail in
    // increasing base-q order.
    for (unsigned lead = m; lead-- > 0;) {
        const unsigned free = m - 1 - lead;
        const std::uint64_t count = arith::ipow(q, free);
        for (std::uint64_t code = 0; code < count; ++code) {
            ProjPoint pt;
            pt.coords.assign(m, 0);
            pt.coords[lead] = 1;
            std::uint64_t c = code;
            for (unsigned k = m; k-- > lead + 1;) {
                pt.coords[k] = static_cast<FqElement>(c % q);
                c /= q;
            }
            points_.push_back(std::move(pt));
        }
    }
    for (std::size_t i = 0; i < points_.size(); ++i)
        index_.emplace(encode(points_[i].coords), i);
}

std::uint64_t ProjectiveSpace::encode(const std::vector<FqElement>& normalized) const
{
    std::uint64_t code = 0;
    for (FqElement x : normalized)
        code = code * field_->order() + x;
    return code;
}

std::size_t ProjectiveSpace::index_of(const std::vector<FqElement>& v) const
{
    if (v.size() != m_)
        throw std::invalid_argument("index_of: dimension mismatch");
    return index_.at(encode(normalize(*field_, v)));
}

std::vector<ProjPoint> enumerate_points(unsigned m, const FqField& field)
{
    return ProjectiveSpace(field, m).points();
}

std::vector<MatrixFq> sl_generators(unsigned m, const FqField& F)
{
    if (m < 2)
        throw std::invalid_argument("sl_generators: m must be >= 2");
    std::vector<MatrixFq> gens;
    gens.push_back(MatrixFq::transvection(F, m, 0, 1, 1));

    std::vector<FqElement> shift(std::size_t{m} * m, 0);
    for (unsigned i = 0; i + 1 < m; ++i)
        shift[(i + 1) * m + i] = 1; // column i is e_{i+1}
    shift[0 * m + (m - 1)] = (m % 2 == 1) ? 1 : F.neg(1);
    gens.emplace_back(F, m, std::move(shift));

    if (F.degree() > 1) {
        const FqElement w = F.primitive_element();
        std::vector<FqElement> d(std::size_t{m} * m, 0);
        for (unsigned i = 0; i < m; ++i)
            d[i * m + i] = 1;
        d[0] = w;
        d[1 * m + 1] = F.inv(w);
        gens.emplace_back(F, m, std::move(d));
    }
    for (const auto& g : gens)
        if (g.determinant() != 1)
            throw std::logic_error("sl_generators: generator outside SL");
    return gens;
}

std::vector<MatrixFq> gl_generators(unsigned m, const FqField& F)
{
    auto gens = sl_generators(m, F);
    std::vector<FqElement> d(std::size_t{m} * m, 0);
    for (unsigned i = 0; i < m; ++i)
        d[i * m + i] = 1;
    d[0] = F.primitive_element();
    gens.emplace_back(F, m, std::move(d));
    return gens;
}

Permutation action_to_permutation(const MatrixFq& A, const ProjectiveSpace& space)
{
    if (A.size() != space.dimension())
        throw std::invalid_argument("action_to_permutation: size mismatch");
    if (A.determinant() == 0)
        throw std::invalid_argument("action_to_permutation: singular matrix");
    std::vector<Point> img(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        img[i] = static_cast<Point>(space.index_of(A.apply(space.points()[i].coords)));
    return Permutation(std::move(img));
}

} // namespace vscert
