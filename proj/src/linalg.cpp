#include "parallelo/linalg.hpp"

#include <algorithm>

namespace parallelo {

Echelon rref(std::vector<QVec> rows, std::size_t cols) {
    Echelon out;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && sgn(rows[p][c]) == 0)
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[r], rows[p]);
        Rat inv = 1 / rows[r][c];
        for (std::size_t j = c; j < cols; ++j)
            rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0)
                continue;
            Rat f = rows[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (sgn(rows[r][j]) != 0)
                    rows[i][j] -= f * rows[r][j];
        }
        out.pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    out.rows = std::move(rows);
    return out;
}

std::size_t rank(const std::vector<QVec> &rows, std::size_t cols) {
    return rref(rows, cols).pivots.size();
}

std::vector<QVec> nullspace(const std::vector<QVec> &rows, std::size_t cols) {
    Echelon e = rref(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivots)
        is_pivot[p] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        QVec v = zeros(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < e.rows.size(); ++i)
            v[e.pivots[i]] = -e.rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMat &m, const QVec &b) {
    std::vector<QVec> aug;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        QVec r = m.row(i);
        r.push_back(b[i]);
        aug.push_back(std::move(r));
    }
    Echelon e = rref(aug, m.cols() + 1);
    QVec x = zeros(m.cols());
    for (std::size_t i = 0; i < e.rows.size(); ++i) {
        if (e.pivots[i] == m.cols())
            return std::nullopt;
        x[e.pivots[i]] = e.rows[i][m.cols()];
    }
    return x;
}

Rat determinant(QMat m) {
    const std::size_t n = m.rows();
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && sgn(m(p, c)) == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(p, j), m(c, j));
            det = -det;
        }
        det *= m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(m(i, c)) == 0)
                continue;
            Rat f = m(i, c) / m(c, c);
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

std::optional<QMat> inverse(const QMat &m) {
    const std::size_t n = m.rows();
    std::vector<QVec> aug;
    for (std::size_t i = 0; i < n; ++i) {
        QVec r = m.row(i);
        for (std::size_t j = 0; j < n; ++j)
            r.push_back(Rat(i == j ? 1 : 0));
        aug.push_back(std::move(r));
    }
    Echelon e = rref(aug, 2 * n);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
        return std::nullopt;
    QMat inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = e.rows[i][n + j];
    return inv;
}

Subspace Subspace::span(const std::vector<QVec> &vectors, std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (const auto &v : vectors)
        if (v.size() != ambient_dim)
            throw InvalidInput("subspace generator of wrong dimension");
    Echelon e = rref(vectors, ambient_dim);
    s.basis_ = std::move(e.rows);
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::full(std::size_t ambient_dim) {
    std::vector<QVec> e;
    for (std::size_t i = 0; i < ambient_dim; ++i)
        e.push_back(unit(ambient_dim, i));
    return span(e, ambient_dim);
}

bool Subspace::contains(const QVec &x) const {
    if (x.size() != dim_)
        throw InvalidInput("vector of wrong dimension for subspace");
    QVec r = x;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        std::size_t p = pivots_[i];
        if (sgn(r[p]) == 0)
            continue;
        Rat f = r[p];
        for (std::size_t j = p; j < dim_; ++j)
            if (sgn(basis_[i][j]) != 0)
                r[j] -= f * basis_[i][j];
    }
    return is_zero(r);
}

bool Subspace::contains(const Subspace &other) const {
    return std::all_of(other.basis_.begin(), other.basis_.end(),
                       [this](const QVec &v) { return contains(v); });
}

Subspace Subspace::operator+(const Subspace &other) const {
    std::vector<QVec> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(all, dim_);
}

std::vector<QVec> Subspace::annihilator() const { return nullspace(basis_, dim_); }

Subspace Subspace::intersect(const Subspace &other) const {
    std::vector<QVec> ann = annihilator();
    auto more = other.annihilator();
    ann.insert(ann.end(), more.begin(), more.end());
    return span(nullspace(ann, dim_), dim_);
}

bool Subspace::operator<(const Subspace &other) const {
    if (dim_ != other.dim_)
        return dim_ < other.dim_;
    if (basis_.size() != other.basis_.size())
        return basis_.size() < other.basis_.size();
    return std::lexicographical_compare(basis_.begin(), basis_.end(), other.basis_.begin(),
                                        other.basis_.end(), lex_less);
}

std::optional<QVec> coordinates(const std::vector<QVec> &basis, const QVec &x) {
    if (basis.empty())
        return is_zero(x) ? std::optional<QVec>(QVec{}) : std::nullopt;
    QMat m(x.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < x.size(); ++i)
            m(i, j) = basis[j][i];
    return solve(m, x);
}

bool is_positive_definite(const QMat &m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i))
                return false;
    // Sylvester: leading principal minors via Gaussian pivots without row swaps.
    QMat a = m;
    const std::size_t n = a.rows();
    for (std::size_t c = 0; c < n; ++c) {
        if (sgn(a(c, c)) <= 0)
            return false;
        for (std::size_t i = c + 1; i < n; ++i) {
            if (sgn(a(i, c)) == 0)
                continue;
            Rat f = a(i, c) / a(c, c);
            for (std::size_t j = c; j < n; ++j)
                a(i, j) -= f * a(c, j);
        }
    }
    return true;
}

GramMatrix::GramMatrix(QMat entries) : m_(std::move(entries)) {
    if (!is_positive_definite(m_))
        throw InvalidInput("Gram matrix must be symmetric positive definite");
}

Rat inner(const GramMatrix &g, const QVec &x, const QVec &y) {
    if (x.size() != g.dim() || y.size() != g.dim())
        throw InvalidInput("dimension mismatch in inner product");
    return dot(x, g.apply(y));
}

Rat norm_sq(const GramMatrix &g, const QVec &x) { return inner(g, x, x); }

Subspace orthogonal_complement(const GramMatrix &g, const Subspace &s) {
    std::vector<QVec> rows;
    for (const auto &b : s.basis())
        rows.push_back(g.apply(b));
    return Subspace::span(nullspace(rows, g.dim()), g.dim());
}

QVec project_along(const Subspace &along, const Subspace &target, const QVec &x) {
    const std::size_t d = along.ambient_dim();
    if (along.rank() + target.rank() != d || (along + target).rank() != d)
        throw InvalidInput("project_along: subspaces are not complementary");
    std::vector<QVec> basis = along.basis();
    basis.insert(basis.end(), target.basis().begin(), target.basis().end());
    auto c = coordinates(basis, x);
    QVec y = zeros(d);
    for (std::size_t k = along.rank(); k < d; ++k)
        y = y + (*c)[k] * basis[k];
    return y;
}

GramMatrix direct_sum(const GramMatrix &a, const GramMatrix &b) {
    const std::size_t n = a.dim() + b.dim();
    QMat m(n, n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < b.dim(); ++j)
            m(a.dim() + i, a.dim() + j) = b(i, j);
    return GramMatrix(m);
}

GramMatrix restrict_form(const GramMatrix &g, const std::vector<QVec> &basis) {
    QMat m(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i; j < basis.size(); ++j)
            m(i, j) = m(j, i) = inner(g, basis[i], basis[j]);
    return GramMatrix(m);
}

} // namespace parallelo
