#pragma once

#include "parallelo/rational.hpp"

#include <optional>
#include <vector>

namespace parallelo {

/// Reduced row echelon form. `pivots` lists the pivot column of each
/// nonzero row; zero rows are dropped.
struct Echelon {
    std::vector<QVec> rows;
    std::vector<std::size_t> pivots;
};

Echelon rref(std::vector<QVec> rows, std::size_t cols);
std::size_t rank(const std::vector<QVec> &rows, std::size_t cols);

/// Basis of {x : M x = 0}, one vector per free column, in column order.
std::vector<QVec> nullspace(const std::vector<QVec> &rows, std::size_t cols);

/// Some x with M x = b, or nullopt when inconsistent.
std::optional<QVec> solve(const QMat &m, const QVec &b);

Rat determinant(QMat m);
std::optional<QMat> inverse(const QMat &m);

/// A linear subspace of Q^d stored by its reduced row echelon basis,
/// which makes equality a plain comparison.
class Subspace {
  public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient_dim) : dim_(ambient_dim) {}
    static Subspace span(const std::vector<QVec> &vectors, std::size_t ambient_dim);
    static Subspace full(std::size_t ambient_dim);

    std::size_t ambient_dim() const { return dim_; }
    std::size_t rank() const { return basis_.size(); }
    const std::vector<QVec> &basis() const { return basis_; }

    bool contains(const QVec &x) const;
    bool contains(const Subspace &other) const;
    Subspace operator+(const Subspace &other) const;
    Subspace intersect(const Subspace &other) const;

    /// Covectors (as vectors c with c.x = 0 on the subspace) spanning the annihilator.
    std::vector<QVec> annihilator() const;

    bool operator==(const Subspace &other) const {
        return dim_ == other.dim_ && basis_ == other.basis_;
    }
    bool operator<(const Subspace &other) const;

  private:
    std::size_t dim_ = 0;
    std::vector<QVec> basis_;
    std::vector<std::size_t> pivots_;
};

/// Coefficients of x in the given independent basis, or nullopt when x is outside the span.
std::optional<QVec> coordinates(const std::vector<QVec> &basis, const QVec &x);

bool is_positive_definite(const QMat &m);

/// A symmetric positive definite rational form.
class GramMatrix {
  public:
    GramMatrix() = default;
    /// Throws InvalidInput unless the matrix is symmetric positive definite.
    explicit GramMatrix(QMat entries);
    static GramMatrix identity(std::size_t d) { return GramMatrix(QMat::identity(d)); }

    std::size_t dim() const { return m_.rows(); }
    const QMat &matrix() const { return m_; }
    const Rat &operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    QVec apply(const QVec &x) const { return m_ * x; }
    bool operator==(const GramMatrix &other) const { return m_ == other.m_; }

  private:
    QMat m_;
};

Rat inner(const GramMatrix &g, const QVec &x, const QVec &y);
Rat norm_sq(const GramMatrix &g, const QVec &x);

/// {x : x^T G s = 0 for all s in S}.
Subspace orthogonal_complement(const GramMatrix &g, const Subspace &s);

/// The unique y in `target` with x - y in `along`.
QVec project_along(const Subspace &along, const Subspace &target, const QVec &x);

/// Block diagonal sum of two forms.
GramMatrix direct_sum(const GramMatrix &a, const GramMatrix &b);

/// B^T G B for basis vectors given as rows.
GramMatrix restrict_form(const GramMatrix &g, const std::vector<QVec> &basis);

} // namespace parallelo
