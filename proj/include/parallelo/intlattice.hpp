#pragma once

#include "parallelo/linalg.hpp"

#include <vector>

namespace parallelo {

/// Integer row-echelon basis of the Z-span of integral generators
/// (Hermite-style, without reduction above pivots).
std::vector<QVec> lattice_basis(const std::vector<QVec> &generators, std::size_t d);

/// Unimodular column reduction M W = [H | 0] of an integral m x d matrix.
/// The first `rank` rows of `w_inverse` are a Z-basis of Z^d intersected with
/// the row space of M; the remaining rows complete it to a basis of Z^d.
struct ColumnReduction {
    QMat w;
    QMat w_inverse;
    std::vector<QVec> h_rows;
    std::size_t rank = 0;
};

ColumnReduction column_reduce(const std::vector<QVec> &generators, std::size_t d);

/// Index of Z(generators) inside Z^d intersected with their real span.
Int saturation_index(const std::vector<QVec> &generators, std::size_t d);

/// Z-basis of Z^d intersected with span(vectors); vectors may be rational.
std::vector<QVec> saturated_basis(const std::vector<QVec> &vectors, std::size_t d);

/// Vectors completing a Z-basis of Z^d intersected with span(vectors) to a basis of Z^d.
std::vector<QVec> complement_basis(const std::vector<QVec> &vectors, std::size_t d);

/// True iff x is an integer combination of the independent basis rows.
bool in_lattice(const std::vector<QVec> &basis, const QVec &x);

/// |det| of a square basis.
Rat covolume(const std::vector<QVec> &basis);

/// gcd of a list of rationals (the generator of the group they span); zero for an empty/zero list.
Rat rational_gcd(const std::vector<Rat> &values);

} // namespace parallelo
