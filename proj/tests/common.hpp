#pragma once

#include "parallelo/linalg.hpp"

#include <initializer_list>
#include <random>

namespace testforms {

using namespace parallelo;

inline QMat mat(std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<QVec> r;
    for (auto row : rows)
        r.push_back(from_ints(row));
    return QMat::from_rows(r, r[0].size());
}

inline GramMatrix cubic(std::size_t d) { return GramMatrix::identity(d); }
inline GramMatrix a2() { return GramMatrix(mat({{2, 1}, {1, 2}})); }
inline GramMatrix fcc() { return GramMatrix(mat({{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})); }
inline GramMatrix bcc() { return GramMatrix(mat({{4, 0, 2}, {0, 4, 2}, {2, 2, 3}})); }
inline GramMatrix a2a2() { return direct_sum(a2(), a2()); }
inline GramMatrix square_hexagon() { return direct_sum(cubic(2), a2()); }
inline GramMatrix a2z() { return direct_sum(a2(), cubic(1)); }

/// A^T A + I with small random integer A; independent of the library sampler.
inline GramMatrix random_form(std::mt19937_64 &rng, std::size_t d, long bound = 2) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    QMat a(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            a(i, j) = dist(rng);
    return GramMatrix(a.transpose() * a + QMat::identity(d));
}

/// Integer vectors of the box [-k, k]^d.
inline std::vector<QVec> box_points(std::size_t d, long k) {
    std::vector<QVec> out;
    QVec v(d, Rat(-k));
    while (true) {
        out.push_back(v);
        std::size_t i = 0;
        while (i < d && v[i] == k) {
            v[i] = -k;
            ++i;
        }
        if (i == d)
            break;
        v[i] += 1;
    }
    return out;
}

} // namespace testforms
