#include "parallelo/cvp.hpp"

#include <algorithm>
#include <functional>

namespace parallelo {

namespace {

// G = U^T diag(q) U with U unit upper triangular; mu(i, j) = U_ij for j > i.
struct Decomposition {
    std::vector<Rat> q;
    QMat mu;
};

Decomposition decompose_form(const GramMatrix &g) {
    const std::size_t d = g.dim();
    Decomposition out{std::vector<Rat>(d), QMat(d, d)};
    for (std::size_t i = 0; i < d; ++i) {
        Rat qi = g(i, i);
        for (std::size_t k = 0; k < i; ++k)
            qi -= out.q[k] * out.mu(k, i) * out.mu(k, i);
        out.q[i] = qi;
        for (std::size_t j = i + 1; j < d; ++j) {
            Rat m = g(i, j);
            for (std::size_t k = 0; k < i; ++k)
                m -= out.q[k] * out.mu(k, i) * out.mu(k, j);
            out.mu(i, j) = m / qi;
        }
    }
    return out;
}

Rat floor_rat(const Rat &r) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return Rat(f);
}

// Visits every integer y with Q(y - x) <= bound. When `shrink` is set the
// visitor may lower the bound through the returned value.
void enumerate(const Decomposition &dec, const QVec &x, Rat bound,
               const std::function<Rat(const QVec &, const Rat &, const Rat &)> &visit) {
    const std::size_t d = x.size();
    QVec y(d), diff(d);
    std::function<void(std::size_t, const Rat &)> level = [&](std::size_t i1, const Rat &partial) {
        if (i1 == 0) {
            bound = visit(y, partial, bound);
            return;
        }
        const std::size_t i = i1 - 1;
        Rat c = x[i];
        for (std::size_t j = i + 1; j < d; ++j)
            c -= dec.mu(i, j) * diff[j];
        Rat start = floor_rat(c);
        for (int dir = 0; dir < 2; ++dir) {
            for (Rat yi = dir == 0 ? start : start + 1;; yi += dir == 0 ? -1 : 1) {
                Rat z = yi - c;
                Rat total = partial + dec.q[i] * z * z;
                if (total > bound)
                    break;
                y[i] = yi;
                diff[i] = yi - x[i];
                level(i, total);
            }
        }
    };
    level(d, Rat(0));
}

// Nearest-plane rounding gives a first upper bound.
Rat babai_bound(const Decomposition &dec, const QVec &x) {
    const std::size_t d = x.size();
    QVec diff(d);
    Rat total = 0;
    for (std::size_t i = d; i-- > 0;) {
        Rat c = x[i];
        for (std::size_t j = i + 1; j < d; ++j)
            c -= dec.mu(i, j) * diff[j];
        Rat yi = floor_rat(c + Rat(1, 2));
        diff[i] = yi - x[i];
        Rat z = yi - c;
        total += dec.q[i] * z * z;
    }
    return total;
}

} // namespace

ClosestPoints closest_lattice_points(const GramMatrix &g, const QVec &x) {
    if (x.size() != g.dim())
        throw InvalidInput("closest_lattice_points: dimension mismatch");
    Decomposition dec = decompose_form(g);
    ClosestPoints out{babai_bound(dec, x), {}};
    enumerate(dec, x, out.dist_sq, [&](const QVec &y, const Rat &dist, const Rat &bound) {
        if (dist < out.dist_sq) {
            out.dist_sq = dist;
            out.points.clear();
        }
        if (dist == out.dist_sq)
            out.points.push_back(y);
        return std::min(bound, out.dist_sq);
    });
    std::sort(out.points.begin(), out.points.end(), lex_less);
    return out;
}

std::vector<QVec> lattice_points_in_ball(const GramMatrix &g, const QVec &x, const Rat &bound) {
    if (x.size() != g.dim())
        throw InvalidInput("lattice_points_in_ball: dimension mismatch");
    std::vector<QVec> out;
    enumerate(decompose_form(g), x, bound, [&](const QVec &y, const Rat &, const Rat &b) {
        out.push_back(y);
        return b;
    });
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

} // namespace parallelo
