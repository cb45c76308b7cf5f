#include "parallelo/intlattice.hpp"

#include <utility>

namespace parallelo {

namespace {

using IMat = std::vector<std::vector<Int>>;

IMat to_int_rows(const std::vector<QVec> &rows, std::size_t d) {
    IMat m;
    for (const auto &r : rows) {
        if (r.size() != d)
            throw InvalidInput("lattice generator of wrong dimension");
        if (!is_integral(r))
            throw InvalidInput("lattice generator is not integral: " + to_string(r));
        std::vector<Int> row(d);
        for (std::size_t j = 0; j < d; ++j)
            row[j] = r[j].get_num();
        m.push_back(std::move(row));
    }
    return m;
}

QVec to_qvec(const std::vector<Int> &r) {
    QVec v(r.size());
    for (std::size_t j = 0; j < r.size(); ++j)
        v[j] = Rat(r[j]);
    return v;
}

void xgcd(const Int &a, const Int &b, Int &g, Int &s, Int &t) {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

} // namespace

std::vector<QVec> lattice_basis(const std::vector<QVec> &generators, std::size_t d) {
    IMat m = to_int_rows(generators, d);
    std::size_t r = 0;
    for (std::size_t c = 0; c < d && r < m.size(); ++c) {
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0)
                continue;
            if (m[r][c] == 0) {
                std::swap(m[r], m[i]);
                continue;
            }
            Int g, s, t;
            xgcd(m[r][c], m[i][c], g, s, t);
            Int a = m[r][c] / g, b = m[i][c] / g;
            for (std::size_t j = c; j < d; ++j) {
                Int x = m[r][j], y = m[i][j];
                m[r][j] = s * x + t * y;
                m[i][j] = a * y - b * x;
            }
        }
        if (m[r][c] != 0) {
            if (m[r][c] < 0)
                for (auto &x : m[r])
                    x = -x;
            ++r;
        }
    }
    std::vector<QVec> out;
    for (std::size_t i = 0; i < r; ++i)
        out.push_back(to_qvec(m[i]));
    return out;
}

ColumnReduction column_reduce(const std::vector<QVec> &generators, std::size_t d) {
    IMat m = to_int_rows(generators, d);
    IMat w(d, std::vector<Int>(d, 0)), winv(d, std::vector<Int>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        w[i][i] = winv[i][i] = 1;
    std::size_t k = 0;
    for (std::size_t i = 0; i < m.size() && k < d; ++i) {
        for (std::size_t j = k + 1; j < d; ++j) {
            if (m[i][j] == 0)
                continue;
            if (m[i][k] == 0) {
                for (auto &row : m)
                    std::swap(row[k], row[j]);
                for (auto &row : w)
                    std::swap(row[k], row[j]);
                std::swap(winv[k], winv[j]);
                continue;
            }
            Int x = m[i][k], y = m[i][j], g, s, t;
            xgcd(x, y, g, s, t);
            Int xg = x / g, yg = y / g;
            auto mix_columns = [&](IMat &a) {
                for (auto &row : a) {
                    Int ck = row[k], cj = row[j];
                    row[k] = s * ck + t * cj;
                    row[j] = xg * cj - yg * ck;
                }
            };
            mix_columns(m);
            mix_columns(w);
            for (std::size_t c = 0; c < d; ++c) {
                Int rk = winv[k][c], rj = winv[j][c];
                winv[k][c] = xg * rk + yg * rj;
                winv[j][c] = s * rj - t * rk;
            }
        }
        if (m[i][k] != 0)
            ++k;
    }
    ColumnReduction out;
    out.rank = k;
    out.w = QMat(d, d);
    out.w_inverse = QMat(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            out.w(i, j) = Rat(w[i][j]);
            out.w_inverse(i, j) = Rat(winv[i][j]);
        }
    for (const auto &row : m) {
        QVec h(k);
        for (std::size_t j = 0; j < k; ++j)
            h[j] = Rat(row[j]);
        out.h_rows.push_back(std::move(h));
    }
    return out;
}

Int saturation_index(const std::vector<QVec> &generators, std::size_t d) {
    ColumnReduction cr = column_reduce(generators, d);
    if (cr.rank == 0)
        return 1;
    std::vector<QVec> hb = lattice_basis(cr.h_rows, cr.rank);
    Int index = 1;
    for (std::size_t i = 0; i < hb.size(); ++i) {
        // Row echelon with full rank r: diagonal sits at column i.
        index *= abs(hb[i][i].get_num());
    }
    return index;
}

namespace {

std::vector<QVec> integral_generators(const std::vector<QVec> &vectors) {
    std::vector<QVec> gens;
    for (const auto &v : vectors)
        if (!is_zero(v))
            gens.push_back(primitive(v));
    return gens;
}

} // namespace

std::vector<QVec> saturated_basis(const std::vector<QVec> &vectors, std::size_t d) {
    ColumnReduction cr = column_reduce(integral_generators(vectors), d);
    std::vector<QVec> out;
    for (std::size_t i = 0; i < cr.rank; ++i)
        out.push_back(cr.w_inverse.row(i));
    return out;
}

std::vector<QVec> complement_basis(const std::vector<QVec> &vectors, std::size_t d) {
    ColumnReduction cr = column_reduce(integral_generators(vectors), d);
    std::vector<QVec> out;
    for (std::size_t i = cr.rank; i < d; ++i)
        out.push_back(cr.w_inverse.row(i));
    return out;
}

bool in_lattice(const std::vector<QVec> &basis, const QVec &x) {
    auto c = coordinates(basis, x);
    return c && is_integral(*c);
}

Rat covolume(const std::vector<QVec> &basis) {
    if (basis.empty())
        return 1;
    Rat det = determinant(QMat::from_rows(basis, basis[0].size()));
    return abs(det);
}

Rat rational_gcd(const std::vector<Rat> &values) {
    Int num = 0, den = 1;
    for (const auto &v : values)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    for (const auto &v : values) {
        Int scaled = v.get_num() * (den / v.get_den());
        mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
    }
    Rat r(num, den);
    r.canonicalize();
    return r;
}

} // namespace parallelo
