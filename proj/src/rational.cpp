#include "parallelo/rational.hpp"

#include <algorithm>
#include <sstream>

namespace parallelo {

Rat parse_rat(const std::string &text) {
    std::string s;
    for (char c : text)
        if (c != ' ')
            s.push_back(c);
    if (s.empty())
        throw InvalidInput("empty rational");
    auto slash = s.find('/');
    auto valid_int = [](const std::string &t) {
        std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (start >= t.size())
            return false;
        return std::all_of(t.begin() + static_cast<long>(start), t.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+')
        num = num.substr(1);
    if (!valid_int(num) || !valid_int(den))
        throw InvalidInput("not a rational: '" + text + "'");
    Int n(num), q(den);
    if (q == 0)
        throw InvalidInput("zero denominator: '" + text + "'");
    Rat r(n, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rat &r) {
    if (r.get_den() == 1)
        return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_string(const QVec &v) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        out << (i ? "," : "") << to_string(v[i]);
    out << ')';
    return out.str();
}

QVec zeros(std::size_t d) { return QVec(d, Rat(0)); }

QVec unit(std::size_t d, std::size_t i) {
    QVec v = zeros(d);
    v[i] = 1;
    return v;
}

QVec from_ints(std::initializer_list<long> xs) {
    QVec v;
    v.reserve(xs.size());
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

QVec operator+(const QVec &a, const QVec &b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

QVec operator-(const QVec &a, const QVec &b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

QVec operator-(const QVec &a) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = -a[i];
    return r;
}

QVec operator*(const Rat &s, const QVec &a) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = s * a[i];
    return r;
}

Rat dot(const QVec &a, const QVec &b) {
    if (a.size() != b.size())
        throw InvalidInput("dimension mismatch in dot product");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            s += a[i] * b[i];
    return s;
}

bool is_zero(const QVec &v) {
    return std::all_of(v.begin(), v.end(), [](const Rat &x) { return sgn(x) == 0; });
}

bool is_integral(const QVec &v) {
    return std::all_of(v.begin(), v.end(), [](const Rat &x) { return x.get_den() == 1; });
}

QVec primitive(const QVec &v) {
    Int lcm_den = 1;
    for (const auto &x : v)
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
    Int g = 0;
    std::vector<Int> ints(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        ints[i] = v[i].get_num() * (lcm_den / v[i].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
    }
    QVec r(v.size());
    if (g == 0)
        return zeros(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = Rat(ints[i] / g);
    return r;
}

QVec canonical_direction(const QVec &v) {
    QVec p = primitive(v);
    for (const auto &x : p) {
        if (sgn(x) == 0)
            continue;
        if (sgn(x) < 0)
            return -p;
        break;
    }
    return p;
}

bool lex_less(const QVec &a, const QVec &b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        [](const Rat &x, const Rat &y) { return x < y; });
}

QMat QMat::identity(std::size_t n) {
    QMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

QMat QMat::from_rows(const std::vector<QVec> &rows, std::size_t cols) {
    QMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols)
            throw InvalidInput("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

QVec QMat::row(std::size_t i) const {
    return QVec(data_.begin() + static_cast<long>(i * cols_),
                data_.begin() + static_cast<long>((i + 1) * cols_));
}

QVec QMat::col(std::size_t j) const {
    QVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

std::vector<QVec> QMat::row_list() const {
    std::vector<QVec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        out.push_back(row(i));
    return out;
}

QMat QMat::transpose() const {
    QMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

QVec QMat::operator*(const QVec &x) const {
    if (x.size() != cols_)
        throw InvalidInput("dimension mismatch in matrix-vector product");
    QVec y(rows_, Rat(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (sgn(x[j]) != 0)
                y[i] += (*this)(i, j) * x[j];
    return y;
}

QMat QMat::operator*(const QMat &other) const {
    if (cols_ != other.rows_)
        throw InvalidInput("dimension mismatch in matrix product");
    QMat r(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rat &a = (*this)(i, k);
            if (sgn(a) == 0)
                continue;
            for (std::size_t j = 0; j < other.cols_; ++j)
                r(i, j) += a * other(k, j);
        }
    return r;
}

QMat QMat::operator+(const QMat &other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw InvalidInput("dimension mismatch in matrix sum");
    QMat r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] += other.data_[i];
    return r;
}

} // namespace parallelo
