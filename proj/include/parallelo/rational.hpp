#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace parallelo {

using Rat = mpq_class;
using Int = mpz_class;

/// A point or vector with exact rational coordinates.
using QVec = std::vector<Rat>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (CLI exit code 2).
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// A checked property of the theory failed on a concrete instance
/// (CLI exit code 1). Never swallowed.
class Violation : public Error {
  public:
    using Error::Error;
};

Rat parse_rat(const std::string &text);
std::string to_string(const Rat &r);
std::string to_string(const QVec &v);

QVec zeros(std::size_t d);
QVec unit(std::size_t d, std::size_t i);
QVec from_ints(std::initializer_list<long> xs);

QVec operator+(const QVec &a, const QVec &b);
QVec operator-(const QVec &a, const QVec &b);
QVec operator-(const QVec &a);
QVec operator*(const Rat &s, const QVec &a);
Rat dot(const QVec &a, const QVec &b);

bool is_zero(const QVec &v);
bool is_integral(const QVec &v);

/// Positive multiple of v with coprime integer entries. Zero stays zero.
QVec primitive(const QVec &v);

/// Primitive integer multiple of v whose first nonzero entry is positive.
/// Used as the key for a direction up to sign.
QVec canonical_direction(const QVec &v);

/// Lexicographic order on exact coordinates.
bool lex_less(const QVec &a, const QVec &b);

struct LexLess {
    bool operator()(const QVec &a, const QVec &b) const { return lex_less(a, b); }
};

/// Dense row-major rational matrix.
class QMat {
  public:
    QMat() = default;
    QMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static QMat identity(std::size_t n);
    static QMat from_rows(const std::vector<QVec> &rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    QVec row(std::size_t i) const;
    QVec col(std::size_t j) const;
    std::vector<QVec> row_list() const;

    QMat transpose() const;
    QVec operator*(const QVec &x) const;
    QMat operator*(const QMat &other) const;
    QMat operator+(const QMat &other) const;

    bool operator==(const QMat &other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

} // namespace parallelo
