#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "error.hpp"

/**
 * Exact rational linear algebra: the scalar, dense vector/matrix carriers,
 * Gaussian elimination (solve, rank, reduced row echelon form, null space)
 * and the affine dimension of a point set.
 *
 * Everything here is exact. Floating point only enters through
 * `to_double`, which the set-valued probes use on finished results.
 */
namespace barypoly {

using Integer = boost::multiprecision::mpz_int;
/// GMP keeps numerator/denominator canonical (gcd 1, denominator > 0).
using Rational = boost::multiprecision::mpq_rational;
using RationalVector = std::vector<Rational>;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Exact: every finite double is a dyadic rational.
inline Rational from_double(double x) { return Rational(x); }

inline std::string to_string(const Rational& x)
{
    Integer num = boost::multiprecision::numerator(x);
    Integer den = boost::multiprecision::denominator(x);
    if (den == 1)
        return num.str();
    return num.str() + "/" + den.str();
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

inline Integer pow10(long e)
{
    Integer r = 1;
    for (long i = 0; i < e; ++i)
        r *= 10;
    return r;
}

// [sign] digits [. digits] [(e|E) [sign] digits]
inline Rational parse_decimal(std::string_view s, std::string_view whole)
{
    auto fail = [&] { return Error(ErrorCode::ParseError, "not a rational number: '" + std::string(whole) + "'"); };
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        negative = s[i] == '-';
        ++i;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point)
                ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (digits.empty())
        throw fail();
    long exponent = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        ++i;
        bool exp_negative = false;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            exp_negative = s[i] == '-';
            ++i;
        }
        std::size_t start = i;
        for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
            exponent = exponent * 10 + (s[i] - '0');
            if (exponent > 100000)
                throw fail();
        }
        if (i == start)
            throw fail();
        if (exp_negative)
            exponent = -exponent;
    }
    if (i != s.size())
        throw fail();

    // mpz treats a leading zero as an octal prefix
    auto nz = digits.find_first_not_of('0');
    digits = nz == std::string::npos ? "0" : digits.substr(nz);
    Integer mantissa(digits);
    if (negative)
        mantissa = -mantissa;
    long shift = exponent - frac_digits;
    if (shift >= 0)
        return Rational(mantissa * pow10(shift));
    return Rational(mantissa, pow10(-shift));
}

}   // namespace detail

/**
 * Parses "p/q", an integer, or a decimal literal (optionally with exponent)
 * into an exact rational. Decimal input is converted from its digits, never
 * through a double.
 */
inline Rational parse_rational(std::string_view text)
{
    std::string_view s = detail::trim(text);
    auto slash = s.find('/');
    if (slash == std::string_view::npos)
        return detail::parse_decimal(s, text);
    Rational num = detail::parse_decimal(detail::trim(s.substr(0, slash)), text);
    Rational den = detail::parse_decimal(detail::trim(s.substr(slash + 1)), text);
    if (den == 0)
        throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return num / den;
}

/// Dense row-major matrix of exact rationals.
class RationalMatrix
{
    public:
        RationalMatrix() = default;
        RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

        RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
        {
            rows_ = rows.size();
            cols_ = rows_ == 0 ? 0 : rows.begin()->size();
            data_.reserve(rows_ * cols_);
            for (const auto& row : rows) {
                if (row.size() != cols_)
                    throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
                data_.insert(data_.end(), row.begin(), row.end());
            }
        }

        static RationalMatrix identity(std::size_t n)
        {
            RationalMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = 1;
            return m;
        }

        static RationalMatrix from_columns(std::span<const RationalVector> columns, std::size_t rows)
        {
            RationalMatrix m(rows, columns.size());
            for (std::size_t j = 0; j < columns.size(); ++j) {
                if (columns[j].size() != rows)
                    throw Error(ErrorCode::DimensionMismatch, "column length mismatch");
                for (std::size_t i = 0; i < rows; ++i)
                    m(i, j) = columns[j][i];
            }
            return m;
        }

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }

        Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        RationalVector row(std::size_t r) const
        {
            return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                  data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
        }

        RationalVector col(std::size_t c) const
        {
            RationalVector v(rows_);
            for (std::size_t r = 0; r < rows_; ++r)
                v[r] = (*this)(r, c);
            return v;
        }

        RationalMatrix transpose() const
        {
            RationalMatrix t(cols_, rows_);
            for (std::size_t r = 0; r < rows_; ++r)
                for (std::size_t c = 0; c < cols_; ++c)
                    t(c, r) = (*this)(r, c);
            return t;
        }

        /// Keeps the listed columns, in the given order.
        RationalMatrix select_columns(std::span<const std::size_t> columns) const
        {
            RationalMatrix m(rows_, columns.size());
            for (std::size_t r = 0; r < rows_; ++r)
                for (std::size_t j = 0; j < columns.size(); ++j)
                    m(r, j) = (*this)(r, columns[j]);
            return m;
        }

        /// Appends the rows of `below` (same column count).
        RationalMatrix stack(const RationalMatrix& below) const
        {
            if (below.cols_ != cols_)
                throw Error(ErrorCode::DimensionMismatch, "stack: column counts differ");
            RationalMatrix m(rows_ + below.rows_, cols_);
            std::copy(data_.begin(), data_.end(), m.data_.begin());
            std::copy(below.data_.begin(), below.data_.end(),
                      m.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
            return m;
        }

        friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<Rational> data_;
};

inline RationalVector operator*(const RationalMatrix& a, const RationalVector& x)
{
    if (a.cols() != x.size())
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
    RationalVector y(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (!x[c].is_zero())
                y[r] += a(r, c) * x[c];
    return y;
}

inline RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.cols() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "matrix-matrix product");
    RationalMatrix m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(r, k).is_zero())
                continue;
            for (std::size_t c = 0; c < b.cols(); ++c)
                m(r, c) += a(r, k) * b(k, c);
        }
    return m;
}

inline RationalVector operator+(RationalVector a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "vector sum");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

inline RationalVector operator-(RationalVector a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "vector difference");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

inline RationalVector operator*(const Rational& s, RationalVector a)
{
    for (auto& x : a)
        x *= s;
    return a;
}

inline Rational dot(const RationalVector& a, const RationalVector& b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::DimensionMismatch, "dot product");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

inline bool is_nonnegative(const RationalVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x >= 0; });
}

struct Echelon
{
    RationalMatrix reduced;               ///< reduced row echelon form
    std::vector<std::size_t> pivot_cols;  ///< pivot column of row i, i < rank
};

/**
 * Gauss-Jordan elimination to reduced row echelon form. Pivot: largest
 * |entry| in the column among remaining rows, lowest row index on ties.
 */
inline Echelon row_reduce(RationalMatrix a)
{
    Echelon out;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < a.cols() && pivot_row < a.rows(); ++c) {
        std::size_t best = a.rows();
        Rational best_mag = 0;
        for (std::size_t r = pivot_row; r < a.rows(); ++r) {
            Rational mag = abs(a(r, c));
            if (mag > best_mag) {
                best_mag = mag;
                best = r;
            }
        }
        if (best == a.rows())
            continue;
        if (best != pivot_row)
            for (std::size_t k = 0; k < a.cols(); ++k)
                std::swap(a(best, k), a(pivot_row, k));
        Rational inv = 1 / a(pivot_row, c);
        for (std::size_t k = c; k < a.cols(); ++k)
            a(pivot_row, k) *= inv;
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == pivot_row || a(r, c).is_zero())
                continue;
            Rational f = a(r, c);
            for (std::size_t k = c; k < a.cols(); ++k)
                a(r, k) -= f * a(pivot_row, k);
        }
        out.pivot_cols.push_back(c);
        ++pivot_row;
    }
    out.reduced = std::move(a);
    return out;
}

inline std::size_t rank(const RationalMatrix& a) { return row_reduce(a).pivot_cols.size(); }

/// Exact solution of a square nonsingular system.
inline RationalVector solve_linear(const RationalMatrix& a, const RationalVector& b)
{
    if (a.rows() != a.cols())
        throw Error(ErrorCode::DimensionMismatch, "solve_linear needs a square matrix");
    if (b.size() != a.rows())
        throw Error(ErrorCode::DimensionMismatch, "solve_linear: right-hand side length");
    const std::size_t n = a.rows();
    RationalMatrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = a(r, c);
        aug(r, n) = b[r];
    }
    Echelon e = row_reduce(std::move(aug));
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1)
        throw Error(ErrorCode::SingularMatrix, "matrix has rank < " + std::to_string(n));
    RationalVector x(n);
    for (std::size_t r = 0; r < n; ++r)
        x[r] = e.reduced(r, n);
    return x;
}

inline RationalMatrix inverse(const RationalMatrix& a)
{
    if (a.rows() != a.cols())
        throw Error(ErrorCode::DimensionMismatch, "inverse needs a square matrix");
    const std::size_t n = a.rows();
    RationalMatrix aug(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = a(r, c);
        aug(r, n + r) = 1;
    }
    Echelon e = row_reduce(std::move(aug));
    if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1)
        throw Error(ErrorCode::SingularMatrix, "matrix has rank < " + std::to_string(n));
    RationalMatrix inv(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            inv(r, c) = e.reduced(r, n + c);
    return inv;
}

/**
 * Basis of ker A, one column per free variable of the reduced echelon form
 * (free variable set to 1, the others to 0). Returns A.cols() x 0 when the
 * kernel is trivial.
 */
inline RationalMatrix nullspace_basis(const RationalMatrix& a)
{
    Echelon e = row_reduce(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : e.pivot_cols)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);

    RationalMatrix basis(a.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        basis(f, k) = 1;
        for (std::size_t r = 0; r < e.pivot_cols.size(); ++r)
            basis(e.pivot_cols[r], k) = -e.reduced(r, f);
    }
    return basis;
}

/// Dimension of the affine hull: rank of the differences to the first point.
inline std::size_t affine_dim(std::span<const RationalVector> points)
{
    if (points.empty())
        throw Error(ErrorCode::EmptyInput, "affine_dim of an empty point list");
    const std::size_t len = points.front().size();
    RationalMatrix diffs(points.size() - 1, len);
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k].size() != len)
            throw Error(ErrorCode::DimensionMismatch, "affine_dim: points of unequal length");
        for (std::size_t i = 0; i < len; ++i)
            diffs(k - 1, i) = points[k][i] - points.front()[i];
    }
    return rank(diffs);
}

}   // namespace barypoly
