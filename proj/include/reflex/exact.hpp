/**
 * Exact scalars, vectors and matrices, plus the integer linear algebra the
 * rest of the library is built on: Bareiss determinants, rational solves,
 * kernels, ranks and Hermite/Smith normal forms.
 *
 * Nothing in here rounds. Scalars are GMP-backed through
 * Boost.Multiprecision.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace reflex {

using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<BigInt>;
using RatVector = std::vector<BigRational>;

/** Thrown when operand shapes do not match what an operation requires. */
class DimensionError : public std::invalid_argument
{
    public:
        explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

/** Thrown when a linear system has no unique solution. */
class SingularMatrixError : public std::runtime_error
{
    public:
        explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/** Thrown when an operation's documented precondition is violated. */
class PreconditionError : public std::invalid_argument
{
    public:
        explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

inline BigInt numerator_of(const BigRational& q) { return boost::multiprecision::numerator(q); }
inline BigInt denominator_of(const BigRational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const BigRational& q) { return denominator_of(q) == 1; }
inline bool is_integral(const BigInt&) { return true; }

inline BigInt abs_value(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }
inline BigRational abs_value(const BigRational& x) { return x < 0 ? BigRational(-x) : x; }

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

/** Floor of a rational, exact. */
inline BigInt floor_of(const BigRational& q)
{
    BigInt n = numerator_of(q), d = denominator_of(q);
    BigInt r = n / d;   // truncates toward zero
    if (n < 0 && r * d != n)
        r -= 1;
    return r;
}

inline BigInt ceil_of(const BigRational& q)
{
    BigInt f = floor_of(q);
    return BigRational(f) == q ? f : BigInt(f + 1);
}

/** Canonical text: "p/q" in lowest terms with the sign on p, or "p" when q = 1. */
inline std::string to_string(const BigRational& q)
{
    if (denominator_of(q) == 1)
        return numerator_of(q).str();
    return numerator_of(q).str() + "/" + denominator_of(q).str();
}

inline std::string to_string(const BigInt& x) { return x.str(); }

/** Inverse of to_string; rejects anything that is not "p" or "p/q" with q > 0. */
inline BigRational parse_rational(const std::string& text)
{
    auto valid_int = [](const std::string& s, bool allow_sign) {
        if (s.empty())
            return false;
        std::size_t i = 0;
        if (allow_sign && (s[0] == '-' || s[0] == '+'))
            i = 1;
        if (i == s.size())
            return false;
        return std::all_of(s.begin() + i, s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!valid_int(text, true))
            throw std::invalid_argument("not a rational: '" + text + "'");
        return BigRational(BigInt(text));
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw std::invalid_argument("not a rational: '" + text + "'");
    BigInt d(den);
    if (d == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    return BigRational(BigInt(num), d);
}

// ---------------------------------------------------------------------------
// Vectors
// ---------------------------------------------------------------------------

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b)
{
    if (a.size() != b.size())
        throw DimensionError("dot: length mismatch");
    T s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += a[i] * b[i];
    return s;
}

/** Mixed dot product, integer normal against a rational point. */
inline BigRational dot(const IntVector& a, const RatVector& b)
{
    if (a.size() != b.size())
        throw DimensionError("dot: length mismatch");
    BigRational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += BigRational(a[i]) * b[i];
    return s;
}

inline BigRational dot(const RatVector& a, const IntVector& b) { return dot(b, a); }

template <typename T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b)
{
    if (a.size() != b.size())
        throw DimensionError("add: length mismatch");
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

template <typename T>
std::vector<T> subtract(const std::vector<T>& a, const std::vector<T>& b)
{
    if (a.size() != b.size())
        throw DimensionError("subtract: length mismatch");
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

template <typename T, typename S>
std::vector<T> scale(const std::vector<T>& a, const S& s)
{
    std::vector<T> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] * s;
    return r;
}

template <typename T>
bool is_zero(const std::vector<T>& a)
{
    return std::all_of(a.begin(), a.end(), [](const T& x) { return x == 0; });
}

inline RatVector to_rational(const IntVector& v)
{
    return RatVector(v.begin(), v.end());
}

inline RatVector to_rational(const RatVector& v) { return v; }

/** gcd of all entries; 0 for the zero vector. */
inline BigInt content(const IntVector& v)
{
    BigInt g = 0;
    for (const auto& x : v)
        g = gcd(g, abs_value(x));
    return g;
}

/** Divides out the content. The zero vector is returned unchanged. */
inline IntVector primitive(const IntVector& v)
{
    BigInt g = content(v);
    if (g == 0 || g == 1)
        return v;
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = v[i] / g;
    return r;
}

/** Positive multiple of v that is a primitive integer vector. */
inline IntVector clear_denominators(const RatVector& v)
{
    BigInt l = 1;
    for (const auto& x : v)
        l = lcm(l, denominator_of(x));
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        r[i] = numerator_of(v[i] * l);
    return primitive(r);
}

inline IntVector clear_denominators(const IntVector& v) { return primitive(v); }

/** Returns the integer vector, or throws if some entry is not integral. */
inline IntVector to_integer(const RatVector& v)
{
    IntVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_integral(v[i]))
            throw std::domain_error("to_integer: non-integral entry " + to_string(v[i]));
        r[i] = numerator_of(v[i]);
    }
    return r;
}

/** Flips sign so that the first nonzero entry is positive. */
template <typename T>
std::vector<T> sign_normalized(std::vector<T> v)
{
    for (const auto& x : v) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : v)
                y = -y;
        break;
    }
    return v;
}

template <typename T>
std::string to_string(const std::vector<T>& v)
{
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/** Dense row-major matrix. Zero-sized dimensions are allowed. */
template <typename T>
class Matrix
{
    public:
        Matrix() = default;
        Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

        static Matrix identity(std::size_t n)
        {
            Matrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                m(i, i) = 1;
            return m;
        }

        static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0)
        {
            if (!rows.empty())
                cols = rows.front().size();
            Matrix m(rows.size(), cols);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != cols)
                    throw DimensionError("from_rows: ragged rows");
                for (std::size_t j = 0; j < cols; ++j)
                    m(i, j) = rows[i][j];
            }
            return m;
        }

        static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows = 0)
        {
            return from_rows(cols, rows).transpose();
        }

        std::size_t rows() const { return rows_; }
        std::size_t cols() const { return cols_; }
        bool square() const { return rows_ == cols_; }

        T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
        const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

        std::vector<T> row(std::size_t i) const
        {
            return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
        }

        std::vector<T> column(std::size_t j) const
        {
            std::vector<T> c(rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                c[i] = (*this)(i, j);
            return c;
        }

        Matrix transpose() const
        {
            Matrix t(cols_, rows_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    t(j, i) = (*this)(i, j);
            return t;
        }

        Matrix operator*(const Matrix& o) const
        {
            if (cols_ != o.rows_)
                throw DimensionError("matrix product: inner dimensions differ");
            Matrix r(rows_, o.cols_);
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t k = 0; k < cols_; ++k) {
                    const T& a = (*this)(i, k);
                    if (a == 0)
                        continue;
                    for (std::size_t j = 0; j < o.cols_; ++j)
                        r(i, j) += a * o(k, j);
                }
            return r;
        }

        std::vector<T> operator*(const std::vector<T>& v) const
        {
            if (cols_ != v.size())
                throw DimensionError("matrix-vector product: length mismatch");
            std::vector<T> r(rows_, T(0));
            for (std::size_t i = 0; i < rows_; ++i)
                for (std::size_t j = 0; j < cols_; ++j)
                    r[i] += (*this)(i, j) * v[j];
            return r;
        }

        Matrix operator-(const Matrix& o) const
        {
            if (rows_ != o.rows_ || cols_ != o.cols_)
                throw DimensionError("matrix difference: shape mismatch");
            Matrix r = *this;
            for (std::size_t i = 0; i < data_.size(); ++i)
                r.data_[i] -= o.data_[i];
            return r;
        }

        bool operator==(const Matrix& o) const
        {
            return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
        }

        /** Lexicographic in row-major entries; used to sort group elements. */
        bool operator<(const Matrix& o) const
        {
            if (rows_ != o.rows_)
                return rows_ < o.rows_;
            if (cols_ != o.cols_)
                return cols_ < o.cols_;
            return data_ < o.data_;
        }

        const std::vector<T>& data() const { return data_; }

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<BigRational>;

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j);
    return r;
}

inline RatMatrix to_rational(const RatMatrix& m) { return m; }

inline IntMatrix to_integer(const RatMatrix& m)
{
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j)))
                throw std::domain_error("to_integer: non-integral matrix entry");
            r(i, j) = numerator_of(m(i, j));
        }
    return r;
}

/** Fraction-free (Bareiss) determinant. */
inline BigInt det(IntMatrix m)
{
    if (!m.square())
        throw DimensionError("det: matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return 0;
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = t / prev;   // exact by Sylvester's identity
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    BigInt d = m(n - 1, n - 1);
    return sign < 0 ? BigInt(-d) : d;
}

/** Determinant of a rational matrix by clearing row denominators. */
inline BigRational det(const RatMatrix& m)
{
    if (!m.square())
        throw DimensionError("det: matrix is not square");
    IntMatrix scaled(m.rows(), m.cols());
    BigRational factor = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j)
            l = lcm(l, denominator_of(m(i, j)));
        factor /= l;
        for (std::size_t j = 0; j < m.cols(); ++j)
            scaled(i, j) = numerator_of(m(i, j) * l);
    }
    return BigRational(det(scaled)) * factor;
}

/**
 * Reduced row echelon form over the rationals, in place. Returns the pivot
 * column of each nonzero row.
 */
inline std::vector<std::size_t> rref(RatMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        BigRational inv = 1 / m(r, c);
        for (std::size_t j = c; j < m.cols(); ++j)
            m(r, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c) == 0)
                continue;
            BigRational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j)
                m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <typename T>
std::size_t rank(const Matrix<T>& m)
{
    RatMatrix r = to_rational(m);
    return rref(r).size();
}

template <typename T>
std::size_t rank_of_rows(const std::vector<std::vector<T>>& rows, std::size_t cols)
{
    return rank(Matrix<T>::from_rows(rows, cols));
}

/** Unique solution of a x = b by Gaussian elimination over the rationals. */
inline RatVector solve_exact(const RatMatrix& a, const RatVector& b)
{
    if (!a.square())
        throw DimensionError("solve_exact: matrix is not square");
    if (a.rows() != b.size())
        throw DimensionError("solve_exact: right-hand side length mismatch");
    const std::size_t n = a.rows();
    RatMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n) = b[i];
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || (n > 0 && pivots.back() >= n))
        throw SingularMatrixError("solve_exact: singular system");
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = aug(i, n);
    return x;
}

inline RatMatrix inverse(const RatMatrix& a)
{
    if (!a.square())
        throw DimensionError("inverse: matrix is not square");
    const std::size_t n = a.rows();
    RatMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] >= n))
        throw SingularMatrixError("inverse: singular matrix");
    RatMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

/** Inverse of an integer matrix with determinant +-1. */
inline IntMatrix inverse_unimodular(const IntMatrix& a)
{
    return to_integer(inverse(to_rational(a)));
}

/**
 * Basis of the right kernel {x : m x = 0}, one primitive integer vector per
 * free column, with first nonzero entry positive. Empty iff m has full
 * column rank.
 */
template <typename T>
std::vector<IntVector> kernel_basis(const Matrix<T>& m)
{
    RatMatrix r = to_rational(m);
    auto pivots = rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<IntVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        RatVector x(m.cols(), BigRational(0));
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            x[pivots[i]] = -r(i, f);
        basis.push_back(sign_normalized(clear_denominators(x)));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Hermite and Smith normal forms
// ---------------------------------------------------------------------------

/**
 * hermite = hermite_transform * m (row-style HNF: echelon, positive pivots,
 * entries above a pivot reduced into [0, pivot)).
 * smith = left * m * right with smith diagonal, d_1 | d_2 | ..., d_i >= 0.
 * All three transforms are unimodular.
 */
struct NormalForms
{
    IntMatrix hermite;
    IntMatrix hermite_transform;
    IntMatrix smith;
    IntMatrix left;
    IntMatrix right;
};

namespace detail {

inline void swap_rows(IntMatrix& m, std::size_t a, std::size_t b)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m(a, j), m(b, j));
}

inline void swap_cols(IntMatrix& m, std::size_t a, std::size_t b)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        std::swap(m(i, a), m(i, b));
}

// row_a += f * row_b
inline void add_row(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& f)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(a, j) += f * m(b, j);
}

inline void add_col(IntMatrix& m, std::size_t a, std::size_t b, const BigInt& f)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, a) += f * m(i, b);
}

inline void negate_row(IntMatrix& m, std::size_t a)
{
    for (std::size_t j = 0; j < m.cols(); ++j)
        m(a, j) = -m(a, j);
}

inline void negate_col(IntMatrix& m, std::size_t a)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        m(i, a) = -m(i, a);
}

/** Floor division for integers. */
inline BigInt floor_div(const BigInt& a, const BigInt& b)
{
    return floor_of(BigRational(a, b));
}

inline std::pair<IntMatrix, IntMatrix> hermite(const IntMatrix& input)
{
    IntMatrix h = input;
    IntMatrix u = IntMatrix::identity(h.rows());
    std::size_t r = 0;
    for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
        // Euclid on column c among rows r.. until one nonzero remains
        while (true) {
            std::size_t best = h.rows();
            for (std::size_t i = r; i < h.rows(); ++i)
                if (h(i, c) != 0 && (best == h.rows() || abs_value(h(i, c)) < abs_value(h(best, c))))
                    best = i;
            if (best == h.rows())
                break;
            swap_rows(h, r, best);
            swap_rows(u, r, best);
            bool done = true;
            for (std::size_t i = r + 1; i < h.rows(); ++i) {
                if (h(i, c) == 0)
                    continue;
                BigInt q = floor_div(h(i, c), h(r, c));
                add_row(h, i, r, -q);
                add_row(u, i, r, -q);
                if (h(i, c) != 0)
                    done = false;
            }
            if (done)
                break;
        }
        if (h(r, c) == 0)
            continue;
        if (h(r, c) < 0) {
            negate_row(h, r);
            negate_row(u, r);
        }
        for (std::size_t i = 0; i < r; ++i) {
            BigInt q = floor_div(h(i, c), h(r, c));
            if (q != 0) {
                add_row(h, i, r, -q);
                add_row(u, i, r, -q);
            }
        }
        ++r;
    }
    return {h, u};
}

} // namespace detail

inline NormalForms hermite_smith(const IntMatrix& m)
{
    NormalForms out;
    std::tie(out.hermite, out.hermite_transform) = detail::hermite(m);

    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(m.rows());
    IntMatrix v = IntMatrix::identity(m.cols());
    const std::size_t diag = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < diag; ++t) {
        while (true) {
            // pivot: smallest nonzero |entry| in the trailing block
            std::size_t pi = m.rows(), pj = m.cols();
            for (std::size_t i = t; i < s.rows(); ++i)
                for (std::size_t j = t; j < s.cols(); ++j)
                    if (s(i, j) != 0 && (pi == m.rows() || abs_value(s(i, j)) < abs_value(s(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m.rows())
                break;
            detail::swap_rows(s, t, pi);
            detail::swap_rows(u, t, pi);
            detail::swap_cols(s, t, pj);
            detail::swap_cols(v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                if (s(i, t) == 0)
                    continue;
                BigInt q = detail::floor_div(s(i, t), s(t, t));
                detail::add_row(s, i, t, -q);
                detail::add_row(u, i, t, -q);
                if (s(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                if (s(t, j) == 0)
                    continue;
                BigInt q = detail::floor_div(s(t, j), s(t, t));
                detail::add_col(s, j, t, -q);
                detail::add_col(v, j, t, -q);
                if (s(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility: fold a violating row into row t and retry
            bool divides = true;
            for (std::size_t i = t + 1; i < s.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < s.cols(); ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        detail::add_row(s, t, i, BigInt(1));
                        detail::add_row(u, t, i, BigInt(1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (s(t, t) < 0) {
            detail::negate_row(s, t);
            detail::negate_row(u, t);
        }
    }
    out.smith = std::move(s);
    out.left = std::move(u);
    out.right = std::move(v);
    return out;
}

} // namespace reflex
