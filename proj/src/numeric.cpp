#include "k3dual/numeric.hpp"

#include <algorithm>
#include <sstream>

#include "k3dual/error.hpp"

namespace k3dual {

namespace {

const char* const kErrorNames[] = {
    "DegenerateInput", "OriginNotInterior", "NonIntegralDual", "NotReflexive",
    "WrongDegree",     "NotInLattice",      "InvalidWeightSystem", "RankDeficient",
    "InvalidOverride", "InvalidOrdering",   "NoBasis",         "L0NotZero",
    "FormulaMismatch", "NotSymmetric",      "Degenerate",      "NotEven",
    "InvalidParameter", "GroupTooLarge",    "NonIntegral",     "DimensionMismatch",
    "ParseError",
};

}  // namespace

const char* error_code_name(ErrorCode code) {
    return kErrorNames[static_cast<int>(code)];
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Integer gcd_of(const IntVector& v) {
    Integer g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

Integer lcm_of(const std::vector<Integer>& v) {
    Integer l = 1;
    for (const auto& x : v) {
        if (x != 0) l = lcm(l, x);
    }
    return abs(l);
}

bool fits_int64(const Integer& v) {
    static const Integer lo("-9223372036854775808");
    static const Integer hi("9223372036854775807");
    return v >= lo && v <= hi;
}

std::int64_t to_int64(const Integer& v) {
    if (!fits_int64(v)) throw Error(ErrorCode::InvalidParameter, "integer exceeds 64 bits: " + v.get_str());
    if (v.fits_slong_p()) return v.get_si();
    return std::stoll(v.get_str());
}

Rational reduce_mod(const Rational& value, const Integer& m) {
    Rational q = value / m;
    Integer f = floor_div(q.get_num(), q.get_den());
    Rational r = value - Rational(f * m);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

std::string to_string(const IntVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

Integer dot(const IntVector& a, const IntVector& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "dot product of unequal lengths");
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntVector IntMatrix::row(std::size_t r) const {
    return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::col(std::size_t c) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
    return v;
}

std::vector<IntVector> IntMatrix::to_rows() const {
    std::vector<IntVector> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_symmetric() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Integer IntMatrix::max_abs() const {
    Integer m = 0;
    for (const auto& v : data_) m = std::max<Integer>(m, abs(v));
    return m;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

IntVector row_times(const IntVector& v, const IntMatrix& a) {
    if (v.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "row vector length mismatch");
    IntVector out(a.cols(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
    }
    return out;
}

IntVector times_col(const IntMatrix& a, const IntVector& v) {
    if (v.size() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "column vector length mismatch");
    IntVector out(a.rows(), Integer(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
    return out;
}

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

IntMatrix submatrix(const IntMatrix& a, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols) {
    IntMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = a(rows[i], cols[j]);
    return m;
}

Integer determinant(const IntMatrix& a) {
    if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& a) {
    IntMatrix m = a;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(p, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m(i, c) == 0) continue;
            Integer f = m(i, c), g = m(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = m(i, j) * g - m(r, j) * f;
            Integer h = gcd_of(m.row(i));
            if (h > 1)
                for (std::size_t j = c; j < m.cols(); ++j) mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), h.get_mpz_t());
        }
        ++r;
    }
    return r;
}

RationalInverse rational_inverse(const IntMatrix& a) {
    if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
    const std::size_t n = a.rows();
    // Gauss-Jordan over the rationals, then scale by det.
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw Error(ErrorCode::Degenerate, "matrix is singular");
        std::swap(m[p], m[c]);
        Rational inv = 1 / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    RationalInverse out{IntMatrix(n, n), determinant(a)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational v = m[i][n + j] * out.det;
            if (v.get_den() != 1) throw Error(ErrorCode::NonIntegral, "adjugate is not integral");
            out.adjugate(i, j) = v.get_num();
        }
    return out;
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
    RationalInverse inv = rational_inverse(a);
    if (abs(inv.det) != 1) throw Error(ErrorCode::NonIntegral, "matrix is not unimodular");
    IntMatrix out = inv.adjugate;
    if (inv.det == -1)
        for (std::size_t i = 0; i < out.rows(); ++i)
            for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) = -out(i, j);
    return out;
}

RatVector solve_row(const IntMatrix& a, const IntVector& b) {
    RationalInverse inv = rational_inverse(a);
    IntVector num = row_times(b, inv.adjugate);
    RatVector x(num.size());
    for (std::size_t i = 0; i < num.size(); ++i) {
        x[i] = Rational(num[i], inv.det);
        x[i].canonicalize();
    }
    return x;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) os << ",";
        os << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) os << ",";
            os << m(i, j).get_str();
        }
        os << "]";
    }
    os << "]";
    return os.str();
}

}  // namespace k3dual
