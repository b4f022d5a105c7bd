#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace k3dual {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Floor division and remainder with non-negative result for positive divisors.
Integer floor_div(const Integer& a, const Integer& b);
Integer ceil_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

Integer gcd_of(const IntVector& v);
Integer lcm_of(const std::vector<Integer>& v);
bool fits_int64(const Integer& v);
std::int64_t to_int64(const Integer& v);

// Reduce a rational into [0, m).
Rational reduce_mod(const Rational& value, const Integer& m);

std::string to_string(const Integer& v);
std::string to_string(const Rational& v);
std::string to_string(const IntVector& v);

Integer dot(const IntVector& a, const IntVector& b);

// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector row(std::size_t r) const;
    IntVector col(std::size_t c) const;
    std::vector<IntVector> to_rows() const;

    IntMatrix transpose() const;
    bool is_symmetric() const;
    Integer max_abs() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// Rows of vectors times matrix: v·A.
IntVector row_times(const IntVector& v, const IntMatrix& a);
// Matrix times column vector.
IntVector times_col(const IntMatrix& a, const IntVector& v);

IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix submatrix(const IntMatrix& a, const std::vector<std::size_t>& rows,
                    const std::vector<std::size_t>& cols);

// Bareiss fraction-free determinant.
Integer determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

// Exact inverse of a nonsingular square matrix, as adjugate / det.
struct RationalInverse {
    IntMatrix adjugate;
    Integer det;
};
RationalInverse rational_inverse(const IntMatrix& a);

// Integer inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& a);

// Solves x·A = b for rational x (A square, nonsingular).
RatVector solve_row(const IntMatrix& a, const IntVector& b);

std::string to_string(const IntMatrix& m);

}  // namespace k3dual
