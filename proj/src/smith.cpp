#include "k3dual/smith.hpp"

#include <algorithm>
#include <utility>

namespace k3dual {

namespace {

class Reducer {
public:
    explicit Reducer(const IntMatrix& a)
        : m_(a),
          p_(IntMatrix::identity(a.rows())),
          pi_(IntMatrix::identity(a.rows())),
          q_(IntMatrix::identity(a.cols())),
          qi_(IntMatrix::identity(a.cols())) {}

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < m_.cols(); ++c) std::swap(m_(i, c), m_(j, c));
        for (std::size_t c = 0; c < p_.cols(); ++c) std::swap(p_(i, c), p_(j, c));
        for (std::size_t r = 0; r < pi_.rows(); ++r) std::swap(pi_(r, i), pi_(r, j));
    }

    // row_i += c * row_j
    void add_row(std::size_t i, std::size_t j, const Integer& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < m_.cols(); ++k) m_(i, k) += c * m_(j, k);
        for (std::size_t k = 0; k < p_.cols(); ++k) p_(i, k) += c * p_(j, k);
        for (std::size_t r = 0; r < pi_.rows(); ++r) pi_(r, j) -= c * pi_(r, i);
    }

    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < m_.cols(); ++k) m_(i, k) = -m_(i, k);
        for (std::size_t k = 0; k < p_.cols(); ++k) p_(i, k) = -p_(i, k);
        for (std::size_t r = 0; r < pi_.rows(); ++r) pi_(r, i) = -pi_(r, i);
    }

    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m_.rows(); ++r) std::swap(m_(r, i), m_(r, j));
        for (std::size_t r = 0; r < q_.rows(); ++r) std::swap(q_(r, i), q_(r, j));
        for (std::size_t c = 0; c < qi_.cols(); ++c) std::swap(qi_(i, c), qi_(j, c));
    }

    // col_i += c * col_j
    void add_col(std::size_t i, std::size_t j, const Integer& c) {
        if (c == 0) return;
        for (std::size_t r = 0; r < m_.rows(); ++r) m_(r, i) += c * m_(r, j);
        for (std::size_t r = 0; r < q_.rows(); ++r) q_(r, i) += c * q_(r, j);
        for (std::size_t k = 0; k < qi_.cols(); ++k) qi_(j, k) -= c * qi_(i, k);
    }

    SmithForm run() {
        const std::size_t n = std::min(m_.rows(), m_.cols());
        std::size_t t = 0;
        for (; t < n; ++t) {
            if (!place_pivot(t)) break;
            reduce_at(t);
            if (m_(t, t) < 0) negate_row(t);
        }
        SmithForm out;
        out.rank = t;
        out.diagonal.assign(n, Integer(0));
        for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = m_(i, i);
        out.S = m_;
        out.P = p_;
        out.P_inverse = pi_;
        out.Q = q_;
        out.Q_inverse = qi_;
        return out;
    }

private:
    bool place_pivot(std::size_t t) {
        std::size_t bi = 0, bj = 0;
        bool found = false;
        Integer best;
        for (std::size_t i = t; i < m_.rows(); ++i)
            for (std::size_t j = t; j < m_.cols(); ++j) {
                if (m_(i, j) == 0) continue;
                if (!found || abs(m_(i, j)) < best) {
                    best = abs(m_(i, j));
                    bi = i;
                    bj = j;
                    found = true;
                }
            }
        if (!found) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    // Nearest-integer quotient keeps entries small.
    static Integer rounded_quotient(const Integer& a, const Integer& b) {
        Integer q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        if (2 * abs(r) > abs(b)) q += 1;
        return q;
    }

    // Moves the smallest non-zero entry of row t and column t onto the diagonal.
    void smallest_to_pivot(std::size_t t) {
        std::size_t bi = t, bj = t;
        Integer best = abs(m_(t, t));
        for (std::size_t i = t + 1; i < m_.rows(); ++i)
            if (m_(i, t) != 0 && (best == 0 || abs(m_(i, t)) < best)) {
                best = abs(m_(i, t));
                bi = i;
                bj = t;
            }
        for (std::size_t j = t + 1; j < m_.cols(); ++j)
            if (m_(t, j) != 0 && (best == 0 || abs(m_(t, j)) < best)) {
                best = abs(m_(t, j));
                bi = t;
                bj = j;
            }
        swap_rows(t, bi);
        swap_cols(t, bj);
    }

    void reduce_at(std::size_t t) {
        for (;;) {
            smallest_to_pivot(t);
            bool clean = true;
            for (std::size_t i = t + 1; i < m_.rows(); ++i) {
                if (m_(i, t) == 0) continue;
                add_row(i, t, -rounded_quotient(m_(i, t), m_(t, t)));
                clean = clean && m_(i, t) == 0;
            }
            for (std::size_t j = t + 1; j < m_.cols(); ++j) {
                if (m_(t, j) == 0) continue;
                add_col(j, t, -rounded_quotient(m_(t, j), m_(t, t)));
                clean = clean && m_(t, j) == 0;
            }
            if (!clean) continue;
            bool divisible = true;
            for (std::size_t i = t + 1; i < m_.rows() && divisible; ++i)
                for (std::size_t j = t + 1; j < m_.cols(); ++j)
                    if (m_(i, j) % m_(t, t) != 0) {
                        add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) return;
        }
    }

    IntMatrix m_, p_, pi_, q_, qi_;
};

}  // namespace

std::vector<Integer> SmithForm::invariant_factors() const {
    std::vector<Integer> out;
    for (const auto& d : diagonal)
        if (d > 1) out.push_back(d);
    return out;
}

SmithForm smith_normal_form(const IntMatrix& a) { return Reducer(a).run(); }

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithForm s = smith_normal_form(a);
    const std::size_t n = a.cols();
    IntMatrix k(n, n - s.rank);
    for (std::size_t j = s.rank; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) k(i, j - s.rank) = s.Q(i, j);
    return k;
}

}  // namespace k3dual
