#include "k3dual/lattice.hpp"

#include <cctype>

#include "k3dual/error.hpp"
#include "k3dual/smith.hpp"

namespace k3dual {

std::string to_string(const SignaturePair& s) {
    return "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ")";
}

GramLattice::GramLattice(IntMatrix gram, std::string label) : gram_(std::move(gram)), label_(std::move(label)) {
    if (!gram_.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "Gram matrix must be square and symmetric");
}

bool GramLattice::is_even() const {
    for (std::size_t i = 0; i < gram_.rows(); ++i)
        if (gram_(i, i) % 2 != 0) return false;
    return true;
}

GramLattice GramLattice::with_label(std::string label) const {
    GramLattice l = *this;
    l.label_ = std::move(label);
    return l;
}

Integer GramLattice::pair(const IntVector& a, const IntVector& b) const {
    return dot(row_times(a, gram_), b);
}

Integer determinant(const GramLattice& l) { return determinant(l.gram()); }

SignaturePair signature(const IntMatrix& g) {
    if (!g.is_symmetric()) throw Error(ErrorCode::NotSymmetric, "signature needs a symmetric matrix");
    std::size_t n = g.rows();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = g(i, j);
    std::vector<bool> done(n, false);
    SignaturePair sig;
    std::size_t remaining = n;
    while (remaining > 0) {
        std::size_t piv = n;
        for (std::size_t i = 0; i < n && piv == n; ++i)
            if (!done[i] && a[i][i] != 0) piv = i;
        if (piv != n) {
            if (a[piv][piv] > 0) ++sig.positive;
            else ++sig.negative;
            done[piv] = true;
            --remaining;
            for (std::size_t j = 0; j < n; ++j) {
                if (done[j] || a[j][piv] == 0) continue;
                Rational f = a[j][piv] / a[piv][piv];
                for (std::size_t k = 0; k < n; ++k)
                    if (!done[k]) a[j][k] -= f * a[piv][k];
            }
            continue;
        }
        // All remaining diagonal entries vanish: split off a hyperbolic block.
        std::size_t p = n, q = n;
        for (std::size_t i = 0; i < n && p == n; ++i) {
            if (done[i]) continue;
            for (std::size_t j = i + 1; j < n; ++j)
                if (!done[j] && a[i][j] != 0) {
                    p = i;
                    q = j;
                    break;
                }
        }
        if (p == n) throw Error(ErrorCode::Degenerate, "form is degenerate");
        ++sig.positive;
        ++sig.negative;
        done[p] = done[q] = true;
        remaining -= 2;
        Rational c = a[p][q];
        std::vector<std::size_t> rest;
        for (std::size_t j = 0; j < n; ++j)
            if (!done[j]) rest.push_back(j);
        std::vector<std::vector<Rational>> upd(rest.size(), std::vector<Rational>(rest.size()));
        for (std::size_t x = 0; x < rest.size(); ++x)
            for (std::size_t y = 0; y < rest.size(); ++y) {
                std::size_t j = rest[x], k = rest[y];
                upd[x][y] = (a[j][p] * a[q][k] + a[j][q] * a[p][k]) / c;
            }
        for (std::size_t x = 0; x < rest.size(); ++x)
            for (std::size_t y = 0; y < rest.size(); ++y) a[rest[x]][rest[y]] -= upd[x][y];
    }
    return sig;
}

SignaturePair signature(const GramLattice& l) { return signature(l.gram()); }

std::vector<Integer> invariant_factors(const GramLattice& l) {
    return smith_normal_form(l.gram()).invariant_factors();
}

GramLattice lattice_U() { return GramLattice(IntMatrix{{0, 1}, {1, 0}}, "U"); }

namespace {

IntMatrix from_edges(long n, const std::vector<std::pair<long, long>>& edges) {
    IntMatrix m(n, n);
    for (long i = 0; i < n; ++i) m(i, i) = -2;
    for (auto [a, b] : edges) {
        m(a - 1, b - 1) = 1;
        m(b - 1, a - 1) = 1;
    }
    return m;
}

}  // namespace

GramLattice lattice_A(long n) {
    if (n < 1) throw Error(ErrorCode::InvalidParameter, "A_n needs n >= 1");
    std::vector<std::pair<long, long>> e;
    for (long i = 1; i < n; ++i) e.emplace_back(i, i + 1);
    return GramLattice(from_edges(n, e), "A" + std::to_string(n));
}

GramLattice lattice_D(long n) {
    if (n < 4) throw Error(ErrorCode::InvalidParameter, "D_n needs n >= 4");
    std::vector<std::pair<long, long>> e;
    for (long i = 1; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    e.emplace_back(n - 2, n);
    return GramLattice(from_edges(n, e), "D" + std::to_string(n));
}

GramLattice lattice_E(long n) {
    if (n < 6 || n > 8) throw Error(ErrorCode::InvalidParameter, "E_n needs n in {6,7,8}");
    std::vector<std::pair<long, long>> e{{1, 3}, {3, 4}, {4, 5}, {2, 4}};
    for (long i = 5; i < n; ++i) e.emplace_back(i, i + 1);
    return GramLattice(from_edges(n, e), "E" + std::to_string(n));
}

GramLattice lattice_C6_8() { return GramLattice(IntMatrix{{-4, 1}, {1, -2}}, "C6_8"); }

GramLattice standard_lattice(std::string_view name) {
    if (name == "U") return lattice_U();
    if (name == "C6_8") return lattice_C6_8();
    if (name.size() >= 2 && (name[0] == 'A' || name[0] == 'D' || name[0] == 'E')) {
        long n = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i])) || n > 100000)
                throw Error(ErrorCode::InvalidParameter, "unknown lattice name '" + std::string(name) + "'");
            n = n * 10 + (name[i] - '0');
        }
        if (name[0] == 'A') return lattice_A(n);
        if (name[0] == 'D') return lattice_D(n);
        return lattice_E(n);
    }
    throw Error(ErrorCode::InvalidParameter, "unknown lattice name '" + std::string(name) + "'");
}

GramLattice direct_sum(const GramLattice& a, const GramLattice& b) {
    std::string label;
    if (!a.label().empty() && !b.label().empty()) label = a.label() + "+" + b.label();
    else if (a.rank() == 0) label = b.label();
    else if (b.rank() == 0) label = a.label();
    return GramLattice(block_diagonal(a.gram(), b.gram()), label);
}

GramLattice direct_sum(const std::vector<GramLattice>& parts) {
    GramLattice out(IntMatrix(0, 0));
    for (const auto& p : parts) out = direct_sum(out, p);
    return out;
}

GramLattice apply_basis_change(const GramLattice& l, const IntMatrix& b) {
    if (b.cols() != l.rank()) throw Error(ErrorCode::DimensionMismatch, "basis rows have the wrong length");
    if (rank(b) != b.rows()) throw Error(ErrorCode::Degenerate, "basis rows are linearly dependent");
    return GramLattice(b * l.gram() * b.transpose());
}

Integer torsion_order(const GramLattice& l, const IntVector& x) {
    RatVector y = solve_row(l.gram(), x);
    std::vector<Integer> dens;
    for (const auto& v : y) dens.push_back(v.get_den());
    return lcm_of(dens);
}

}  // namespace k3dual
