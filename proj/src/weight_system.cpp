#include "k3dual/weight_system.hpp"

#include "k3dual/smith.hpp"

namespace k3dual {

WeightSystem::WeightSystem(std::array<Integer, 4> weights, std::array<IntVector, 3> basis)
    : weights_(std::move(weights)), basis_(std::move(basis)) {
    for (const auto& w : weights_)
        if (w <= 0) throw Error(ErrorCode::InvalidWeightSystem, "weights must be positive");
    IntVector wv(weights_.begin(), weights_.end());
    for (const auto& b : basis_) {
        if (b.size() != 4) throw Error(ErrorCode::InvalidWeightSystem, "basis vectors need 4 entries");
        if (dot(wv, b) != 0)
            throw Error(ErrorCode::InvalidWeightSystem, "basis vector " + to_string(b) + " is not weight-orthogonal");
    }
    IntMatrix m = IntMatrix::from_rows({basis_[0], basis_[1], basis_[2]});
    if (rank(m) != 3) throw Error(ErrorCode::InvalidWeightSystem, "basis has rank below 3");
}

Integer WeightSystem::degree() const { return weights_[0] + weights_[1] + weights_[2] + weights_[3]; }

Integer WeightSystem::sublattice_index() const {
    // The orthogonal sublattice is saturated, so the index is the product of
    // the Smith invariants of the basis matrix.
    SmithForm s = smith_normal_form(IntMatrix::from_rows({basis_[0], basis_[1], basis_[2]}));
    Integer idx = 1;
    for (const auto& d : s.diagonal) idx *= d;
    return idx;
}

LatticeVector monomial_to_lattice_point(const WeightSystem& ws, const std::array<Integer, 4>& exponents) {
    Integer deg = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (exponents[i] < 0) throw Error(ErrorCode::WrongDegree, "negative exponent");
        deg += ws.weights()[i] * exponents[i];
    }
    if (deg != ws.degree())
        throw Error(ErrorCode::WrongDegree, "monomial has degree " + deg.get_str() + ", expected " + ws.degree().get_str());
    IntVector shifted(4);
    for (std::size_t i = 0; i < 4; ++i) shifted[i] = exponents[i] - 1;

    // Solve c·B = shifted with B the 3x4 basis matrix via Smith form.
    IntMatrix b = IntMatrix::from_rows({ws.basis()[0], ws.basis()[1], ws.basis()[2]});
    SmithForm s = smith_normal_form(b.transpose());  // 4x3, P·Bt·Q = S
    IntVector rhs = times_col(s.P, shifted);
    IntVector y(3);
    for (std::size_t i = 0; i < 3; ++i) {
        if (rhs[i] % s.diagonal[i] != 0)
            throw Error(ErrorCode::NotInLattice, "monomial is not in the span of the basis");
        y[i] = rhs[i] / s.diagonal[i];
    }
    if (rhs[3] != 0) throw Error(ErrorCode::NotInLattice, "monomial is not in the span of the basis");
    return LatticeVector::from_vector(times_col(s.Q, y));
}

Polytope3 newton_polytope(const WeightSystem& ws, const std::vector<std::array<Integer, 4>>& monomials) {
    std::vector<LatticeVector> pts;
    for (const auto& m : monomials) pts.push_back(monomial_to_lattice_point(ws, m));
    return convex_hull(pts);
}

}  // namespace k3dual
