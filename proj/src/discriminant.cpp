#include "k3dual/discriminant.hpp"

#include <functional>
#include <set>

#include "k3dual/error.hpp"
#include "k3dual/smith.hpp"

namespace k3dual {

namespace {

const Integer kTwo = 2;
const Integer kOne = 1;

Rational inverse_pair(const IntMatrix& g, const IntVector& x, const IntVector& y) {
    RatVector s = solve_row(g, x);
    Rational r = 0;
    for (std::size_t i = 0; i < y.size(); ++i) r += s[i] * y[i];
    return r;
}

}  // namespace

Integer FiniteQuadraticForm::order() const {
    Integer o = 1;
    for (const auto& d : invariant_factors) o *= d;
    return o;
}

Rational FiniteQuadraticForm::q(const IntVector& c) const {
    Rational r = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (c[i] == 0) continue;
        r += Rational(c[i] * c[i]) * q_values[i];
        for (std::size_t j = i + 1; j < size(); ++j) r += Rational(2 * c[i] * c[j]) * bilinear[i][j];
    }
    return reduce_mod(r, kTwo);
}

Rational FiniteQuadraticForm::b(const IntVector& x, const IntVector& y) const {
    Rational r = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < size(); ++j) r += Rational(x[i] * y[j]) * bilinear[i][j];
    }
    return reduce_mod(r, kOne);
}

Integer FiniteQuadraticForm::element_order(const IntVector& c) const {
    Integer o = 1;
    for (std::size_t i = 0; i < size(); ++i) {
        Integer g = gcd(c[i], invariant_factors[i]);
        o = lcm(o, Integer(invariant_factors[i] / g));
    }
    return o;
}

FiniteQuadraticForm discriminant_form(const GramLattice& l) {
    if (!l.is_even()) throw Error(ErrorCode::NotEven, "discriminant form needs an even lattice");
    if (determinant(l) == 0) throw Error(ErrorCode::Degenerate, "discriminant form needs a nondegenerate lattice");
    const IntMatrix& g = l.gram();
    SmithForm s = smith_normal_form(g);
    FiniteQuadraticForm f;
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) {
        if (s.diagonal[i] <= 1) continue;
        f.invariant_factors.push_back(s.diagonal[i]);
        f.generators.push_back(s.Q_inverse.row(i));
    }
    const std::size_t k = f.size();
    f.bilinear.assign(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i) {
        f.q_values.push_back(reduce_mod(inverse_pair(g, f.generators[i], f.generators[i]), kTwo));
        for (std::size_t j = 0; j < k; ++j)
            f.bilinear[i][j] = reduce_mod(inverse_pair(g, f.generators[i], f.generators[j]), kOne);
    }
    return f;
}

std::size_t min_generators(const FiniteQuadraticForm& f) { return f.size(); }

namespace {

std::vector<IntVector> all_elements(const FiniteQuadraticForm& f) {
    std::vector<IntVector> out;
    IntVector c(f.size(), Integer(0));
    for (;;) {
        out.push_back(c);
        std::size_t i = 0;
        for (; i < c.size(); ++i) {
            if (++c[i] < f.invariant_factors[i]) break;
            c[i] = 0;
        }
        if (i == c.size()) break;
    }
    return out;
}

IntVector combine(const FiniteQuadraticForm& to, const std::vector<IntVector>& images, const IntVector& coeffs) {
    IntVector r(to.size(), Integer(0));
    for (std::size_t i = 0; i < images.size(); ++i)
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += coeffs[i] * images[i][j];
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = mod_floor(r[j], to.invariant_factors[j]);
    return r;
}

Rational signed_value(const Rational& v, int sign, const Integer& m) { return reduce_mod(sign * v, m); }

}  // namespace

bool verify_form_isomorphism(const FiniteQuadraticForm& from, const FiniteQuadraticForm& to,
                             const FormIsomorphism& iso) {
    if (from.invariant_factors != to.invariant_factors) return false;
    if (iso.images.size() != from.size()) return false;
    for (const auto& img : iso.images)
        if (img.size() != to.size()) return false;
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (to.element_order(iso.images[i]) != from.invariant_factors[i]) return false;
        if (to.q(iso.images[i]) != signed_value(from.q_values[i], iso.sign, kTwo)) return false;
        for (std::size_t j = 0; j < from.size(); ++j)
            if (to.b(iso.images[i], iso.images[j]) != signed_value(from.bilinear[i][j], iso.sign, kOne)) return false;
    }
    // Injectivity: images of all source elements are distinct.
    std::set<IntVector> seen;
    for (const auto& c : all_elements(from))
        if (!seen.insert(combine(to, iso.images, c)).second) return false;
    return true;
}

std::optional<FormIsomorphism> find_form_isomorphism(const FiniteQuadraticForm& from, const FiniteQuadraticForm& to,
                                                     int sign, const Integer& max_order) {
    if (from.order() > max_order || to.order() > max_order)
        throw Error(ErrorCode::GroupTooLarge, "group order exceeds " + max_order.get_str());
    if (from.invariant_factors != to.invariant_factors) return std::nullopt;
    const auto elements = all_elements(to);
    const std::size_t k = from.size();

    std::vector<std::vector<std::size_t>> candidates(k);
    for (std::size_t i = 0; i < k; ++i) {
        Rational want = signed_value(from.q_values[i], sign, kTwo);
        for (std::size_t e = 0; e < elements.size(); ++e)
            if (to.element_order(elements[e]) == from.invariant_factors[i] && to.q(elements[e]) == want)
                candidates[i].push_back(e);
    }

    FormIsomorphism iso;
    iso.sign = sign;
    iso.images.resize(k);
    std::function<bool(std::size_t)> search = [&](std::size_t depth) -> bool {
        if (depth == k) return verify_form_isomorphism(from, to, iso);
        for (std::size_t e : candidates[depth]) {
            const IntVector& x = elements[e];
            bool ok = true;
            for (std::size_t j = 0; j < depth && ok; ++j)
                ok = to.b(x, iso.images[j]) == signed_value(from.bilinear[depth][j], sign, kOne);
            if (!ok) continue;
            iso.images[depth] = x;
            if (search(depth + 1)) return true;
        }
        return false;
    };
    if (search(0)) return iso;
    return std::nullopt;
}

std::optional<FormIsomorphism> forms_opposite(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b,
                                              const Integer& max_order) {
    return find_form_isomorphism(a, b, -1, max_order);
}

}  // namespace k3dual
