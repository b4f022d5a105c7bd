#include "k3dual/picard.hpp"

#include <algorithm>
#include <map>

namespace k3dual {

const char* ray_kind_name(RayKind kind) { return kind == RayKind::Vertex ? "vertex" : "edge-interior"; }

std::vector<LatticeVector> RaySet::points() const {
    std::vector<LatticeVector> out;
    for (const auto& r : rays) out.push_back(r.point);
    return out;
}

RaySet picard_rays(const Polytope3& delta, const std::optional<std::vector<LatticeVector>>& ordering) {
    if (!is_reflexive(delta)) throw Error(ErrorCode::NotReflexive, "rays are defined for reflexive polytopes");
    RaySet rs;
    for (std::size_t v = 0; v < delta.vertices().size(); ++v)
        rs.rays.push_back({delta.vertices()[v], RayKind::Vertex, {FaceKind::Vertex, v}, 0});
    for (std::size_t e = 0; e < delta.edges().size(); ++e) {
        const auto& in = delta.edges()[e].interior;
        for (std::size_t k = 0; k < in.size(); ++k)
            rs.rays.push_back({in[k], RayKind::EdgeInterior, {FaceKind::Edge, e}, k + 1});
    }
    std::sort(rs.rays.begin(), rs.rays.end(), [](const Ray& a, const Ray& b) { return a.point < b.point; });
    if (!ordering) return rs;

    if (ordering->size() != rs.rays.size())
        throw Error(ErrorCode::InvalidOrdering, "ordering lists " + std::to_string(ordering->size()) +
                                                    " rays, polytope has " + std::to_string(rs.rays.size()));
    RaySet out;
    std::vector<bool> taken(rs.rays.size(), false);
    for (const auto& p : *ordering) {
        auto it = std::lower_bound(rs.rays.begin(), rs.rays.end(), p,
                                   [](const Ray& r, const LatticeVector& q) { return r.point < q; });
        if (it == rs.rays.end() || it->point != p)
            throw Error(ErrorCode::InvalidOrdering, "ordering contains " + to_string(p) + ", which is not a ray");
        std::size_t idx = static_cast<std::size_t>(it - rs.rays.begin());
        if (taken[idx]) throw Error(ErrorCode::InvalidOrdering, "ordering repeats " + to_string(p));
        taken[idx] = true;
        out.rays.push_back(*it);
    }
    return out;
}

IntMatrix linear_relations(const RaySet& rays) {
    IntMatrix m(3, rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i)
        for (std::size_t j = 0; j < 3; ++j) m(j, i) = rays.rays[i].point[j];
    if (rank(m) != 3) throw Error(ErrorCode::RankDeficient, "rays do not span Z^3 rationally");
    return m;
}

namespace {

Integer triple_det(const RaySet& rs, std::size_t a, std::size_t b, std::size_t c) {
    return determinant(IntMatrix::from_rows(
        {rs.rays[a].point.to_vector(), rs.rays[b].point.to_vector(), rs.rays[c].point.to_vector()}));
}

PicardBasis make_basis(std::size_t n, std::array<std::size_t, 3> dropped) {
    std::sort(dropped.begin(), dropped.end());
    PicardBasis b;
    b.dropped = dropped;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(dropped.begin(), dropped.end(), i) == dropped.end()) b.kept.push_back(i);
    return b;
}

}  // namespace

PicardBasis select_basis(const RaySet& rays, const std::optional<std::array<std::size_t, 3>>& dropped) {
    const std::size_t n = rays.size();
    if (dropped) {
        auto d = *dropped;
        std::sort(d.begin(), d.end());
        if (d[2] >= n || d[0] == d[1] || d[1] == d[2])
            throw Error(ErrorCode::InvalidOverride, "dropped indices must be 3 distinct ray indices");
        Integer det = triple_det(rays, d[0], d[1], d[2]);
        if (abs(det) != 1)
            throw Error(ErrorCode::InvalidOverride, "dropped rays have determinant " + det.get_str() + ", need ±1");
        return make_basis(n, d);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c)
                if (abs(triple_det(rays, a, b, c)) == 1) return make_basis(n, {a, b, c});
    throw Error(ErrorCode::NoBasis, "no unimodular triple of rays");
}

IntMatrix full_intersection_form(const Polytope3& delta, const RaySet& rays) {
    if (!is_reflexive(delta)) throw Error(ErrorCode::NotReflexive, "intersection form needs a reflexive polytope");
    const Polytope3 dual = polar_dual(delta);
    const std::size_t n = rays.size();

    // Position of every ray along each edge it lies on (0 .. l*+1).
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> at;  // (edge, position) -> ray
    for (std::size_t i = 0; i < n; ++i) {
        const Ray& r = rays.rays[i];
        if (r.kind == RayKind::EdgeInterior) {
            at[{r.face.index, r.position}] = i;
        } else {
            for (std::size_t e : delta.vertex_edges(r.face.index)) {
                const Edge& ed = delta.edges()[e];
                at[{e, ed.from == r.face.index ? 0 : ed.interior.size() + 1}] = i;
            }
        }
    }

    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const Ray& r = rays.rays[i];
        if (r.kind == RayKind::Vertex) {
            FaceRef f = dual_face(delta, dual, r.face);
            g(i, i) = 2 * static_cast<long>(l_star(dual, f)) - 2;
        } else {
            g(i, i) = -2;
        }
    }
    for (std::size_t e = 0; e < delta.edges().size(); ++e) {
        FaceRef de = dual_face(delta, dual, {FaceKind::Edge, e});
        long value = static_cast<long>(l_star(dual, de)) + 1;
        const std::size_t len = delta.edges()[e].interior.size() + 1;
        for (std::size_t k = 0; k < len; ++k) {
            auto a = at.find({e, k});
            auto b = at.find({e, k + 1});
            if (a == at.end() || b == at.end()) continue;
            g(a->second, b->second) = value;
            g(b->second, a->second) = value;
        }
    }
    return g;
}

std::size_t rk_l0(const Polytope3& delta) {
    if (!is_reflexive(delta)) throw Error(ErrorCode::NotReflexive, "rk L0 needs a reflexive polytope");
    const Polytope3 dual = polar_dual(delta);
    std::size_t sum = 0;
    for (std::size_t e = 0; e < delta.edges().size(); ++e) {
        FaceRef de = dual_face(delta, dual, {FaceKind::Edge, e});
        sum += delta.edges()[e].interior.size() * l_star(dual, de);
    }
    return sum;
}

GramLattice intersection_matrix(const Polytope3& delta, const RaySet& rays, const PicardBasis& basis) {
    const std::size_t l0 = rk_l0(delta);
    if (l0 != 0) throw Error(ErrorCode::L0NotZero, "rk L0 = " + std::to_string(l0));
    for (std::size_t i : basis.kept)
        if (i >= rays.size()) throw Error(ErrorCode::InvalidOverride, "basis index out of range");
    if (basis.kept.size() + 3 != rays.size()) throw Error(ErrorCode::InvalidOverride, "basis does not match ray set");
    IntMatrix full = full_intersection_form(delta, rays);
    return GramLattice(submatrix(full, basis.kept, basis.kept));
}

namespace {

// All lattice points of p, counted column by column without classification.
std::size_t count_all_points(const Polytope3& p) {
    Integer xmin = p.vertices()[0].x, xmax = xmin, ymin = p.vertices()[0].y, ymax = ymin;
    for (const auto& v : p.vertices()) {
        xmin = std::min<Integer>(xmin, v.x);
        xmax = std::max<Integer>(xmax, v.x);
        ymin = std::min<Integer>(ymin, v.y);
        ymax = std::max<Integer>(ymax, v.y);
    }
    std::size_t count = 0;
    for (Integer x = xmin; x <= xmax; ++x)
        for (Integer y = ymin; y <= ymax; ++y) {
            std::optional<Integer> lo, hi;
            bool ok = true;
            for (const auto& f : p.facets()) {
                const Integer a = f.plane.normal.z;
                const Integer c = f.plane.normal.x * x + f.plane.normal.y * y + f.plane.offset;
                if (a == 0) {
                    if (c < 0) ok = false;
                } else if (a > 0) {
                    Integer b = ceil_div(-c, a);
                    if (!lo || b > *lo) lo = b;
                } else {
                    Integer b = floor_div(c, -a);
                    if (!hi || b < *hi) hi = b;
                }
                if (!ok) break;
            }
            if (ok && lo && hi && *hi >= *lo) count += Integer(*hi - *lo + 1).get_ui();
        }
    return count;
}

}  // namespace

PicardCount picard_counts(const Polytope3& delta) {
    PicardCount c;
    c.rk_l0 = static_cast<long>(rk_l0(delta));
    c.from_rays = static_cast<long>(picard_rays(delta).size()) - 3 + c.rk_l0;
    long facet_sum = 0;
    for (const auto& f : delta.facets()) facet_sum += static_cast<long>(f.interior.size());
    c.from_points = static_cast<long>(count_all_points(delta)) - 4 - facet_sum + c.rk_l0;
    return c;
}

long picard_number(const Polytope3& delta) {
    PicardCount c = picard_counts(delta);
    if (c.from_rays != c.from_points)
        throw Error(ErrorCode::FormulaMismatch, "ray count gives " + std::to_string(c.from_rays) +
                                                    ", point count gives " + std::to_string(c.from_points));
    return c.from_rays;
}

}  // namespace k3dual
