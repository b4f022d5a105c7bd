#include "k3dual/polytope.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "k3dual/smith.hpp"

namespace k3dual {

LatticeVector LatticeVector::from_vector(const IntVector& v) {
    if (v.size() != 3) throw Error(ErrorCode::DimensionMismatch, "lattice vector needs 3 coordinates");
    return {v[0], v[1], v[2]};
}

bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
}
bool operator!=(const LatticeVector& a, const LatticeVector& b) { return !(a == b); }
bool operator<(const LatticeVector& a, const LatticeVector& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
}
LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
LatticeVector operator-(const LatticeVector& a) { return {-a.x, -a.y, -a.z}; }
LatticeVector operator*(const Integer& s, const LatticeVector& a) { return {s * a.x, s * a.y, s * a.z}; }
Integer dot(const LatticeVector& a, const LatticeVector& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
LatticeVector cross(const LatticeVector& a, const LatticeVector& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
Integer content(const LatticeVector& a) { return gcd(gcd(a.x, a.y), a.z); }
bool is_zero(const LatticeVector& a) { return a.x == 0 && a.y == 0 && a.z == 0; }
std::string to_string(const LatticeVector& v) {
    return "(" + v.x.get_str() + "," + v.y.get_str() + "," + v.z.get_str() + ")";
}

LatticeVector apply(const LatticeVector& v, const IntMatrix& t) {
    if (t.rows() != 3 || t.cols() != 3) throw Error(ErrorCode::DimensionMismatch, "expected a 3x3 matrix");
    return LatticeVector::from_vector(row_times(v.to_vector(), t));
}

bool operator==(const HalfSpace& a, const HalfSpace& b) { return a.normal == b.normal && a.offset == b.offset; }

bool operator==(const FaceRef& a, const FaceRef& b) { return a.kind == b.kind && a.index == b.index; }

const char* face_kind_name(FaceKind kind) {
    switch (kind) {
        case FaceKind::Vertex: return "vertex";
        case FaceKind::Edge: return "edge";
        case FaceKind::Facet: return "facet";
    }
    return "?";
}

const char* point_class_name(PointClass c) {
    switch (c) {
        case PointClass::Vertex: return "vertex";
        case PointClass::EdgeInterior: return "edge-interior";
        case PointClass::FacetInterior: return "facet-interior";
        case PointClass::Interior: return "interior";
    }
    return "?";
}

namespace {

Integer orient(const LatticeVector& a, const LatticeVector& b, const LatticeVector& c, const LatticeVector& p) {
    return dot(cross(b - a, c - a), p - a);
}

// Integer range {t : a*t + c > 0} (strict) or >= 0, intersected into [lo, hi].
// Returns false when the constraint cannot be met.
bool restrict_range(const Integer& a, const Integer& c, bool strict, std::optional<Integer>& lo,
                    std::optional<Integer>& hi) {
    if (a == 0) return strict ? c > 0 : c >= 0;
    if (a > 0) {
        // t > -c/a or t >= -c/a
        Integer bound = strict ? floor_div(-c, a) + 1 : ceil_div(-c, a);
        if (!lo || bound > *lo) lo = bound;
    } else {
        // t < c/(-a) or t <= c/(-a)
        Integer na = -a;
        Integer bound = strict ? ceil_div(c, na) - 1 : floor_div(c, na);
        if (!hi || bound < *hi) hi = bound;
    }
    return true;
}

// Lattice points x0 + s*u + t*w strictly inside every half-space but `skip`.
std::vector<LatticeVector> facet_interior(const std::vector<Facet>& facets, std::size_t f,
                                          const std::vector<LatticeVector>& vertices) {
    const HalfSpace& h = facets[f].plane;
    IntMatrix row(1, 3);
    for (std::size_t i = 0; i < 3; ++i) row(0, i) = h.normal[i];
    SmithForm s = smith_normal_form(row);
    Integer sign = s.P(0, 0);
    LatticeVector q0 = LatticeVector::from_vector(s.Q.col(0));
    LatticeVector u = LatticeVector::from_vector(s.Q.col(1));
    LatticeVector w = LatticeVector::from_vector(s.Q.col(2));
    LatticeVector x0 = (-h.offset * sign) * q0;

    std::optional<Integer> smin, smax;
    for (std::size_t vi : facets[f].vertices) {
        IntVector st = times_col(s.Q_inverse, (vertices[vi] - x0).to_vector());
        if (!smin || st[1] < *smin) smin = st[1];
        if (!smax || st[1] > *smax) smax = st[1];
    }
    std::vector<LatticeVector> out;
    for (Integer sv = *smin; sv <= *smax; ++sv) {
        LatticeVector base = x0 + sv * u;
        std::optional<Integer> lo, hi;
        bool ok = true;
        for (std::size_t k = 0; k < facets.size() && ok; ++k) {
            if (k == f) continue;
            const HalfSpace& g = facets[k].plane;
            ok = restrict_range(dot(g.normal, w), g.slack(base), true, lo, hi);
        }
        if (!ok || !lo || !hi) continue;
        for (Integer t = *lo; t <= *hi; ++t) out.push_back(base + t * w);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

Polytope3 convex_hull(std::span<const LatticeVector> input) {
    std::vector<LatticeVector> pts(input.begin(), input.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 4) throw Error(ErrorCode::DegenerateInput, "fewer than 4 distinct points");

    std::size_t i2 = 0, i3 = 0;
    for (std::size_t i = 2; i < pts.size() && !i2; ++i)
        if (!is_zero(cross(pts[1] - pts[0], pts[i] - pts[0]))) i2 = i;
    if (!i2) throw Error(ErrorCode::DegenerateInput, "points are collinear");
    for (std::size_t i = 2; i < pts.size() && !i3; ++i)
        if (orient(pts[0], pts[1], pts[i2], pts[i]) != 0) i3 = i;
    if (!i3) throw Error(ErrorCode::DegenerateInput, "points are coplanar");

    struct Tri {
        std::array<std::size_t, 3> v;
        bool alive;
    };
    std::vector<Tri> tris;
    const std::array<std::size_t, 4> simplex{0, 1, i2, i3};
    for (int skip = 0; skip < 4; ++skip) {
        std::array<std::size_t, 3> t{};
        int k = 0;
        for (int j = 0; j < 4; ++j)
            if (j != skip) t[k++] = simplex[j];
        if (orient(pts[t[0]], pts[t[1]], pts[t[2]], pts[simplex[skip]]) > 0) std::swap(t[1], t[2]);
        tris.push_back({t, true});
    }

    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == 0 || i == 1 || i == i2 || i == i3) continue;
        std::set<std::pair<std::size_t, std::size_t>> visible_edges;
        std::vector<std::size_t> visible;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!tris[t].alive) continue;
            const auto& v = tris[t].v;
            if (orient(pts[v[0]], pts[v[1]], pts[v[2]], pts[i]) > 0) {
                visible.push_back(t);
                for (int e = 0; e < 3; ++e) visible_edges.insert({v[e], v[(e + 1) % 3]});
            }
        }
        if (visible.empty()) continue;
        for (std::size_t t : visible) tris[t].alive = false;
        for (const auto& [a, b] : visible_edges)
            if (!visible_edges.count({b, a})) tris.push_back({{a, b, i}, true});
    }

    // Merge coplanar triangles into facets keyed by inward primitive normal.
    std::map<LatticeVector, HalfSpace> planes;
    std::set<std::size_t> used;
    for (const auto& t : tris) {
        if (!t.alive) continue;
        LatticeVector n = cross(pts[t.v[1]] - pts[t.v[0]], pts[t.v[2]] - pts[t.v[0]]);
        Integer g = content(n);
        n = LatticeVector(n.x / g, n.y / g, n.z / g);
        HalfSpace h{-n, dot(n, pts[t.v[0]])};
        planes.emplace(h.normal, h);
        for (auto v : t.v) used.insert(v);
    }

    Polytope3 p;
    for (auto& [normal, h] : planes) p.facets_.push_back(Facet{h, {}, {}, {}});

    for (std::size_t idx : used) {
        std::vector<IntVector> tight;
        for (const auto& f : p.facets_)
            if (f.plane.slack(pts[idx]) == 0) tight.push_back(f.plane.normal.to_vector());
        if (tight.size() >= 3 && rank(IntMatrix::from_rows(tight)) == 3) p.vertices_.push_back(pts[idx]);
    }
    std::sort(p.vertices_.begin(), p.vertices_.end());

    const std::size_t nv = p.vertices_.size();
    p.vertex_facets_.assign(nv, {});
    p.vertex_edges_.assign(nv, {});
    for (std::size_t f = 0; f < p.facets_.size(); ++f)
        for (std::size_t v = 0; v < nv; ++v)
            if (p.facets_[f].plane.slack(p.vertices_[v]) == 0) {
                p.facets_[f].vertices.push_back(v);
                p.vertex_facets_[v].push_back(f);
            }

    for (std::size_t a = 0; a < nv; ++a)
        for (std::size_t b = a + 1; b < nv; ++b) {
            std::vector<std::size_t> common;
            std::set_intersection(p.vertex_facets_[a].begin(), p.vertex_facets_[a].end(),
                                  p.vertex_facets_[b].begin(), p.vertex_facets_[b].end(),
                                  std::back_inserter(common));
            if (common.size() < 2) continue;
            if (common.size() > 2) throw Error(ErrorCode::DegenerateInput, "inconsistent face lattice");
            Edge e;
            e.from = a;
            e.to = b;
            e.facets = {common[0], common[1]};
            LatticeVector d = p.vertices_[b] - p.vertices_[a];
            Integer g = content(d);
            LatticeVector step(d.x / g, d.y / g, d.z / g);
            for (Integer k = 1; k < g; ++k) e.interior.push_back(p.vertices_[a] + k * step);
            const std::size_t idx = p.edges_.size();
            p.edges_.push_back(std::move(e));
            p.vertex_edges_[a].push_back(idx);
            p.vertex_edges_[b].push_back(idx);
            p.facets_[common[0]].edges.push_back(idx);
            p.facets_[common[1]].edges.push_back(idx);
        }

    for (std::size_t f = 0; f < p.facets_.size(); ++f)
        p.facets_[f].interior = facet_interior(p.facets_, f, p.vertices_);
    return p;
}

std::optional<std::size_t> Polytope3::find_vertex(const LatticeVector& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> Polytope3::find_edge(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    for (std::size_t e : vertex_edges_.at(a))
        if (edges_[e].to == b && edges_[e].from == a) return e;
    return std::nullopt;
}

std::optional<std::size_t> Polytope3::find_facet(const LatticeVector& normal) const {
    auto it = std::lower_bound(facets_.begin(), facets_.end(), normal,
                               [](const Facet& f, const LatticeVector& n) { return f.plane.normal < n; });
    if (it == facets_.end() || it->plane.normal != normal) return std::nullopt;
    return static_cast<std::size_t>(it - facets_.begin());
}

bool Polytope3::contains(const LatticeVector& p) const {
    return std::all_of(facets_.begin(), facets_.end(), [&](const Facet& f) { return f.plane.contains(p); });
}

bool Polytope3::origin_strictly_interior() const {
    return std::all_of(facets_.begin(), facets_.end(), [](const Facet& f) { return f.plane.offset > 0; });
}

Polytope3 polar_dual(const Polytope3& p) {
    if (!p.origin_strictly_interior()) throw Error(ErrorCode::OriginNotInterior, "origin is not strictly inside");
    std::vector<LatticeVector> pts;
    std::vector<RationalPoint> rational;
    bool integral = true;
    for (const auto& f : p.facets()) {
        const auto& n = f.plane.normal;
        const auto& o = f.plane.offset;
        RationalPoint r{Rational(n.x, o), Rational(n.y, o), Rational(n.z, o)};
        r.x.canonicalize();
        r.y.canonicalize();
        r.z.canonicalize();
        rational.push_back(r);
        if (r.x.get_den() != 1 || r.y.get_den() != 1 || r.z.get_den() != 1) integral = false;
        else pts.emplace_back(r.x.get_num(), r.y.get_num(), r.z.get_num());
    }
    if (!integral) throw NonIntegralDualError("polar dual has non-integral vertices", std::move(rational));
    return convex_hull(pts);
}

bool is_reflexive(const Polytope3& p) {
    if (!p.origin_strictly_interior()) throw Error(ErrorCode::OriginNotInterior, "origin is not strictly inside");
    return std::all_of(p.facets().begin(), p.facets().end(), [](const Facet& f) { return f.plane.offset == 1; });
}

std::size_t LatticePointSet::count(PointClass c) const {
    return static_cast<std::size_t>(
        std::count_if(points.begin(), points.end(), [c](const ClassifiedPoint& p) { return p.cls == c; }));
}

std::vector<LatticeVector> interior_points(const Polytope3& p) {
    std::optional<Integer> xmin, xmax, ymin, ymax;
    for (const auto& v : p.vertices()) {
        if (!xmin || v.x < *xmin) xmin = v.x;
        if (!xmax || v.x > *xmax) xmax = v.x;
        if (!ymin || v.y < *ymin) ymin = v.y;
        if (!ymax || v.y > *ymax) ymax = v.y;
    }
    std::vector<LatticeVector> out;
    for (Integer x = *xmin; x <= *xmax; ++x)
        for (Integer y = *ymin; y <= *ymax; ++y) {
            LatticeVector base(x, y, Integer(0));
            std::optional<Integer> lo, hi;
            bool ok = true;
            for (const auto& f : p.facets()) {
                ok = restrict_range(f.plane.normal.z, f.plane.slack(base), true, lo, hi);
                if (!ok) break;
            }
            if (!ok || !lo || !hi) continue;
            for (Integer z = *lo; z <= *hi; ++z) out.emplace_back(x, y, z);
        }
    return out;
}

LatticePointSet lattice_points(const Polytope3& p) {
    LatticePointSet s;
    for (std::size_t v = 0; v < p.vertices().size(); ++v)
        s.points.push_back({p.vertices()[v], PointClass::Vertex, FaceRef{FaceKind::Vertex, v}});
    for (std::size_t e = 0; e < p.edges().size(); ++e)
        for (const auto& q : p.edges()[e].interior)
            s.points.push_back({q, PointClass::EdgeInterior, FaceRef{FaceKind::Edge, e}});
    for (std::size_t f = 0; f < p.facets().size(); ++f)
        for (const auto& q : p.facets()[f].interior)
            s.points.push_back({q, PointClass::FacetInterior, FaceRef{FaceKind::Facet, f}});
    for (auto& q : interior_points(p)) s.points.push_back({q, PointClass::Interior, std::nullopt});
    std::sort(s.points.begin(), s.points.end(),
              [](const ClassifiedPoint& a, const ClassifiedPoint& b) { return a.point < b.point; });
    return s;
}

std::size_t l_star(const Polytope3& p, const FaceRef& face) {
    switch (face.kind) {
        case FaceKind::Vertex: return 0;
        case FaceKind::Edge: return p.edges().at(face.index).interior.size();
        case FaceKind::Facet: return p.facets().at(face.index).interior.size();
    }
    return 0;
}

FaceRef dual_face(const Polytope3& p, const Polytope3& dual, const FaceRef& face) {
    if (!is_reflexive(p)) throw Error(ErrorCode::NotReflexive, "dual faces need a reflexive polytope");
    auto fail = [] { return Error(ErrorCode::NotReflexive, "second polytope is not the polar dual"); };
    switch (face.kind) {
        case FaceKind::Vertex: {
            auto f = dual.find_facet(p.vertices().at(face.index));
            if (!f) throw fail();
            return {FaceKind::Facet, *f};
        }
        case FaceKind::Facet: {
            auto v = dual.find_vertex(p.facets().at(face.index).plane.normal);
            if (!v) throw fail();
            return {FaceKind::Vertex, *v};
        }
        case FaceKind::Edge: {
            const Edge& e = p.edges().at(face.index);
            auto a = dual.find_vertex(p.facets()[e.facets[0]].plane.normal);
            auto b = dual.find_vertex(p.facets()[e.facets[1]].plane.normal);
            if (!a || !b) throw fail();
            auto d = dual.find_edge(*a, *b);
            if (!d) throw fail();
            return {FaceKind::Edge, *d};
        }
    }
    throw fail();
}

FaceRef dual_face(const Polytope3& p, const FaceRef& face) {
    if (!is_reflexive(p)) throw Error(ErrorCode::NotReflexive, "dual faces need a reflexive polytope");
    return dual_face(p, polar_dual(p), face);
}

std::vector<LatticeVector> face_vertices(const Polytope3& p, const FaceRef& face) {
    switch (face.kind) {
        case FaceKind::Vertex: return {p.vertices().at(face.index)};
        case FaceKind::Edge: {
            const Edge& e = p.edges().at(face.index);
            return {p.vertices()[e.from], p.vertices()[e.to]};
        }
        case FaceKind::Facet: {
            std::vector<LatticeVector> out;
            for (auto v : p.facets().at(face.index).vertices) out.push_back(p.vertices()[v]);
            return out;
        }
    }
    return {};
}

bool contains(const Polytope3& outer, std::span<const LatticeVector> points) {
    return std::all_of(points.begin(), points.end(), [&](const LatticeVector& v) { return outer.contains(v); });
}

bool contains(const Polytope3& outer, const Polytope3& inner) {
    return contains(outer, std::span<const LatticeVector>(inner.vertices().data(), inner.vertices().size()));
}

}  // namespace k3dual
