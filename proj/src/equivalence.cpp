#include "k3dual/equivalence.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace k3dual {

namespace {

struct VertexProfile {
    std::size_t degree = 0;
    std::vector<std::size_t> edge_lstar;
    std::vector<std::pair<std::size_t, std::size_t>> facet_shape;  // (l*, vertex count)

    bool operator==(const VertexProfile& o) const {
        return degree == o.degree && edge_lstar == o.edge_lstar && facet_shape == o.facet_shape;
    }
};

std::vector<VertexProfile> profiles(const Polytope3& p) {
    std::vector<VertexProfile> out(p.vertices().size());
    for (std::size_t v = 0; v < out.size(); ++v) {
        auto& pr = out[v];
        pr.degree = p.vertex_edges(v).size();
        for (auto e : p.vertex_edges(v)) pr.edge_lstar.push_back(p.edges()[e].interior.size());
        for (auto f : p.vertex_facets(v))
            pr.facet_shape.emplace_back(p.facets()[f].interior.size(), p.facets()[f].vertices.size());
        std::sort(pr.edge_lstar.begin(), pr.edge_lstar.end());
        std::sort(pr.facet_shape.begin(), pr.facet_shape.end());
    }
    return out;
}

// -1 when a and b are not joined by an edge, else the edge's l*.
long edge_label(const Polytope3& p, std::size_t a, std::size_t b) {
    auto e = p.find_edge(a, b);
    return e ? static_cast<long>(p.edges()[*e].interior.size()) : -1;
}

IntMatrix rows_of(const std::vector<LatticeVector>& vs) {
    std::vector<IntVector> rows;
    for (const auto& v : vs) rows.push_back(v.to_vector());
    return IntMatrix::from_rows(rows);
}

}  // namespace

bool is_equivalence_witness(const Polytope3& p, const Polytope3& q, const IntMatrix& t) {
    if (t.rows() != 3 || t.cols() != 3) return false;
    if (abs(determinant(t)) != 1) return false;
    if (p.vertices().size() != q.vertices().size()) return false;
    std::vector<LatticeVector> image;
    for (const auto& v : p.vertices()) image.push_back(apply(v, t));
    std::sort(image.begin(), image.end());
    return image == q.vertices();
}

std::optional<IntMatrix> unimodular_equivalent(const Polytope3& p, const Polytope3& q) {
    if (p.vertices().size() != q.vertices().size() || p.edges().size() != q.edges().size() ||
        p.facets().size() != q.facets().size())
        return std::nullopt;

    // Anchor: first lexicographic linearly independent vertex triple of p.
    const auto& pv = p.vertices();
    const std::size_t n = pv.size();
    std::array<std::size_t, 3> anchor{};
    bool found = false;
    for (std::size_t a = 0; a < n && !found; ++a)
        for (std::size_t b = a + 1; b < n && !found; ++b)
            for (std::size_t c = b + 1; c < n && !found; ++c)
                if (determinant(rows_of({pv[a], pv[b], pv[c]})) != 0) {
                    anchor = {a, b, c};
                    found = true;
                }
    if (!found) return std::nullopt;

    const auto pp = profiles(p);
    const auto qp = profiles(q);
    const IntMatrix anchor_rows = rows_of({pv[anchor[0]], pv[anchor[1]], pv[anchor[2]]});
    const RationalInverse inv = rational_inverse(anchor_rows);

    std::array<std::size_t, 3> image{};
    std::optional<IntMatrix> result;
    // Backtrack over images of the anchor vertices.
    auto try_solve = [&]() -> bool {
        const auto& qv = q.vertices();
        IntMatrix target = rows_of({qv[image[0]], qv[image[1]], qv[image[2]]});
        IntMatrix num = inv.adjugate * target;
        IntMatrix t(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                if (num(i, j) % inv.det != 0) return false;
                t(i, j) = num(i, j) / inv.det;
            }
        if (!is_equivalence_witness(p, q, t)) return false;
        result = t;
        return true;
    };
    for (std::size_t i0 = 0; i0 < n; ++i0) {
        if (!(pp[anchor[0]] == qp[i0])) continue;
        image[0] = i0;
        for (std::size_t i1 = 0; i1 < n; ++i1) {
            if (i1 == i0 || !(pp[anchor[1]] == qp[i1])) continue;
            if (edge_label(p, anchor[0], anchor[1]) != edge_label(q, i0, i1)) continue;
            image[1] = i1;
            for (std::size_t i2 = 0; i2 < n; ++i2) {
                if (i2 == i0 || i2 == i1 || !(pp[anchor[2]] == qp[i2])) continue;
                if (edge_label(p, anchor[0], anchor[2]) != edge_label(q, i0, i2)) continue;
                if (edge_label(p, anchor[1], anchor[2]) != edge_label(q, i1, i2)) continue;
                image[2] = i2;
                if (try_solve()) return result;
            }
        }
    }
    return std::nullopt;
}

}  // namespace k3dual
