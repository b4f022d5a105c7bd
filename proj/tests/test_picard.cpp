#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "k3dual/error.hpp"
#include "k3dual/lattice.hpp"
#include "k3dual/picard.hpp"
#include "oracles.hpp"

using namespace k3dual;

namespace {

std::set<LatticeVector> as_set(const std::vector<LatticeVector>& v) { return {v.begin(), v.end()}; }

const CaseDefinition& builtin(const std::string& name) {
    for (const auto& c : builtin_cases())
        if (c.name == name) return c;
    throw std::runtime_error("missing case " + name);
}

IntMatrix printed_gram(const std::string& case_name, bool prime) {
    return oracle::from_mat(oracle::load_gram(fixtures::data_path(case_name + (prime ? "_delta_prime.json" : "_delta.json"))));
}

}  // namespace

TEST_SUITE("picard") {

TEST_CASE("rays reproduce the printed lists and the box oracle") {
    for (const auto& np : fixtures::builtin_polytopes()) {
        CAPTURE(np.name);
        CAPTURE(np.side);
        Polytope3 p = convex_hull(np.printed_rays);
        RaySet rs = picard_rays(p);
        CHECK(as_set(rs.points()) == as_set(np.printed_rays));
        auto oracle_rays = oracle::rays(oracle::to_p3(p.vertices()));
        CHECK(oracle::to_p3(rs.points()) == oracle_rays);
        auto ordered = rs.points();
        CHECK(std::is_sorted(ordered.begin(), ordered.end()));
        RaySet custom = picard_rays(p, np.printed_rays);
        CHECK(custom.points() == np.printed_rays);
    }
}

TEST_CASE("cube rays") {
    Polytope3 cube = convex_hull(fixtures::cube_points());
    RaySet rs = picard_rays(cube);
    CHECK(rs.size() == 20);
    std::size_t vertices = 0;
    for (const auto& r : rs.rays) vertices += r.kind == RayKind::Vertex;
    CHECK(vertices == 8);
    CHECK(picard_number(cube) == 17);
    PicardCount pc = picard_counts(cube);
    CHECK(pc.from_rays == pc.from_points);
    CHECK(picard_number(polar_dual(cube)) == 3);
    CHECK(rk_l0(cube) == 0);
}

TEST_CASE("ordering override must be a permutation") {
    Polytope3 cube = convex_hull(fixtures::cube_points());
    std::vector<LatticeVector> bad = {{1, 1, 1}};
    CHECK_THROWS_AS(picard_rays(cube, bad), Error);
}

TEST_CASE("linear relations") {
    const auto& u10 = builtin("U10");
    Polytope3 p = convex_hull(u10.delta_prime.points);
    RaySet rs = picard_rays(p, u10.delta_prime_config.ordering);
    IntMatrix r = linear_relations(rs);
    CHECK(r.rows() == 3);
    CHECK(r.cols() == 6);
    for (std::size_t i = 0; i < rs.size(); ++i) CHECK(LatticeVector::from_vector(r.col(i)) == rs.rays[i].point);
    const auto& q17 = builtin("Q17_Z20");
    Polytope3 q = convex_hull(q17.delta_prime.points);
    IntMatrix rq = linear_relations(picard_rays(q));
    CHECK(rq.cols() == 8);
    CHECK(oracle::invariant_factors(oracle::to_mat(rq)).size() == 3);
}

TEST_CASE("basis selection") {
    const auto& z10 = builtin("Z10");
    Polytope3 p = convex_hull(z10.delta_prime.points);
    RaySet rs = picard_rays(p, z10.delta_prime_config.ordering);
    PicardBasis b = select_basis(rs, std::array<std::size_t, 3>{0, 4, 5});
    CHECK(b.kept == std::vector<std::size_t>{1, 2, 3, 6, 7, 8});
    oracle::Mat dropped;
    for (auto i : b.dropped) dropped.push_back(oracle::to_mat(IntMatrix::from_rows({rs.rays[i].point.to_vector()}))[0]);
    CHECK(oracle::det(dropped) == -1);

    const auto& u10 = builtin("U10");
    Polytope3 pu = convex_hull(u10.delta_prime.points);
    RaySet ru = picard_rays(pu, u10.delta_prime_config.ordering);
    CHECK(select_basis(ru, std::array<std::size_t, 3>{0, 4, 5}).kept == std::vector<std::size_t>{1, 2, 3});

    Polytope3 cube = convex_hull(fixtures::cube_points());
    RaySet rc = picard_rays(cube);
    PicardBasis b1 = select_basis(rc), b2 = select_basis(rc);
    CHECK(b1.dropped == b2.dropped);
    // Lexicographically first unimodular triple, checked by brute force.
    bool found = false;
    for (std::size_t i = 0; i < rc.size() && !found; ++i)
        for (std::size_t j = i + 1; j < rc.size() && !found; ++j)
            for (std::size_t k = j + 1; k < rc.size() && !found; ++k) {
                auto d = oracle::det(oracle::to_mat(IntMatrix::from_rows(
                    {rc.rays[i].point.to_vector(), rc.rays[j].point.to_vector(), rc.rays[k].point.to_vector()})));
                if (d == 1 || d == -1) {
                    found = true;
                    CHECK(b1.dropped == std::array<std::size_t, 3>{i, j, k});
                }
            }
    CHECK(found);
    // (1,1,1), (1,1,-1), (1,-1,1) has determinant 4.
    auto idx = [&](LatticeVector v) {
        for (std::size_t i = 0; i < rc.size(); ++i)
            if (rc.rays[i].point == v) return i;
        return std::size_t(999);
    };
    std::array<std::size_t, 3> bad{idx({1, 1, 1}), idx({1, 1, -1}), idx({1, -1, 1})};
    std::sort(bad.begin(), bad.end());
    CHECK_THROWS_AS(select_basis(rc, bad), Error);
}

TEST_CASE("printed intersection matrices") {
    for (const auto& c : builtin_cases()) {
        for (bool prime : {false, true}) {
            CAPTURE(c.name);
            CAPTURE(prime);
            const PolytopeInput& in = prime ? c.delta_prime : c.delta;
            const SideConfig& cfg = prime ? c.delta_prime_config : c.delta_config;
            Polytope3 p = convex_hull(in.points);
            RaySet rs = picard_rays(p, cfg.ordering);
            GramLattice g = intersection_matrix(p, rs, select_basis(rs, cfg.dropped));
            CHECK(g.gram() == printed_gram(c.name, prime));
            // Independent counting of the same intersection numbers.
            oracle::Mat full = oracle::full_gram(oracle::to_p3(rs.points()), oracle::to_p3(p.vertices()));
            CHECK(full_intersection_form(p, rs) == oracle::from_mat(full));
        }
    }
}

TEST_CASE("small printed matrices") {
    CHECK(printed_gram("W10", true) == IntMatrix{{0, 2}, {2, -2}});
    CHECK(printed_gram("U10", true) == IntMatrix{{-2, 2, 0}, {2, -2, 3}, {0, 3, -2}});
}

TEST_CASE("relation contraction vanishes") {
    for (const auto& np : fixtures::builtin_polytopes()) {
        Polytope3 p = convex_hull(np.printed_rays);
        RaySet rs = picard_rays(p);
        IntMatrix full = full_intersection_form(p, rs);
        IntMatrix r = linear_relations(rs);
        IntMatrix prod = r * full;
        CHECK(prod == IntMatrix(3, rs.size()));
        for (std::size_t i = 0; i < full.rows(); ++i) {
            CHECK(full(i, i) % 2 == 0);
            CHECK(full(i, i) >= -2);
        }
        CHECK(full.is_symmetric());
    }
}

TEST_CASE("different bases give the same lattice invariants") {
    for (const auto& c : builtin_cases()) {
        Polytope3 p = convex_hull(c.delta.points);
        RaySet rs = picard_rays(p, c.delta_config.ordering);
        GramLattice a = intersection_matrix(p, rs, select_basis(rs, c.delta_config.dropped));
        GramLattice b = intersection_matrix(p, rs, select_basis(rs));
        CHECK(determinant(a) == determinant(b));
        CHECK(invariant_factors(a) == invariant_factors(b));
        CHECK(signature(a) == signature(b));
    }
}

TEST_CASE("rk L0 and picard numbers") {
    const std::map<std::string, std::pair<long, long>> rho = {
        {"Z10", {14, 6}}, {"U10", {17, 3}}, {"Q17_Z20", {15, 5}}, {"W10", {18, 2}}};
    for (const auto& c : builtin_cases()) {
        Polytope3 d = convex_hull(c.delta.points), dp = convex_hull(c.delta_prime.points);
        CHECK(rk_l0(d) == 0);
        CHECK(rk_l0(dp) == 0);
        CHECK(picard_number(d) == rho.at(c.name).first);
        CHECK(picard_number(dp) == rho.at(c.name).second);
        CHECK(picard_number(d) + picard_number(dp) == 20);
        // Box oracle: rays minus three.
        CHECK(picard_number(d) == static_cast<long>(oracle::rays(oracle::to_p3(d.vertices())).size()) - 3);
        // Swapping the roles keeps the structural facts.
        CHECK(picard_number(polar_dual(dp)) == picard_number(d));
    }
}

TEST_CASE("intersection matrix requires rk L0 = 0") {
    Polytope3 p = convex_hull(std::vector<LatticeVector>{{-1, 0, -1}, {-1, 0, 1}, {-1, 2, 1}, {0, 1, 0}, {2, -1, 1}});
    REQUIRE(is_reflexive(p));
    CHECK(rk_l0(p) == 2);
    RaySet rs = picard_rays(p);
    try {
        intersection_matrix(p, rs, select_basis(rs));
        FAIL("expected L0NotZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::L0NotZero);
    }
    PicardCount pc = picard_counts(p);
    CHECK(pc.rk_l0 == 2);
    CHECK(pc.from_rays == pc.from_points);
}

}  // TEST_SUITE
