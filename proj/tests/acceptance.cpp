// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "k3dual/equivalence.hpp"
#include "k3dual/lattice_expr.hpp"
#include "k3dual/pipeline.hpp"
#include "k3dual/smith.hpp"
#include "oracles.hpp"

using namespace k3dual;

namespace {

struct Outcome {
    bool ok = true;
    std::vector<std::string> lines;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            lines.push_back("missed: " + what);
        }
    }
    void info(const std::string& s) { lines.push_back(s); }
};

const std::vector<DualityReport>& reports() {
    static const std::vector<DualityReport> r = verify_pairs(builtin_cases());
    return r;
}

const DualityReport& report(const std::string& name) {
    for (const auto& r : reports())
        if (r.case_name == name) return r;
    throw std::runtime_error("no report " + name);
}

const std::vector<std::string> kCases = {"Z10", "U10", "Q17_Z20", "W10"};

SearchLimits within(long bound, double seconds) {
    SearchLimits l;
    l.bound = bound;
    l.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(static_cast<long>(seconds * 1000));
    return l;
}

GramLattice computed_gram(const CaseDefinition& c, bool prime) {
    const PolytopeInput& in = prime ? c.delta_prime : c.delta;
    const SideConfig& cfg = prime ? c.delta_prime_config : c.delta_config;
    Polytope3 p = convex_hull(in.points);
    RaySet rs = picard_rays(p, cfg.ordering);
    return intersection_matrix(p, rs, select_basis(rs, cfg.dropped));
}

Outcome table_values() {
    Outcome o;
    const std::map<std::string, std::array<long, 3>> want = {
        {"Z10", {14, 8, 6}}, {"U10", {17, 18, 3}}, {"Q17_Z20", {15, 6, 5}}, {"W10", {18, 4, 2}}};
    for (const auto& name : kCases) {
        const DualityReport& r = report(name);
        long rho = r.delta.counts->from_rays, rho2 = r.delta_prime.counts->from_rays;
        Integer d = abs(r.delta.det);
        std::ostringstream s;
        s << name << ": (" << rho << ", " << d << ", " << rho2 << "), sum " << rho + rho2;
        o.info(s.str());
        const auto& w = want.at(name);
        o.require(rho == w[0] && d == w[1] && rho2 == w[2], name + " table row");
        o.require(abs(r.delta_prime.det) == w[1], name + " |discr| of the dual side");
        o.require(rho + rho2 == 20, name + " rho sum");
    }
    return o;
}

Outcome printed_matrices() {
    Outcome o;
    for (const auto& c : builtin_cases()) {
        for (bool prime : {true, false}) {
            std::string file = c.name + (prime ? "_delta_prime.json" : "_delta.json");
            IntMatrix golden = oracle::from_mat(oracle::load_gram(fixtures::data_path(file)));
            GramLattice g = computed_gram(c, prime);
            bool same = g.gram() == golden;
            o.info(file + ": " + std::to_string(g.rank()) + "x" + std::to_string(g.rank()) + (same ? " identical" : " differs"));
            o.require(same, file);
        }
    }
    return o;
}

Outcome discriminant_groups() {
    Outcome o;
    const std::map<std::string, std::vector<Integer>> want = {
        {"Z10", {2, 4}}, {"U10", {18}}, {"Q17_Z20", {6}}, {"W10", {2, 2}}};
    for (const auto& name : kCases) {
        const DualityReport& r = report(name);
        for (const SideReport* s : {&r.delta, &r.delta_prime}) {
            o.require(s->form && s->form->invariant_factors == want.at(name), name + " " + s->polytope + " group");
            // Independent check of order, exponent and p-ranks.
            std::vector<long> f;
            for (const auto& v : want.at(name)) f.push_back(v.get_si());
            o.require(oracle::group_shape_matches(oracle::to_mat(s->gram->gram()), f),
                      name + " " + s->polytope + " group shape");
        }
        std::string g;
        for (const auto& f : want.at(name)) g += (g.empty() ? "C" : "+C") + to_string(f);
        o.info(name + ": " + g + " on both sides");
    }
    bool warned = false;
    for (const auto& n : report("U10").notes)
        if (n.step == 7 && n.level == NoteLevel::Warn && n.text.find("l(A)") != std::string::npos) {
            warned = true;
            o.info("WARN U10 (" + n.side + "): " + n.text);
        }
    o.require(warned, "U10 l(A) warning");
    return o;
}

Outcome embedding_criteria() {
    Outcome o;
    for (const auto& name : kCases) {
        const DualityReport& r = report(name);
        for (const SideReport* s : {&r.delta, &r.delta_prime}) {
            const NikulinReport& n = *s->nikulin;
            std::ostringstream line;
            line << s->polytope << ": " << n.ambient_rank << " - " << n.rank << " = " << n.rank_gap << " > "
                 << n.discriminant_length << ", l- - t- = " << n.negative_gap << ", l+ - t+ = " << n.positive_gap;
            o.info(line.str());
            o.require(n.passed(), s->polytope);
            o.require(n.rank_gap == 22 - static_cast<long>(s->gram->rank()), s->polytope + " rank gap");
            o.require(n.ambient == SignaturePair{3, 19}, s->polytope + " ambient");
        }
    }
    return o;
}

Outcome orthogonality() {
    Outcome o;
    for (const auto& name : kCases) {
        const DualityReport& r = report(name);
        const auto& orth = *r.orthogonality;
        o.require(orth.witness.has_value(), name + " witness");
        o.require(orth.det_sum == -orth.det_prime, name + " determinants");
        ReverifyResult v = reverify_report(Json::parse(report_to_json(r).dump()));
        o.require(v.ok(), name + " witnesses re-verify on load");
        o.info(name + ": discr(Pic+U) = " + to_string(orth.det_sum) + ", discr(Pic') = " + to_string(orth.det_prime) +
               ", witness " + (orth.witness ? "found" : "missing") + ", reload " + (v.ok() ? "ok" : "failed"));
    }
    return o;
}

Outcome worked_example_check() {
    Outcome o;
    const WorkedExample& ex = worked_example();
    Polytope3 delta = convex_hull(ex.delta);
    Polytope3 dual = polar_dual(convex_hull(ex.delta_prime));
    auto printed = ex.printed_dual;
    std::sort(printed.begin(), printed.end());
    o.require(dual.vertices() == printed, "dual vertices equal the printed list");
    o.require(oracle::to_p3(dual.vertices()) == oracle::dual_vertices(oracle::to_p3(convex_hull(ex.delta_prime).vertices())),
              "dual vertices equal facet normals");
    auto t = unimodular_equivalent(delta, dual);
    o.require(t.has_value() && is_equivalence_witness(delta, dual, *t), "search returns a valid T");
    o.require(is_equivalence_witness(delta, dual, ex.printed_transform), "printed T is a witness");
    if (t) o.info("found T = " + to_string(*t) + (*t == ex.printed_transform ? " (equals printed T)" : " (printed T also valid)"));
    return o;
}

Outcome basis_changes() {
    Outcome o;
    for (const auto& name : {"Z10", "U10", "Q17_Z20"}) {
        const CaseDefinition c = *builtin_case(name);
        GramLattice g = computed_gram(c, true);
        for (const auto& bc : c.expected.delta_prime.basis_changes) {
            GramLattice moved = apply_basis_change(g, bc.rows);
            GramLattice target = parse_lattice_expression(bc.target);
            auto start = std::chrono::steady_clock::now();
            IsometryResult r = find_isometry(moved, target, within(8, 5));
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            bool ok = r.witness && is_isometry_witness(moved, target, *r.witness) && secs <= 5.0;
            std::ostringstream s;
            s << name << " new basis ~ " << bc.target << ": " << search_status_name(r.status) << " in " << std::fixed
              << std::setprecision(3) << secs << " s";
            o.info(s.str());
            o.require(ok, std::string(name) + " isometry");
            if (std::string(name) == "U10") {
                bool exact = moved.gram() == IntMatrix{{0, 3, 0}, {3, -2, 0}, {0, 0, -2}};
                o.require(exact, "U10 exact matrix");
                o.info(std::string("U10 new basis gives ") + to_string(moved.gram()));
            }
        }
    }
    return o;
}

Outcome splitting() {
    Outcome o;
    struct Row {
        const char* name;
        long bound;
        std::size_t rank;
        long det;
    };
    for (const Row& row : {Row{"U10", 8, 15, -18}, Row{"W10", 4, 16, 4}}) {
        GramLattice g = computed_gram(*builtin_case(row.name), false);
        HyperbolicPlaneResult r = find_hyperbolic_plane(g, within(row.bound, 20));
        bool ok = r.plane && is_hyperbolic_plane(g, *r.plane) && r.plane->complement.lattice.rank() == row.rank &&
                  determinant(r.plane->complement.lattice) == row.det;
        if (r.plane)
            o.info(std::string(row.name) + " (bound " + std::to_string(row.bound) + "): complement rank " +
                   std::to_string(r.plane->complement.lattice.rank()) + ", det " +
                   to_string(determinant(r.plane->complement.lattice)));
        o.require(ok, row.name);
    }
    return o;
}

Outcome properties() {
    Outcome o;
    std::mt19937 rng(20240607);

    // Polar duality is an involution.
    std::size_t involutions = 0;
    for (const auto& np : fixtures::builtin_polytopes()) {
        Polytope3 p = convex_hull(np.printed_rays);
        involutions += polar_dual(polar_dual(p)).vertices() == p.vertices();
    }
    for (int i = 0; i < 20; ++i) {
        auto pts = oracle::random_reflexive(rng);
        std::vector<LatticeVector> v;
        for (const auto& p : pts) v.push_back(oracle::from_p3(p));
        Polytope3 p = convex_hull(v);
        bool ok = is_reflexive(p) && polar_dual(polar_dual(p)).vertices() == p.vertices() &&
                  oracle::to_p3(polar_dual(p).vertices()) == oracle::dual_vertices(pts);
        involutions += ok;
    }
    o.info("polar dual involution: " + std::to_string(involutions) + "/28");
    o.require(involutions == 28, "involution");

    // Smith form invariance.
    std::size_t snf = 0;
    std::uniform_int_distribution<int> dim(1, 6), entry(-6, 6);
    for (int t = 0; t < 100; ++t) {
        std::size_t r = dim(rng), c = dim(rng);
        oracle::Mat a(r, std::vector<long>(c));
        for (auto& row : a)
            for (auto& x : row) x = entry(rng);
        oracle::Mat b = oracle::mul(oracle::mul(oracle::random_unimodular(r, rng), a), oracle::random_unimodular(c, rng));
        snf += smith_normal_form(oracle::from_mat(a)).diagonal == smith_normal_form(oracle::from_mat(b)).diagonal;
    }
    o.info("Smith form invariance: " + std::to_string(snf) + "/100");
    o.require(snf == 100, "snf");

    // Signature against the rule of signs.
    std::size_t sig = 0, tested = 0;
    std::uniform_int_distribution<int> n8(1, 8), e4(-4, 4);
    while (tested < 100) {
        std::size_t n = n8(rng);
        oracle::Mat a(n, std::vector<long>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a[i][j] = a[j][i] = e4(rng);
        if (oracle::det(a) == 0) continue;
        ++tested;
        SignaturePair s = signature(oracle::from_mat(a));
        auto d = oracle::descartes_signature(a);
        sig += s.positive == d.first && s.negative == d.second;
    }
    o.info("signature vs rule of signs: " + std::to_string(sig) + "/100");
    o.require(sig == 100, "signature");

    // Relation contraction.
    std::size_t rel = 0;
    for (const auto& np : fixtures::builtin_polytopes()) {
        Polytope3 p = convex_hull(np.printed_rays);
        RaySet rs = picard_rays(p);
        rel += linear_relations(rs) * full_intersection_form(p, rs) == IntMatrix(3, rs.size());
    }
    o.info("relation contraction: " + std::to_string(rel) + "/8");
    o.require(rel == 8, "relations");

    // Complements of A1, A2, A3 in E8.
    const std::vector<std::pair<long, std::string>> table = {{1, "E7"}, {2, "E6"}, {3, "D5"}};
    for (const auto& [k, name] : table) {
        EmbeddingResult emb = find_embedding(lattice_A(k), lattice_E(8), within(4, 10));
        bool ok = emb.rows.has_value();
        if (ok) {
            GramLattice c = orthogonal_complement(lattice_E(8), *emb.rows).lattice;
            GramLattice want = standard_lattice(name);
            ok = c.rank() == want.rank() && determinant(c) == determinant(want) && signature(c) == signature(want) &&
                 find_form_isomorphism(discriminant_form(c), discriminant_form(want), 1).has_value();
        }
        o.info("A" + std::to_string(k) + " in E8: complement has the invariants of " + name + (ok ? "" : " (no)"));
        o.require(ok, "complement of A" + std::to_string(k));
    }
    return o;
}

Outcome monomials() {
    Outcome o;
    const WorkedExample& ex = worked_example();
    std::vector<std::array<Integer, 4>> f, fp;
    for (const auto& m : ex.monomials) {
        LatticeVector v = monomial_to_lattice_point(ex.weights, m.exponents);
        o.require(v == m.expected, m.name);
        o.info(m.name + " -> " + to_string(v));
        f.push_back(m.exponents);
    }
    for (const auto& m : ex.monomials_prime) {
        LatticeVector v = monomial_to_lattice_point(ex.weights_prime, m.exponents);
        o.require(v == m.expected, m.name);
        o.info(m.name + " -> " + to_string(v));
        fp.push_back(m.exponents);
    }
    bool in = contains(convex_hull(ex.delta), newton_polytope(ex.weights, f));
    bool in_prime = contains(convex_hull(ex.delta_prime), newton_polytope(ex.weights_prime, fp));
    o.info(std::string("Newton polytopes contained: ") + (in ? "yes" : "no") + ", " + (in_prime ? "yes" : "no"));
    o.require(in && in_prime, "containment");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table values", table_values},
        {"printed intersection matrices", printed_matrices},
        {"discriminant groups", discriminant_groups},
        {"embedding criteria", embedding_criteria},
        {"orthogonality witnesses", orthogonality},
        {"worked example duality", worked_example_check},
        {"basis change isometries", basis_changes},
        {"hyperbolic splitting", splitting},
        {"property suites", properties},
        {"monomial embedding", monomials},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.ok = false;
            o.lines.push_back(std::string("exception: ") + e.what());
        }
        failed += !o.ok;
        std::cout << (o.ok ? "PASS" : "FAIL") << " " << std::setw(2) << i + 1 << " " << criteria[i].first << std::endl;
        if (verbose || !o.ok)
            for (const auto& l : o.lines) std::cout << "        " << l << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
