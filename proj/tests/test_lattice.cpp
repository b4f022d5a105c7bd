#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "k3dual/discriminant.hpp"
#include "k3dual/error.hpp"
#include "k3dual/lattice.hpp"
#include "k3dual/lattice_expr.hpp"
#include "k3dual/nikulin.hpp"
#include "k3dual/smith.hpp"
#include "oracles.hpp"

using namespace k3dual;

namespace {

GramLattice printed(const std::string& case_name, bool prime) {
    return GramLattice(
        oracle::from_mat(oracle::load_gram(fixtures::data_path(case_name + (prime ? "_delta_prime.json" : "_delta.json")))));
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("standard lattices") {
    CHECK(lattice_A(1).gram() == IntMatrix{{-2}});
    CHECK(determinant(lattice_A(1)) == -2);
    CHECK(lattice_U().gram() == IntMatrix{{0, 1}, {1, 0}});
    CHECK(determinant(lattice_U()) == -1);
    CHECK(signature(lattice_U()) == SignaturePair{1, 1});
    CHECK(lattice_C6_8().gram() == IntMatrix{{-4, 1}, {1, -2}});
    for (long n = 1; n <= 8; ++n) {
        GramLattice a = lattice_A(n);
        CHECK(a.is_even());
        CHECK(signature(a) == SignaturePair{0, n});
        CHECK(abs(determinant(a)) == n + 1);
    }
    for (long n = 4; n <= 8; ++n) CHECK(abs(determinant(lattice_D(n))) == 4);
    CHECK(abs(determinant(lattice_E(6))) == 3);
    CHECK(abs(determinant(lattice_E(7))) == 2);
    CHECK(abs(determinant(lattice_E(8))) == 1);
    CHECK_THROWS_AS(lattice_A(0), Error);
    CHECK_THROWS_AS(lattice_E(5), Error);
    CHECK_THROWS_AS(lattice_E(9), Error);
    CHECK_THROWS_AS(standard_lattice("F4"), Error);
}

TEST_CASE("direct sums") {
    GramLattice s = parse_lattice_expression("U+A1+A3");
    CHECK(s.rank() == 6);
    CHECK(determinant(s) == -8);
    CHECK(invariant_factors(s) == std::vector<Integer>{2, 4});
    GramLattice uu = direct_sum(lattice_U(), lattice_U());
    CHECK(uu.rank() == 4);
    CHECK(signature(uu) == SignaturePair{2, 2});
    CHECK(determinant(direct_sum(lattice_A(1), lattice_A(2))) == -6);
    GramLattice q17 = printed("Q17_Z20", false);
    GramLattice sum = direct_sum(q17, lattice_U());
    CHECK(sum.rank() == 17);
    CHECK(determinant(sum) == -6);
}

TEST_CASE("lattice expressions") {
    CHECK(parse_lattice_expression("E8").rank() == 8);
    CHECK(parse_lattice_expression("C6_8 + A2").rank() == 4);
    CHECK(parse_lattice_expression("[[0,3],[3,-2]]+A1").gram() == IntMatrix{{0, 3, 0}, {3, -2, 0}, {0, 0, -2}});
    CHECK(parse_lattice_expression("custom:W10_delta_prime.json", K3DUAL_TEST_DATA).gram() == IntMatrix{{0, 2}, {2, -2}});
    CHECK_THROWS_AS(parse_lattice_expression("U+Q3"), Error);
    CHECK_THROWS_AS(parse_lattice_expression("U+"), Error);
    CHECK_THROWS_AS(parse_lattice_expression("[[1,2],[3,4]]"), Error);
}

TEST_CASE("printed lattice invariants") {
    struct Row {
        const char* name;
        bool prime;
        long det, tp, tm;
    };
    for (const Row& r : std::vector<Row>{{"Z10", false, -8, 1, 13},
                                         {"Z10", true, -8, 1, 5},
                                         {"U10", false, 18, 1, 16},
                                         {"U10", true, 18, 1, 2},
                                         {"Q17_Z20", false, 6, 1, 14},
                                         {"Q17_Z20", true, 6, 1, 4},
                                         {"W10", false, -4, 1, 17},
                                         {"W10", true, -4, 1, 1}}) {
        CAPTURE(r.name);
        GramLattice g = printed(r.name, r.prime);
        CHECK(g.is_even());
        CHECK(determinant(g) == r.det);
        CHECK(oracle::det(oracle::to_mat(g.gram())) == r.det);
        CHECK(signature(g) == SignaturePair{r.tp, r.tm});
        std::vector<long> f;
        for (const auto& v : invariant_factors(g)) f.push_back(v.get_si());
        CHECK(oracle::group_shape_matches(oracle::to_mat(g.gram()), f));
    }
}

TEST_CASE("smith normal form") {
    SmithForm s = smith_normal_form(IntMatrix{{-2}});
    CHECK(s.invariant_factors() == std::vector<Integer>{2});
    SmithForm u = smith_normal_form(printed("U10", true).gram());
    CHECK(u.diagonal == std::vector<Integer>{1, 1, 18});
    SmithForm z = smith_normal_form(printed("Z10", false).gram());
    CHECK(z.invariant_factors() == std::vector<Integer>{2, 4});
    IntMatrix a{{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    SmithForm f = smith_normal_form(a);
    CHECK(f.P * a * f.Q == f.S);
    CHECK(abs(determinant(f.P)) == 1);
    CHECK(abs(determinant(f.Q)) == 1);
    CHECK(f.diagonal == std::vector<Integer>{2, 6, 12});
    // Transforms stay small on a rank-deficient input.
    IntMatrix g{{4, 9, -18, -10, 10, -18}, {1, 18, -23, -15, 14, -19}, {3, -2, -6, 2, 3, -4},
                {6, -10, -11, 6, 4, -6}, {12, -38, 17, 10, -14, 14}};
    SmithForm h = smith_normal_form(g);
    CHECK(h.P * g * h.Q == h.S);
    CHECK(h.P * h.P_inverse == IntMatrix::identity(5));
    CHECK(h.Q * h.Q_inverse == IntMatrix::identity(6));
    for (const IntMatrix* m : {&h.P, &h.Q})
        for (std::size_t i = 0; i < m->rows(); ++i)
            for (std::size_t j = 0; j < m->cols(); ++j) CHECK(mpz_sizeinbase((*m)(i, j).get_mpz_t(), 2) < 64);
    IntMatrix k = kernel_basis(IntMatrix{{1, 2, 3}});
    CHECK(k.cols() == 2);
    CHECK(IntMatrix{{1, 2, 3}} * k == IntMatrix(1, 2));
}

TEST_CASE("smith form is invariant under unimodular transforms") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dim(1, 6), entry(-6, 6);
    for (int t = 0; t < 100; ++t) {
        std::size_t r = dim(rng), c = dim(rng);
        oracle::Mat a(r, std::vector<long>(c));
        for (auto& row : a)
            for (auto& v : row) v = entry(rng);
        oracle::Mat b = oracle::mul(oracle::mul(oracle::random_unimodular(r, rng), a), oracle::random_unimodular(c, rng));
        SmithForm sa = smith_normal_form(oracle::from_mat(a));
        SmithForm sb = smith_normal_form(oracle::from_mat(b));
        CHECK(sa.diagonal == sb.diagonal);
        CHECK(sa.P * oracle::from_mat(a) * sa.Q == sa.S);
        auto want = oracle::invariant_factors(a);
        for (std::size_t i = 0; i < want.size(); ++i) CHECK(sa.diagonal[i] == want[i]);
    }
}

TEST_CASE("signature agrees with the rule of signs") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dim(1, 8), entry(-4, 4);
    int tested = 0;
    while (tested < 100) {
        std::size_t n = dim(rng);
        oracle::Mat a(n, std::vector<long>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a[i][j] = a[j][i] = entry(rng);
        if (oracle::det(a) == 0) continue;
        SignaturePair s = signature(oracle::from_mat(a));
        auto d = oracle::descartes_signature(a);
        CHECK(s.positive == d.first);
        CHECK(s.negative == d.second);
        ++tested;
    }
    CHECK_THROWS_AS(signature(IntMatrix{{1, 1}, {1, 1}}), Error);
}

TEST_CASE("discriminant forms") {
    FiniteQuadraticForm a1 = discriminant_form(lattice_A(1));
    CHECK(a1.invariant_factors == std::vector<Integer>{2});
    CHECK(a1.q_values[0] == Rational(3, 2));  // -1/2 mod 2
    CHECK(min_generators(a1) == 1);
    FiniteQuadraticForm triv = discriminant_form(lattice_E(8));
    CHECK(triv.order() == 1);
    CHECK(min_generators(triv) == 0);

    CHECK(discriminant_form(printed("Z10", true)).invariant_factors == std::vector<Integer>{2, 4});
    CHECK(discriminant_form(printed("W10", true)).invariant_factors == std::vector<Integer>{2, 2});
    CHECK(min_generators(discriminant_form(printed("Z10", false))) == 2);
    CHECK(min_generators(discriminant_form(printed("U10", true))) == 1);
    CHECK_THROWS_AS(discriminant_form(GramLattice(IntMatrix{{1}})), Error);
    CHECK_THROWS_AS(discriminant_form(GramLattice(IntMatrix{{2, 2}, {2, 2}})), Error);

    for (const char* name : {"Z10", "U10", "Q17_Z20", "W10"})
        for (bool prime : {false, true}) {
            GramLattice g = printed(name, prime);
            FiniteQuadraticForm f = discriminant_form(g);
            Integer prod = 1;
            for (std::size_t i = 0; i < f.size(); ++i) {
                prod *= f.invariant_factors[i];
                if (i + 1 < f.size()) CHECK(f.invariant_factors[i + 1] % f.invariant_factors[i] == 0);
                CHECK(torsion_order(g, f.generators[i]) == f.invariant_factors[i]);
                // q recomputed from the Gram matrix.
                RatVector y = solve_row(g.gram(), f.generators[i]);
                Rational norm = 0;
                for (std::size_t k = 0; k < y.size(); ++k)
                    for (std::size_t l = 0; l < y.size(); ++l) norm += y[k] * y[l] * Rational(g.gram()(k, l));
                CHECK(reduce_mod(norm, 2) == f.q_values[i]);
            }
            CHECK(prod == abs(determinant(g)));
        }
}

TEST_CASE("torsion order") {
    GramLattice z = printed("Z10", false);
    CHECK(torsion_order(z, IntVector(14, 0)) == 1);
    IntVector x(14, 0);
    x[4] = 1;
    CHECK(torsion_order(z, x) == 4);
    GramLattice w = printed("W10", false);
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> c(-3, 3);
    for (int t = 0; t < 20; ++t) {
        IntVector v(18);
        for (auto& e : v) e = c(rng);
        Integer o = torsion_order(w, v);
        CHECK((o == 1 || o == 2));
    }
}

TEST_CASE("embedding criteria") {
    NikulinReport z = nikulin_embedding_check(printed("Z10", false));
    CHECK(z.passed());
    CHECK(z.rank_gap == 8);
    CHECK(z.negative_gap == 6);
    CHECK(z.discriminant_length == 2);
    NikulinReport w = nikulin_embedding_check(printed("W10", true));
    CHECK(w.passed());
    CHECK(w.rank_gap == 20);
    // Rank 22 with t- = 20.
    GramLattice big = direct_sum({lattice_U(), lattice_U(), lattice_E(8), lattice_E(8), lattice_A(1), lattice_A(1)});
    NikulinReport b = nikulin_embedding_check(big);
    CHECK_FALSE(b.condition2);
    CHECK_FALSE(b.passed());
    // Strict and relaxed rank condition.
    GramLattice edge = direct_sum({lattice_U(), lattice_E(8), lattice_E(8), lattice_A(1), lattice_A(1)});
    CHECK(edge.rank() == 20);
    CHECK_FALSE(nikulin_embedding_check(edge).condition3);
    CHECK(nikulin_embedding_check(edge, {3, 19}, false).condition3);
    CHECK_THROWS_AS(nikulin_embedding_check(GramLattice(IntMatrix{{1}})), Error);
}

TEST_CASE("forms opposite") {
    FiniteQuadraticForm a1 = discriminant_form(lattice_A(1));
    CHECK_FALSE(forms_opposite(a1, a1));
    auto same = find_form_isomorphism(a1, a1, 1);
    REQUIRE(same);
    CHECK(verify_form_isomorphism(a1, a1, *same));
    FiniteQuadraticForm triv = discriminant_form(lattice_U());
    auto t = forms_opposite(triv, triv);
    REQUIRE(t);
    CHECK(t->images.empty());
    // A1 and its negative have opposite forms.
    auto neg = forms_opposite(a1, discriminant_form(parse_lattice_expression("[[2]]")));
    CHECK(neg);
    for (const char* name : {"Z10", "U10", "Q17_Z20", "W10"}) {
        CAPTURE(name);
        FiniteQuadraticForm fs = discriminant_form(direct_sum(printed(name, false), lattice_U()));
        FiniteQuadraticForm fp = discriminant_form(printed(name, true));
        auto w = forms_opposite(fs, fp);
        REQUIRE(w);
        CHECK(verify_form_isomorphism(fs, fp, *w));
        CHECK(fs.invariant_factors == discriminant_form(printed(name, false)).invariant_factors);
        CHECK(determinant(direct_sum(printed(name, false), lattice_U())) == -determinant(printed(name, true)));
    }
    FiniteQuadraticForm big = discriminant_form(parse_lattice_expression("A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1+A1"));
    CHECK_THROWS_AS(forms_opposite(big, big), Error);
}

TEST_CASE("basis changes") {
    GramLattice u10 = printed("U10", true);
    GramLattice r = apply_basis_change(u10, IntMatrix{{1, 1, 0}, {0, 0, 1}, {-1, 0, 0}});
    CHECK(r.gram() == IntMatrix{{0, 3, 0}, {3, -2, 0}, {0, 0, -2}});
    CHECK(apply_basis_change(u10, IntMatrix::identity(3)).gram() == u10.gram());
    GramLattice z = printed("Z10", true);
    IntMatrix b{{2, 5, 1, 2, 4, 2}, {2, 5, 1, 2, 3, 2}, {3, 7, 1, 3, 5, 2},
                {-1, -4, -1, -2, -3, -2}, {-1, -2, -1, 0, -1, -1}, {2, 6, 1, 2, 4, 3}};
    GramLattice zb = apply_basis_change(z, b);
    CHECK(zb.gram() == b * z.gram() * b.transpose());
    CHECK(determinant(zb) == determinant(z));
    auto self = find_form_isomorphism(discriminant_form(z), discriminant_form(zb), 1);
    CHECK(self);
    CHECK_THROWS_AS(apply_basis_change(u10, IntMatrix{{1, 0, 0}, {2, 0, 0}}), Error);
}

}  // TEST_SUITE
