#include "moduli/lattice.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace moduli;
using namespace moduli::lattice;
using testsupport::oracle_pairing;

namespace {

SurfaceData k3_quartic() {
    return SurfaceData(SurfaceKind::K3, Matrix<Int>{{4}}, {Int(1)});
}

SurfaceData abelian_h2() {
    return SurfaceData(SurfaceKind::Abelian, Matrix<Int>{{2}}, {Int(1)});
}

MukaiVector mv(Int r, std::vector<Int> c, Int a) { return MukaiVector{r, std::move(c), a}; }

}  // namespace

TEST_CASE("surface validation") {
    CHECK_THROWS_AS(SurfaceData(SurfaceKind::K3, Matrix<Int>{{3}}, {Int(1)}),
                    std::invalid_argument);  // odd diagonal
    CHECK_THROWS_AS(SurfaceData(SurfaceKind::K3, Matrix<Int>{{-4}}, {Int(1)}),
                    std::invalid_argument);  // H^2 <= 0
    CHECK_THROWS_AS(SurfaceData(SurfaceKind::K3, Matrix<Int>{{4, 1}, {0, 4}}, {Int(1), Int(0)}),
                    std::invalid_argument);  // not symmetric
    SurfaceData hyperbolic(SurfaceKind::K3, Matrix<Int>{{0, 1}, {1, 0}}, {Int(1), Int(1)});
    CHECK(hyperbolic.h_square() == 2);
}

TEST_CASE("pairing: frozen examples") {
    SurfaceData s = k3_quartic();
    // <(1,0,1),(1,0,1)> from the degreewise expansion
    CHECK(pairing(s, mv(1, {0}, 1), mv(1, {0}, 1)) == -2);
    CHECK(oracle_pairing(s, mv(1, {0}, 1), mv(1, {0}, 1)) == -2);
    // all cross terms vanish
    CHECK(pairing(s, mv(0, {0}, 1), mv(0, {0}, 1)) == 0);
    // ideal sheaves of n points: dim M = 2 + <v,v> = 2n
    for (long long n = 0; n <= 5; ++n) {
        MukaiVector v = mv(1, {0}, 1 - n);
        CHECK(pairing(s, v, v) == 2 * n - 2);
    }
    CHECK(pairing(s, mv(2, {0}, -2), mv(2, {0}, -2)) == 8);
}

TEST_CASE("pairing: symmetry, bilinearity, evenness against the oracle") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        int rho = 1 + static_cast<int>(rng.below(3));
        SurfaceData s = testsupport::random_surface(rng, rho, SurfaceKind::K3);
        MukaiVector v = testsupport::random_vector(rng, rho);
        MukaiVector w = testsupport::random_vector(rng, rho);
        MukaiVector u = testsupport::random_vector(rng, rho);

        CHECK(pairing(s, v, w) == oracle_pairing(s, v, w));
        CHECK(pairing(s, v, w) == pairing(s, w, v));
        CHECK(pairing(s, v, v) % 2 == 0);

        // bilinearity in the first slot
        MukaiVector sum;
        sum.r = v.r + u.r;
        sum.a = v.a + u.a;
        for (std::size_t i = 0; i < v.c.size(); ++i) sum.c.push_back(v.c[i] + u.c[i]);
        CHECK(pairing(s, sum, w) == pairing(s, v, w) + pairing(s, u, w));
    }
}

TEST_CASE("pairing rejects mismatched lengths") {
    SurfaceData s = k3_quartic();
    CHECK_THROWS_AS(pairing(s, mv(1, {0, 0}, 1), mv(1, {0}, 1)), std::invalid_argument);
}

TEST_CASE("mukai_dual") {
    CHECK(mukai_dual(mv(1, {2}, 3)) == mv(1, {-2}, 3));
    CHECK(mukai_dual(mv(0, {0}, 7)) == mv(0, {0}, 7));
    MukaiVector v = mv(5, {1, -7}, 2);
    CHECK(mukai_dual(mukai_dual(v)) == v);
}

TEST_CASE("mukai_from_chern") {
    SurfaceData s = k3_quartic();
    CHECK(mukai_from_chern(s, 1, {0}, Rational(0)) == mv(1, {0}, 1));  // structure sheaf
    CHECK(mukai_from_chern(abelian_h2(), 1, {0}, Rational(0)) == mv(1, {0}, 0));
    // rank 2, c1 = 0, c2 = 4 on a K3: ch2 = -4, v = (2, 0, -2)
    CHECK(mukai_from_chern(s, 2, {0}, Rational(-4)) == mv(2, {0}, -2));
    CHECK_THROWS_AS(mukai_from_chern(s, 1, {0}, Rational(1, 2)), std::invalid_argument);
}

TEST_CASE("hilbert_poly: frozen Riemann-Roch values") {
    SurfaceData s = k3_quartic();
    HilbertPoly p = hilbert_poly(s, mv(1, {0}, 1));
    // chi(O(mH)) = m^2 H^2/2 + 2 on a K3
    for (long long m = -3; m <= 3; ++m) CHECK(p.eval(m) == Rational(2 * m * m + 2));

    HilbertPoly pa = hilbert_poly(abelian_h2(), mv(1, {0}, 0));
    for (long long m = -3; m <= 3; ++m) CHECK(pa.eval(m) == Rational(m * m));

    HilbertPoly pt = hilbert_poly(s, mv(0, {0}, 5));
    for (long long m = -3; m <= 3; ++m) CHECK(pt.eval(m) == Rational(5));
}

TEST_CASE("hilbert_poly equals -pairing with twisted line bundle vectors") {
    Rng rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        int rho = 1 + static_cast<int>(rng.below(3));
        SurfaceData s = testsupport::random_surface(
            rng, rho, rng.below(2) ? SurfaceKind::K3 : SurfaceKind::Abelian);
        MukaiVector v = testsupport::random_vector(rng, rho);
        HilbertPoly p = hilbert_poly(s, v);
        for (long long m = -3; m <= 3; ++m) {
            MukaiVector line = line_bundle_vector(s, -m);
            CHECK(p.eval(m) == Rational(-pairing(s, v, line)));
            CHECK(is_integer(p.eval(m)));
        }
    }
}

TEST_CASE("primitive_decompose") {
    auto [m1, v1] = primitive_decompose(mv(2, {0}, -2));
    CHECK(m1 == 2);
    CHECK(v1 == mv(1, {0}, -1));

    auto [m2, v2] = primitive_decompose(mv(1, {3}, 5));
    CHECK(m2 == 1);
    CHECK(v2 == mv(1, {3}, 5));

    auto [m3, v3] = primitive_decompose(mv(6, {-4}, 2));
    CHECK(m3 == 2);
    CHECK(v3 == mv(3, {-2}, 1));

    CHECK_THROWS_AS(primitive_decompose(mv(0, {0}, 0)), std::invalid_argument);

    // m v0 = v and v0 has component gcd 1, on random vectors
    Rng rng(5150);
    for (int trial = 0; trial < 50; ++trial) {
        MukaiVector v = testsupport::random_vector(rng, 2);
        if (v.is_zero()) continue;
        auto [m, v0] = primitive_decompose(v);
        CHECK(m > 0);
        CHECK(v0.r * m == v.r);
        CHECK(v0.a * m == v.a);
        Int g = gcd_int(v0.r, v0.a);
        for (const auto& x : v0.c) g = gcd_int(g, x);
        CHECK(g == 1);
    }
}

TEST_CASE("check_star") {
    SurfaceData s = k3_quartic();
    StarReport good = check_star(s, mv(1, {0}, -1));
    CHECK(good.all_pass());
    CHECK(good.self_pairing == 2);
    CHECK_FALSE(good.heuristic());

    StarReport zero_class = check_star(s, mv(0, {0}, 3));
    CHECK_FALSE(zero_class.all_pass());
    CHECK(zero_class.rank_clause == ClauseStatus::Fail);

    StarReport minus2 = check_star(s, mv(1, {0}, 1));
    CHECK_FALSE(minus2.all_pass());
    CHECK(minus2.self_pairing == -2);
    CHECK(minus2.pairing_clause == ClauseStatus::Fail);

    // torsion vector without a hint: heuristic c0.H > 0
    StarReport torsion = check_star(s, mv(0, {1}, 1));
    CHECK(torsion.heuristic());
    CHECK(torsion.rank_clause == ClauseStatus::HeuristicPass);
    StarReport hinted = check_star(s, mv(0, {1}, 1), true);
    CHECK_FALSE(hinted.heuristic());
    CHECK(hinted.rank_clause == ClauseStatus::Pass);
    StarReport hinted_off = check_star(s, mv(0, {1}, 1), false);
    CHECK(hinted_off.rank_clause == ClauseStatus::Fail);
}

TEST_CASE("ext_dims") {
    SurfaceData s = k3_quartic();
    MukaiVector v0 = mv(1, {0}, -1);
    CHECK(ext_dims(s, v0, v0, true) == 4);    // Hom and Ext^2 contribute 2
    CHECK(ext_dims(s, v0, v0, false) == 2);   // distinct stable sheaves, same vector
    // v1 = m1 v0, v2 = m2 v0: m1 m2 <v0,v0>
    for (long long m1 = 1; m1 <= 3; ++m1)
        for (long long m2 = 1; m2 <= 3; ++m2) {
            MukaiVector a = mv(m1, {0}, -m1), b = mv(m2, {0}, -m2);
            CHECK(ext_dims(s, a, b, false) == m1 * m2 * 2);
        }
    CHECK_THROWS_AS(ext_dims(s, mv(1, {0}, 1), mv(1, {0}, 1), false), std::invalid_argument);

    Rng rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        MukaiVector v = testsupport::random_vector(rng, 1);
        Int p = pairing(s, v, v);
        if (p < 0) continue;
        CHECK(ext_dims(s, v, v, true) - ext_dims(s, v, v, false) == 2);
    }
}

TEST_CASE("mukai vector text format") {
    CHECK(parse_mukai("2;0;-2") == mv(2, {0}, -2));
    CHECK(parse_mukai("1;2,-3;4") == mv(1, {2, -3}, 4));
    CHECK(format_mukai(mv(5, {1, -7}, 2)) == "5;1,-7;2");
    MukaiVector v = mv(-3, {0, 12, -5}, 9);
    CHECK(parse_mukai(format_mukai(v)) == v);
    CHECK_THROWS_AS(parse_mukai("1;2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mukai("1;;2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mukai("1;x;2"), std::invalid_argument);
}
