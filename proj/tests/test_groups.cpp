#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hfg/groups.hpp"

using namespace hfg;

namespace {

// ℤ^k with the positive generators only: the semigroup ℕ^k in ℤ^k.
FinGenGroup positive_window(int k) {
    FinGenGroup G = integer_lattice(k);
    FinGenGroup W = G;
    W.gens.clear();
    W.gen_names.clear();
    for (int i = 0; i < G.ngens(); i += 2) {
        W.gens.push_back(G.gens[i]);
        W.gen_names.push_back(G.gen_names[i]);
    }
    return W;
}

LaurentMatrix mono(int e, long long n, cplx c = 1.0) {
    LaurentMatrix M;
    M[e][n] = c;
    return M;
}

}  // namespace

TEST_CASE("word lengths") {
    FinGenGroup G = z2z2();
    CHECK(length(G, G.identity) == 0);
    for (long long n = -5; n <= 5; ++n) CHECK(length(G, {0, n}) == 2 * std::llabs(n));
    CHECK(length(G, {1, 0}) == 1);
    CHECK(G.word({0, 1}) == Elem{0, 1});
    CHECK(z2z2_show(G.word({0, 1, 0, 1})) == "w^2");

    FinGenGroup F = free_monoid(4);
    std::vector<double> weights{2, 3, 5, 7};
    for (int n = 0; n < 4; ++n) CHECK(length_F(F, F.gens[n], weights) == weights[n]);
    CHECK(length_F(F, F.word({0, 3, 3}), weights) == 16);
}

TEST_CASE("lengths are subadditive") {
    FinGenGroup G = z2z2(true);
    std::vector<double> F{1.0, 2.5, 0.7};
    CayleyBall B(G, F, 20000);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<int> e(0, 1), n(-6, 6);
    for (int t = 0; t < 200; ++t) {
        Elem s{e(rng), n(rng)}, u{e(rng), n(rng)};
        CHECK(B.distance(G.mul(s, u)) <= B.distance(s) + B.distance(u) + 1e-12);
    }
}

TEST_CASE("unreachable elements are reported") {
    FinGenGroup G = positive_window(1);
    CHECK_THROWS_AS(length(G, {-1}, 200), UnreachableError);
    CayleyBall B(G, {}, kBallCap, 3.0);
    CHECK_FALSE(B.reachable({4}));
    CHECK(B.reachable({3}));
    CHECK_THROWS_AS(CayleyBall(G, {1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(CayleyBall(G, {-1.0}), ParameterError);
}

TEST_CASE("length functions dominating a sequence") {
    SUBCASE("free monoid with C_n = n") {
        FinGenGroup F = free_monoid(8);
        std::vector<double> C{1, 2, 3, 4, 5, 6, 7, 8};
        auto w = arbtCnF_witness(F, C, 8);
        CHECK(w.verified);
        for (int n = 0; n < 8; ++n) {
            CHECK(w.F[n] == n + 2);
            CHECK(w.ell[n] == w.F[n]);
        }
    }
    SUBCASE("constant sequence") {
        auto w = arbtCnF_witness(free_monoid(5), std::vector<double>(5, 4.0), 5);
        CHECK(w.verified);
        for (double f : w.F) CHECK(f == 5.0);
    }
    SUBCASE("window of the integer lattice") {
        auto w = arbtCnF_witness(positive_window(6), {3, 1, 4, 1, 5, 9}, 6);
        CHECK(w.verified);
        CHECK(w.F == std::vector<double>{4, 4, 5, 5, 6, 10});
    }
    SUBCASE("chain condition violated") {
        FinGenGroup G = positive_window(2);
        G.gens.push_back({2, 0});
        G.gen_names.push_back("2e1");
        CHECK_THROWS_AS(arbtCnF_witness(G, {1, 1, 1}, 3), ValidationError);
        CHECK_THROWS_AS(arbtCnF_witness(G, {1}, 2), DimensionError);
        CHECK_THROWS_AS(arbtCnF_witness(G, {1, 1, 1, 1}, 4), ParameterError);
    }
}

TEST_CASE("matrix realization of z2*z2") {
    LaurentMatrix u = z2z2_phi({{{1, 0}, 1.0}});
    LaurentMatrix swap = mono(1, 0);
    swap[2][0] = 1.0;
    CHECK(laurent_distance(u, swap) == 0.0);
    LaurentMatrix w = z2z2_phi({{{0, 1}, 1.0}});
    CHECK(w[0] == Laurent{{1, 1.0}});
    CHECK(w[3] == Laurent{{-1, 1.0}});
    CHECK(w[1].empty());
    CHECK(w[2].empty());
    CHECK(laurent_distance(sigma(sigma(w)), w) == 0.0);
}

TEST_CASE("the realization is multiplicative, isometric and sigma-fixed") {
    FinGenGroup G = z2z2(true);
    std::mt19937_64 rng(12);
    double mult = 0, fixed = 0, comm = 0, rel = 0;
    for (int t = 0; t < 100; ++t) {
        GroupAlgebraElement a = random_z2z2_element(rng), b = random_z2z2_element(rng);
        LaurentMatrix pa = z2z2_phi(a);
        mult = std::max(mult, laurent_distance(z2z2_phi(convolve(G, a, b)), matmul(pa, z2z2_phi(b))));
        fixed = std::max(fixed, laurent_distance(sigma(pa), pa));
        for (double rho : {0.5, 1.0, 3.0}) {
            double ref = z2z2_norm_closed(a, rho);
            rel = std::max(rel, std::abs(matrix_norm(pa, rho) - ref) / ref);
            // ρ^{|n|} is submultiplicative only for ρ >= 1
            if (rho >= 1)
                CHECK(matrix_norm(matmul(pa, z2z2_phi(b)), rho) <=
                      matrix_norm(pa, rho) * matrix_norm(z2z2_phi(b), rho) * (1 + 1e-12));
        }
        for (cplx z0 : {cplx(1), cplx(-1)}) comm = std::max(comm, commutator_with_u(evaluate(pa, z0)));
    }
    CHECK(mult < 1e-12);
    CHECK(fixed == 0.0);
    CHECK(rel < 1e-12);
    CHECK(comm < 1e-12);
}

TEST_CASE("evaluation") {
    LaurentMatrix w = z2z2_phi({{{0, 1}, 1.0}});
    Mat2 at1 = evaluate(w, 1.0);
    CHECK(at1 == Mat2{1.0, 0.0, 0.0, 1.0});
    CHECK(commutator_with_u(evaluate(w, 2.0)) == doctest::Approx(1.5));
    CHECK_THROWS_AS(evaluate(w, 0.0), ParameterError);
}

TEST_CASE("finite groups from tables") {
    FinGenGroup Z3 = table_group("z3", {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, {1});
    CHECK(length(Z3, {2}) == 2);
    CHECK(length(Z3, {0}) == 0);
    CHECK_THROWS_AS(table_group("bad", {{0, 1, 2}, {1, 2, 1}, {2, 1, 0}}, {1}), ValidationError);
    CHECK_THROWS_AS(table_group("bad", {{0, 1}, {1, 0}}, {2}), ValidationError);
}
