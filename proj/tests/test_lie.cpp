#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hfg/hopf.hpp"
#include "hfg/io.hpp"
#include "testing.hpp"

using namespace hfg;
using hfg::testing::max_diff;
using hfg::testing::random_series;

namespace {

Mat cols(int m, std::initializer_list<int> idx) {
    Mat M = Mat::Zero(m, static_cast<int>(idx.size()));
    int c = 0;
    for (int i : idx) M(i, c++) = 1;
    return M;
}

std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

// Hall basis element as a commutator polynomial in the free associative algebra.
NCSeries hall_poly(const HallBasis& h, int i, int T) {
    if (h.left[i] < 0) return gen(h.k, T, i);
    NCSeries a = hall_poly(h, h.left[i], T), b = hall_poly(h, h.right[i], T);
    return a * b - b * a;
}

}  // namespace

TEST_CASE("brackets") {
    LieAlgebra g = heisenberg();
    Vec x = g.basis_vec(0), y = g.basis_vec(1);
    CHECK(g.bracket(x, x).norm() == 0.0);
    CHECK((g.bracket(x, y) - g.basis_vec(2)).norm() == 0.0);
    CHECK((g.bracket(y, x) + g.basis_vec(2)).norm() == 0.0);
    CHECK(sl2().jacobi_residual() < 1e-14);
}

TEST_CASE("Jacobi identity fails loudly") {
    LieAlgebra g(3);
    g.set(0, 1, 2, 1.0);
    g.set(1, 2, 0, 1.0);
    g.set(0, 2, 0, 1.0);
    CHECK_THROWS_AS(g.validate(), ValidationError);
}

TEST_CASE("lower central series") {
    CHECK(lower_central_series(abelian(3)).dims() == std::vector<int>{3, 0});
    CHECK(lower_central_series(heisenberg()).dims() == std::vector<int>{3, 1, 0});
    CHECK(lower_central_series(sl2()).dims() == std::vector<int>{3});
    CHECK_FALSE(is_nilpotent(sl2()));
    LieAlgebra n = free_nilpotent(3, 3);
    auto f = lower_central_series(n);
    CHECK(f.dims() == std::vector<int>{14, 11, 8, 0});
    CHECK(filtration_residual(n, f) < 1e-10);
}

TEST_CASE("weights of F-bases") {
    CHECK(f_basis(abelian(3)).weights == std::vector<int>{1, 1, 1});
    auto h = f_basis(heisenberg());
    CHECK(h.weights == std::vector<int>{1, 1, 2});
    CHECK(weight_invariant_residual(heisenberg(), h) < 1e-10);
    LieAlgebra n = free_nilpotent(3, 3);
    auto wd = f_basis(n);
    CHECK(sorted(wd.weights) == std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3});
    CHECK(weight_invariant_residual(n, wd) < 1e-10);
    CHECK(wd.weight_of(std::vector<int>(14, 1)) == 3 + 6 + 24);
    CHECK_THROWS_AS(f_basis(sl2()), UnsupportedInput);
}

TEST_CASE("free nilpotent algebras") {
    CHECK(free_nilpotent(2, 2).dim() == 3);
    CHECK(free_nilpotent(3, 3).dim() == 14);
    CHECK(free_nilpotent(2, 3).dim() == 5);
    CHECK(witt(3, 3) == 8);
    CHECK(witt(2, 4) == 3);
    for (auto [k, c] : {std::pair{2, 4}, std::pair{3, 3}, std::pair{4, 2}}) {
        long total = 0;
        for (int d = 1; d <= c; ++d) total += witt(k, d);
        LieAlgebra g = free_nilpotent(k, c);
        CHECK(g.dim() == total);
        CHECK(g.jacobi_residual() < 1e-10);
    }
    CHECK_THROWS_AS(free_nilpotent(0, 2), ParameterError);
}

TEST_CASE("Hall structure constants agree with commutators of words") {
    // Each basic commutator is realized as a polynomial in the free algebra
    // truncated at the class; brackets of basis elements must expand in the
    // images with the computed structure constants.
    HallBasis hb;
    LieAlgebra g = free_nilpotent(3, 3, &hb);
    const int m = g.dim(), T = 3;
    std::vector<NCSeries> P;
    for (int i = 0; i < m; ++i) P.push_back(hall_poly(hb, i, T));
    double worst = 0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            NCSeries lhs = P[a] * P[b] - P[b] * P[a], rhs(3, T);
            for (int k = 0; k < m; ++k)
                if (g.sc(a, b, k) != cplx{}) rhs += g.sc(a, b, k) * P[k];
            worst = std::max(worst, max_diff(lhs, rhs));
        }
    CHECK(worst < 1e-12);
}

TEST_CASE("Jacobi on random triples in n33") {
    LieAlgebra n = free_nilpotent(3, 3);
    std::mt19937_64 rng(7);
    std::normal_distribution<double> d;
    double worst = 0;
    for (int t = 0; t < 50; ++t) {
        Vec v[3];
        for (auto& x : v) {
            x = Vec(14);
            for (int i = 0; i < 14; ++i) x(i) = cplx(d(rng), d(rng));
        }
        worst = std::max(worst, n.jacobi_residual(v[0], v[1], v[2]));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("PBW presentations") {
    Presentation pa = pbw_presentation(abelian(2), 3);
    REQUIRE(pa.relators.size() == 1);
    CHECK(max_diff(pa.relators[0].poly, pa.gen(1) * pa.gen(0) - pa.gen(0) * pa.gen(1)) == 0.0);
    Presentation ph = pbw_presentation(heisenberg(), 3);
    CHECK(ph.relators.size() == 3);
    // e2 e1 - e1 e2 - [e2, e1] with [e2, e1] = -e3
    CHECK(max_diff(ph.relators[0].poly, ph.gen(1) * ph.gen(0) - ph.gen(0) * ph.gen(1) + ph.gen(2)) == 0.0);
    CHECK(pbw_presentation(sl2(), 3).relators.size() == 3);
}

TEST_CASE("PBW normal forms") {
    LieAlgebra g = heisenberg();
    NCSeries e1 = gen(3, 4, 0), e2 = gen(3, 4, 1);
    PBWCoeffs c = pbw_normal_form(g, e2 * e1, 4);
    CHECK(c.size() == 2);
    CHECK(c[{1, 1, 0}] == cplx(1));
    CHECK(c[{0, 0, 1}] == cplx(-1));
    PBWCoeffs d = pbw_normal_form(g, e1 * e2, 4);
    CHECK(d.size() == 1);
    CHECK(d[{1, 1, 0}] == cplx(1));
    CHECK(pbw_monomial_count(3, 3) == 20);
}

TEST_CASE("PBW rewriting agrees with the ideal span") {
    const int N = 4;
    std::mt19937_64 rng(31);
    auto check_algebra = [&](const LieAlgebra& g, Backend b, int samples) {
        Presentation p = pbw_presentation(g, N);
        IdealSpan I(p, kRankTol, b);
        CHECK(I.quotient_dim() == doctest::Approx(pbw_monomial_count(g.dim(), N)));
        PBWRewriter rw(g, N);
        double worst = 0;
        for (int t = 0; t < samples; ++t) {
            NCSeries a = random_series(rng, g.dim(), N, 4);
            PBWCoeffs pc = rw.normal_form(a);
            NCSeries nf = I.normal_form(a), back(g.dim(), N);
            for (auto& [alpha, v] : pc) back.add_term({rw.word_of(alpha)}, v);
            worst = std::max(worst, max_diff(nf, back));
        }
        CHECK(worst < 1e-10);
    };
    check_algebra(heisenberg(), Backend::Linear, 60);
    check_algebra(sl2(), Backend::Linear, 60);
    check_algebra(free_nilpotent(3, 3), Backend::Rewrite, 60);
}

TEST_CASE("solvable radicals") {
    CHECK(solvable_radical(sl2()).cols() == 0);
    CHECK(solvable_radical(heisenberg()).cols() == 3);
    CHECK(solvable_radical(af1()).cols() == 2);
}

TEST_CASE("exponential radicals of the trivial cases") {
    LieAlgebra h = heisenberg();
    CHECK(exponential_radical_ideal(h, Mat(3, 0)).cols() == 0);
    CHECK(exponential_radical_ideal(sl2(), sl2().whole()).cols() == 0);
    // af1 is solvable but not nilpotent: its exponential radical is span{Y}
    Mat e = exponential_radical_ideal(af1(), Mat(2, 0));
    CHECK(same_subspace(e, cols(2, {1})));
    CHECK_THROWS_AS(exponential_radical(sl2(), Mat(3, 0)), ValidationError);
}

TEST_CASE("gl2 semidirect n: bundled data") {
    LieFile f = load_lie_file(std::string(HFG_DATA_DIR) + "/gl2n632.lie");
    const LieAlgebra& g = f.g;
    REQUIRE(g.dim() == 10);
    REQUIRE(f.levi);
    REQUIRE(f.subalgebra);
    // t h x y e1 e2 e3 f1 f2 f3
    Mat r = solvable_radical(g);
    CHECK(r.cols() == 7);
    CHECK(same_subspace(r, cols(10, {0, 4, 5, 6, 7, 8, 9})));
    ExpRadical er = exponential_radical(g, *f.levi);
    CHECK(same_subspace(er.s_r, cols(10, {7, 8, 9})));
    // t acts on e2, e3, f1, f2, f3 by nonzero scalars, so these survive in the
    // stable term of the central series of the radical
    CHECK(same_subspace(er.r_inf, cols(10, {5, 6, 7, 8, 9})));
    CHECK(is_ideal(g, er.e));
    CHECK(er.e.cols() == 5);
    LieAlgebra q = quotient_algebra(g, *f.subalgebra, er.e);
    CHECK(q.dim() == 1);
}

TEST_CASE("quotients") {
    // heisenberg / center is abelian of dimension 2
    LieAlgebra h = heisenberg();
    Mat comp;
    LieAlgebra q = quotient_algebra(h, h.whole(), cols(3, {2}), &comp);
    CHECK(q.dim() == 2);
    CHECK(q.names() == std::vector<std::string>{"x", "y"});
    CHECK(lower_central_series(q).dims() == std::vector<int>{2, 0});
    CHECK_THROWS_AS(quotient_algebra(h, cols(3, {0}), cols(3, {2})), ValidationError);
}
