#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hfg/series.hpp"
#include "testing.hpp"

using namespace hfg;
using hfg::testing::max_diff;
using hfg::testing::random_series;

TEST_CASE("generator products concatenate words") {
    NCSeries z1 = gen(2, 4, 0), z2 = gen(2, 4, 1);
    NCSeries p = z1 * z2;
    CHECK(p.size() == 1);
    CHECK(p.coef({make_word({0, 1})}) == cplx(1));
    CHECK(p.coef({make_word({1, 0})}) == cplx(0));
}

TEST_CASE("binomial square in one letter") {
    NCSeries one = NCSeries::unit(1, 3), z = gen(1, 3, 0);
    NCSeries s = (one + z) * (one + z);
    CHECK(s.size() == 3);
    CHECK(s.constant() == cplx(1));
    CHECK(s.coef({make_word({0})}) == cplx(2));
    CHECK(s.coef({make_word({0, 0})}) == cplx(1));
}

TEST_CASE("truncation discards long words") {
    NCSeries z = gen(1, 2, 0);
    CHECK((z * z * z).is_zero());
    std::mt19937_64 rng(3);
    NCSeries a = random_series(rng, 2, 5, 12);
    NCSeries t = a.truncated(2);
    CHECK(t.trunc() == 2);
    CHECK(t.degree() <= 2);
    for (const auto& [k, c] : a.terms())
        if (k[0].size() <= 2) CHECK(t.coef(k) == c);
}

TEST_CASE("multiplication is associative and unital") {
    std::mt19937_64 rng(11);
    const int N = 5;
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        NCSeries a = random_series(rng, 3, N, 4), b = random_series(rng, 3, N, 4), c = random_series(rng, 3, N, 4);
        worst = std::max(worst, max_diff((a * b) * c, a * (b * c)));
        NCSeries one = NCSeries::unit(3, N);
        CHECK(max_diff(one * a, a) == 0.0);
        CHECK(max_diff(a * one, a) == 0.0);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("product coefficients match a direct word-pair expansion") {
    std::mt19937_64 rng(5);
    NCSeries a = random_series(rng, 2, 4, 6), b = random_series(rng, 2, 4, 6);
    std::map<Word, cplx> ref;
    for (const auto& [u, x] : a.terms())
        for (const auto& [v, y] : b.terms())
            if (u[0].size() + v[0].size() <= 4) ref[u[0] + v[0]] += x * y;
    NCSeries p = a * b;
    for (const auto& [w, c] : ref) CHECK(std::abs(p.coef({w}) - c) < 1e-15);
    for (const auto& [k, c] : p.terms()) CHECK(ref.count(k[0]) == 1);
}

TEST_CASE("mismatched operands are rejected") {
    CHECK_THROWS_AS(gen(2, 3, 0) * gen(2, 4, 0), DimensionError);
    CHECK_THROWS_AS(gen(2, 3, 0) + gen(3, 3, 0), DimensionError);
    CHECK_THROWS_AS(gen(2, 3, 2), DimensionError);
    CHECK_THROWS_AS(NCSeries(-1, 3), DimensionError);
}

TEST_CASE("entire functions of a series") {
    SUBCASE("exp of zero is one") {
        NCSeries e = apply_entire(exp_fn(), NCSeries(1, 4));
        CHECK(e == NCSeries::unit(1, 4));
    }
    SUBCASE("exp of a generator is its Taylor polynomial") {
        NCSeries e = apply_entire(exp_fn(), gen(1, 4, 0));
        for (int k = 0; k <= 4; ++k) CHECK(std::abs(e.coef({Word(k, 0)}) - 1.0 / factorial(k)) < 1e-15);
        CHECK(e.size() == 5);
    }
    SUBCASE("scaled sinh quotient") {
        NCSeries s = apply_entire(sinh_quotient(1.0), gen(1, 3, 0));
        const double sh = std::sinh(1.0);
        CHECK(std::abs(s.coef({Word(1, 0)}) - 1.0 / sh) < 1e-15);
        CHECK(std::abs(s.coef({Word(3, 0)}) - 1.0 / (6 * sh)) < 1e-15);
        CHECK(s.size() == 2);
    }
    SUBCASE("exp(a) exp(-a) = 1") {
        std::mt19937_64 rng(2);
        for (int t = 0; t < 20; ++t) {
            NCSeries a = random_series(rng, 2, 6, 4, 3, false);
            NCSeries p = apply_entire(exp_fn(), a) * apply_entire(exp_fn(-1.0), a);
            CHECK(max_diff(p, NCSeries::unit(2, 6)) < 1e-12);
        }
    }
    SUBCASE("derivative of exp scales") {
        EntireFn d = derivative(exp_fn(2.0), 3);
        for (int k = 0; k < 6; ++k) CHECK(std::abs(d.taylor(k) - 8.0 * exp_fn(2.0).taylor(k)) < 1e-12);
    }
    SUBCASE("nonzero constant term is refused") {
        CHECK_THROWS_AS(apply_entire(exp_fn(), NCSeries::unit(1, 3) + gen(1, 3, 0)), UnsupportedInput);
    }
    SUBCASE("sinh quotient needs sinh(hbar) != 0") {
        CHECK_THROWS_AS(sinh_quotient(0.0), ParameterError);
        CHECK_THROWS_AS(sinh_quotient(cplx(0, std::acos(-1.0))), ParameterError);
    }
}

TEST_CASE("tensor embeddings and products") {
    NCSeries z = gen(1, 3, 0);
    TensorSeries zz = tensor_mul(tensor_embed_left(z), tensor_embed_right(z));
    CHECK(zz.size() == 1);
    CHECK(zz.coef({Word(1, 0), Word(1, 0)}) == cplx(1));
    CHECK(tensor_embed_left(NCSeries::unit(1, 3)) == TensorSeries::unit(1, 3));

    std::mt19937_64 rng(9);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        auto rt = [&] {
            return tensor_product(random_series(rng, 2, 4, 2), random_series(rng, 2, 4, 2)) +
                   tensor_embed_left(random_series(rng, 2, 4, 2));
        };
        TensorSeries a = rt(), b = rt(), c = rt();
        worst = std::max(worst, max_diff((a * b) * c, a * (b * c)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("exponential of a primitive-style sum splits") {
    // e^{a⊗1 + 1⊗a} = e^a ⊗ e^a, with the right side built slot by slot
    for (int N = 1; N <= 8; ++N) {
        NCSeries z = gen(1, N, 0);
        TensorSeries lhs = apply_entire_tensor(exp_fn(), tensor_embed_left(z) + tensor_embed_right(z));
        double worst = 0;
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j)
                worst = std::max(worst, std::abs(lhs.coef({Word(i, 0), Word(j, 0)}) - 1.0 / (factorial(i) * factorial(j))));
        CHECK(worst < 1e-12);
    }
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; ++t) {
        NCSeries a = random_series(rng, 2, 6, 3, 2, false), b = random_series(rng, 2, 6, 3, 2, false);
        TensorSeries lhs = apply_entire_tensor(exp_fn(), tensor_embed_left(a) + tensor_embed_right(b));
        TensorSeries rhs = tensor_product(apply_entire(exp_fn(), a), apply_entire(exp_fn(), b));
        CHECK(max_diff(lhs, rhs) < 1e-12);
    }
    NCSeries z = gen(1, 6, 0);
    CHECK(max_diff(apply_entire_tensor(exp_fn(), tensor_embed_left(z)), tensor_embed_left(apply_entire(exp_fn(), z))) ==
          0.0);
    CHECK(apply_entire_tensor(exp_fn(), TensorSeries(1, 6)) == TensorSeries::unit(1, 6));
}

TEST_CASE("rendering") {
    NCSeries a = 2.0 * gen(2, 3, 0) * gen(2, 3, 1) + NCSeries::unit(2, 3);
    std::vector<std::string> names{"x", "y"};
    CHECK(render(a, &names) == "1 + 2 x*y");
}
