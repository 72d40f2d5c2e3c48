#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hfg/hopf.hpp"
#include "hfg/norms.hpp"
#include "testing.hpp"

using namespace hfg;
using hfg::testing::random_series;

namespace {

PBWCoeffs random_pbw(std::mt19937_64& rng, int m, int maxdeg, int terms) {
    std::uniform_int_distribution<int> idx(0, m - 1), deg(0, maxdeg);
    std::uniform_real_distribution<double> c(-1, 1);
    PBWCoeffs a;
    for (int t = 0; t < terms; ++t) {
        MultiIndex al(m, 0);
        for (int d = deg(rng); d > 0; --d) al[idx(rng)]++;
        a[al] += cplx(c(rng), c(rng));
    }
    return a;
}

}  // namespace

TEST_CASE("free entire norm") {
    CHECK(norm_free(NCSeries::unit(2, 4), 3.0) == doctest::Approx(1));
    NCSeries z12 = gen(2, 4, 0) * gen(2, 4, 1);
    for (double rho : {0.5, 2.0, 7.0}) CHECK(norm_free(z12, rho) == doctest::Approx(rho * rho));
    CHECK_THROWS_AS(norm_free(z12, 0.0), ParameterError);

    // the oracle sums |c| rho^len directly
    std::mt19937_64 rng(1);
    NCSeries a = random_series(rng, 3, 6, 10);
    double ref = 0;
    for (auto& [k, c] : a.terms()) ref += std::abs(c) * std::pow(1.7, static_cast<double>(k[0].size()));
    CHECK(norm_free(a, 1.7) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("free entire norm is submultiplicative") {
    // no truncation loss: degrees stay below the truncation
    std::mt19937_64 rng(2);
    for (double rho : {0.5, 1.0, 3.0}) {
        auto res = submult_test<NCSeries>([rho](const NCSeries& a) { return norm_free(a, rho); },
                                          [](const NCSeries& a, const NCSeries& b) { return a * b; },
                                          [&] { return random_series(rng, 3, 8, 5, 4); }, 1000);
        CHECK(res.samples > 900);
        CHECK(res.max_ratio <= 1 + 1e-12);
    }
}

TEST_CASE("norms are homogeneous, subadditive and monotone") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        NCSeries a = random_series(rng, 2, 5, 6), b = random_series(rng, 2, 5, 6);
        const cplx lam(0.3, -1.2);
        CHECK(norm_free(lam * a, 2.0) == doctest::Approx(std::abs(lam) * norm_free(a, 2.0)).epsilon(1e-12));
        CHECK(norm_free(a + b, 2.0) <= norm_free(a, 2.0) + norm_free(b, 2.0) + 1e-12);
        CHECK(norm_free(a, 1.5) <= norm_free(a, 2.5));
        PBWCoeffs p = random_pbw(rng, 3, 5, 6);
        CHECK(norm_pbw(p, 1.5, {1, 1, 2}) <= norm_pbw(p, 2.5, {1, 1, 2}));
        CHECK(norm_pbw_alt(p, 1.5, {1, 1, 2}) <= norm_pbw_alt(p, 2.5, {1, 1, 2}));
    }
}

TEST_CASE("power series norms") {
    for (int n = 0; n <= 12; ++n)
        for (double s : {0.0, 1.0, 2.5}) {
            std::vector<cplx> xn(n + 1, 0.0);
            xn[n] = 1.0;
            CHECK(norm_power_series(xn, 2.0, s) == doctest::Approx(std::pow(2.0, n) / std::pow(factorial(n), s)));
        }
    CHECK_THROWS_AS(norm_power_series({1.0}, -1, 0), ParameterError);
    CHECK_THROWS_AS(norm_power_series({1.0}, 1, -1), ParameterError);
}

TEST_CASE("coproduct continuity bound") {
    for (double r : {0.5, 1.0, 2.0})
        for (double s : {0.0, 1.0, 2.0})
            for (int n = 0; n <= 20; ++n) {
                double lhs = norm_power_series_tensor(delta_power(n), r, s);
                CHECK(lhs <= delta_power_bound(n, r, s) * (1 + 1e-12));
                if (s == 0.0) {
                    CHECK(lhs == doctest::Approx(std::pow(2.0 * r, n)).epsilon(1e-12));
                    CHECK(delta_power_bound(n, r, s) == doctest::Approx(std::pow(2.0 * r, n)).epsilon(1e-12));
                }
            }
    CHECK(binomial(20, 10) == 184756);
    CHECK(binomial(5, 7) == 0);
}

TEST_CASE("PBW norms") {
    SUBCASE("all weights one is the plain weighted l1 norm") {
        PBWCoeffs a{{{2, 0}, 1.5}, {{1, 3}, cplx(0, -2)}};
        CHECK(norm_pbw(a, 2.0, {1, 1}) == doctest::Approx(1.5 * 4 + 2 * 16));
    }
    SUBCASE("central power in Heisenberg") {
        for (int k = 0; k <= 8; ++k)
            CHECK(norm_pbw({{{0, 0, k}, 1.0}}, 3.0, {1, 1, 2}) == doctest::Approx(std::pow(3.0, k) / factorial(k)));
    }
    SUBCASE("n33 denominator") {
        auto w = f_basis(free_nilpotent(3, 3)).weights;
        MultiIndex al(14);
        for (int i = 0; i < 14; ++i) al[i] = i % 3 + 1;
        double den = 1;
        for (int i = 3; i < 6; ++i) den *= factorial(al[i]);
        for (int i = 6; i < 14; ++i) den *= std::pow(factorial(al[i]), 2);
        int na = 0;
        for (int x : al) na += x;
        CHECK(norm_pbw({{al, 1.0}}, 1.3, w) == doctest::Approx(std::pow(1.3, na) / den).epsilon(1e-12));
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(norm_pbw({{{1}, 1.0}}, 1.0, {1, 2}), DimensionError);
        CHECK_THROWS_AS(norm_pbw({{{1}, 1.0}}, 1.0, {0}), ParameterError);
    }
}

TEST_CASE("alternative PBW norm") {
    CHECK(norm_pbw_alt({{{0, 0, 0}, cplx(3, 4)}}, 2.0, {1, 1, 2}) == doctest::Approx(5));
    CHECK(norm_pbw_alt({{{1, 0, 0}, 2.0}}, 3.0, {1, 1, 2}) == doctest::Approx(6));
    // α = (1,0,1): α! = 1, w(α) = 3, term r^3 / 27
    CHECK(norm_pbw_alt({{{1, 0, 1}, 1.0}}, 3.0, {1, 1, 2}) == doctest::Approx(1));
    // the two families are comparable on a fixed sample
    std::mt19937_64 rng(5);
    std::vector<PBWCoeffs> sample;
    for (int t = 0; t < 40; ++t) sample.push_back(random_pbw(rng, 3, 6, 5));
    for (double r : {1.0, 2.0, 4.0}) {
        double lo = 1e300, hi = 0;
        for (auto& a : sample) {
            double q = norm_pbw(a, r, {1, 1, 2}) / norm_pbw_alt(a, r, {1, 1, 2});
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        CHECK(lo > 0);
        CHECK(std::isfinite(hi));
    }
}

TEST_CASE("PBW norm is not submultiplicative") {
    LieAlgebra g = heisenberg();
    PBWRewriter rw(g, 8);
    const std::vector<int> w{1, 1, 2};
    const double r = 1.0;
    auto norm = [&](const PBWCoeffs& a) { return norm_pbw(a, r, w); };
    // e2 e1 = e1 e2 - e3
    PBWCoeffs e1{{{1, 0, 0}, 1.0}}, e2{{{0, 1, 0}, 1.0}};
    PBWCoeffs p = pbw_multiply(rw, e2, e1);
    CHECK(p.size() == 2);
    CHECK(norm(p) / (norm(e1) * norm(e2)) == doctest::Approx(2));

    std::mt19937_64 rng(8);
    auto res = submult_test<PBWCoeffs>(norm, [&](const PBWCoeffs& a, const PBWCoeffs& b) { return pbw_multiply(rw, a, b); },
                                       [&] { return random_pbw(rng, 3, 3, 3); }, 300);
    CHECK(res.max_ratio > 1);
}

TEST_CASE("connected group norms") {
    ConnectedCoeffs c;
    c[{0, 0, 0, {0, 0, 0}, {0}}] = 2.0;
    c[{1, 0, 1, {1, 2, 3}, {1}}] = cplx(0, 1);
    c[{1, 1, 1, {0, 0, 0}, {1}}] = -3.0;
    CHECK(norm_connected(c, 2.0, {}, {1, 1, 2}) == 0.0);
    ConnectedSupport F{{0, {0}}, {1, {1}}};
    // r^{α1+α2+α3}/α3! for the middle term
    CHECK(norm_connected(c, 2.0, F, {1, 1, 2}) == doctest::Approx(2 + std::pow(2.0, 6) / 6 + 3));
    ConnectedSupport F0{{0, {0}}};
    CHECK(norm_connected(c, 2.0, F0, {1, 1, 2}) == doctest::Approx(2));
}

TEST_CASE("length function norms") {
    std::function<double(const long long&)> ell = [](const long long& n) { return static_cast<double>(std::llabs(n)); };
    CHECK(norm_length<long long>({{3, 1.0}}, ell) == doctest::Approx(std::exp(3.0)));
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> n(-6, 6);
    std::uniform_real_distribution<double> c(-1, 1);
    auto sample = [&] {
        std::map<long long, cplx> a;
        for (int t = 0; t < 4; ++t) a[n(rng)] += cplx(c(rng), c(rng));
        return a;
    };
    auto mul = [](const std::map<long long, cplx>& a, const std::map<long long, cplx>& b) {
        std::map<long long, cplx> out;
        for (auto& [x, u] : a)
            for (auto& [y, v] : b) out[x + y] += u * v;
        return out;
    };
    auto res = submult_test<std::map<long long, cplx>>([&](const auto& a) { return norm_length<long long>(a, ell); }, mul,
                                                       sample, 1000);
    CHECK(res.max_ratio <= 1 + 1e-12);
}

TEST_CASE("norm family names") {
    CHECK(parse_norm_family("pbw-alt") == NormFamily::AlternativePBW);
    CHECK(parse_norm_family("length") == NormFamily::LengthFn);
    CHECK_THROWS_AS(parse_norm_family("sup"), ParameterError);
}

TEST_CASE("compensated summation") {
    CompensatedSum s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);
    CHECK(log_factorial(25) == doctest::Approx(std::lgamma(26.0)));
    CHECK_THROWS_AS(log_factorial(-1), ParameterError);
}
