#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hfg/io.hpp"
#include "testing.hpp"

using namespace hfg;
using hfg::testing::max_diff;

namespace {

std::string data(const std::string& f) { return std::string(HFG_DATA_DIR) + "/" + f; }

HopfFile parse_text(const std::string& s) {
    std::istringstream in(s);
    return parse_hopf(in, "text");
}

double data_distance(const HopfData& a, const HopfData& b) {
    REQUIRE(a.pres.ngens == b.pres.ngens);
    REQUIRE(a.pres.trunc == b.pres.trunc);
    double m = 0;
    for (int i = 0; i < a.pres.ngens; ++i) {
        m = std::max(m, max_diff(a.delta[i], b.delta[i]));
        m = std::max(m, max_diff(a.S[i], b.S[i]));
        m = std::max(m, std::abs(a.eps[i] - b.eps[i]));
        if (a.S_inv && b.S_inv) m = std::max(m, max_diff((*a.S_inv)[i], (*b.S_inv)[i]));
    }
    REQUIRE(a.pres.relators.size() == b.pres.relators.size());
    for (std::size_t r = 0; r < a.pres.relators.size(); ++r)
        m = std::max(m, max_diff(a.pres.relators[r].poly, b.pres.relators[r].poly));
    return m;
}

}  // namespace

TEST_CASE("expressions") {
    ParamMap p{{"q", 2.0}, {"hbar", cplx(0.3, 0.1)}};
    CHECK(eval_expr("1+2*3", p) == cplx(7));
    CHECK(eval_expr("2^10", p) == cplx(1024));
    CHECK(eval_expr("-(1,2)", p) == cplx(-1, -2));
    CHECK(std::abs(eval_expr("exp(i*pi)", p) + 1.0) < 1e-15);
    CHECK(std::abs(eval_expr("log(q)+2*pi*i", p) - cplx(std::log(2.0), 2 * std::acos(-1.0))) < 1e-15);
    CHECK(std::abs(eval_expr("sinh(hbar)/cosh(hbar)", p) - std::tanh(cplx(0.3, 0.1))) < 1e-15);
    CHECK(std::abs(eval_expr("sqrt(4)/2-1", p)) < 1e-15);
    CHECK_THROWS_AS(eval_expr("1+", p), ParseError);
    CHECK_THROWS_AS(eval_expr("zeta", p), ParseError);
    CHECK_THROWS_AS(eval_expr("(1", p), ParseError);
}

TEST_CASE("terms") {
    std::vector<std::string> names{"x", "y"};
    TermList t = parse_terms("2 x y @ | -1 exp(1;x) @ y", names, 2);
    REQUIRE(t.size() == 2);
    TensorSeries s = eval_terms<2>(t, 2, 3, {});
    NCSeries x = gen(2, 3, 0), y = gen(2, 3, 1);
    TensorSeries ref = 2.0 * tensor_embed_left(x * y) - tensor_product(apply_entire(exp_fn(), x), y);
    CHECK(max_diff(s, ref) < 1e-15);
    CHECK(has_entire(t));
    CHECK_FALSE(has_entire(parse_terms("1 x", names, 1)));
    CHECK_THROWS_AS(parse_terms("1 z", names, 1), ParseError);
    CHECK_THROWS_AS(parse_terms("1 x @ y", names, 1), ParseError);
}

TEST_CASE("bundled Hopf files agree with the catalog") {
    const int N = 4;
    SUBCASE("usl2") {
        HopfFile f = load_hopf_file(data("usl2.hopf"));
        CHECK(data_distance(build_hopf(f, N), hopf_usl2_hbar(cplx(0.3, 0.1), N)) < 1e-15);
        const cplx h(0.7, -0.2);
        CHECK(data_distance(build_hopf(f, N, {{"hbar", h}}), hopf_usl2_hbar(h, N)) < 1e-15);
    }
    SUBCASE("uaf1") {
        HopfFile f = load_hopf_file(data("uaf1.hopf"));
        CHECK(data_distance(build_hopf(f, N), hopf_uaf1_hbar(1.0, N)) < 1e-15);
    }
    SUBCASE("oaf1q with its realizations") {
        HopfFile f = load_hopf_file(data("oaf1q.hopf"));
        CHECK(f.guard == oaf1_guard(2.0, 5));
        CHECK(data_distance(build_hopf(f, N, {}, 10), hopf_oaf1_q(2.0, N, 10)) < 1e-15);
        auto fr = build_realizations(f, N + 10);
        auto cr = oaf1_realizations(2.0, N + 10);
        REQUIRE(fr.size() == cr.size());
        Word yx = make_word({1, 0, 0});
        for (std::size_t i = 0; i < fr.size(); ++i) {
            CHECK(fr[i].label == cr[i].label);
            CHECK(max_diff(fr[i].rw->word_nf(yx), cr[i].rw->word_nf(yx)) < 1e-12);
        }
        CHECK_THROWS_AS(build_hopf(f, N, {{"q", 0.0}}), ParameterError);
    }
    SUBCASE("cz2") {
        HopfFile f = load_hopf_file(data("cz2.hopf"));
        CHECK(data_distance(build_hopf(f, N), hopf_group_algebra(cyclic_group(2), N)) < 1e-15);
    }
}

TEST_CASE("degenerate parameters in files") {
    HopfFile f = load_hopf_file(data("usl2.hopf"));
    CHECK_THROWS_AS(build_hopf(f, 3, {{"hbar", 0.0}}), ParameterError);
    // unknown overrides are ignored, not added
    CHECK(merged_params(f, {{"zeta", 1.0}}).count("zeta") == 0);
}

TEST_CASE("Hopf file diagnostics carry line numbers") {
    auto message = [](const std::string& s) {
        try {
            parse_text(s);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message("gens x\nfrobnicate\n").find("text:2:") == 0);
    CHECK(message("gens x\ndelta x 1 x @\n").find("expected '='") != std::string::npos);
    CHECK(message("gens x\nrealization r\n  names a\n").find("lacks 'end'") != std::string::npos);
    CHECK(message("hopf empty\n").find("no generators") != std::string::npos);
    CHECK(message("gens x\nparam a b\n").find("bad number") != std::string::npos);
    HopfFile f = parse_text("gens x\ndelta x = 1 x @ | 1 @ x\n");
    CHECK_THROWS_AS(build_hopf(f, 3), ParseError);
}

TEST_CASE("a small file verifies") {
    HopfFile f = parse_text(
        "hopf line\n"
        "gens x\n"
        "delta x = 1 x @ | 1 @ x\n"
        "eps x = 0\n"
        "S x = -1 x\n");
    auto r = verify_hopf(build_hopf(f, 4));
    CHECK(r.pass());
    CHECK_FALSE(r.vacuous());
}

TEST_CASE("Lie files") {
    LieFile n = load_lie_file(data("n33.lie"));
    CHECK(n.g.dim() == 14);
    CHECK(lower_central_series(n.g).dims() == std::vector<int>{14, 11, 8, 0});
    LieAlgebra ref = free_nilpotent(3, 3);
    double d = 0;
    for (int i = 0; i < 14; ++i)
        for (int j = 0; j < 14; ++j)
            for (int k = 0; k < 14; ++k) d = std::max(d, std::abs(n.g.sc(i, j, k) - ref.sc(i, j, k)));
    CHECK(d == 0.0);

    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return parse_lie(in, "text");
    };
    LieFile h = parse("lie h\ndim 3\nnames x y z\nc 1 2 3 1\n");
    CHECK(lower_central_series(h.g).dims() == std::vector<int>{3, 1, 0});
    CHECK_THROWS_AS(parse("dim 2\nc 1 3 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse("dim 2\nc 1 1 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse("names x\n"), ParseError);
    CHECK_THROWS_AS(parse("dim 2\nlevi\n v 1 0\n"), ParseError);
    CHECK_THROWS_AS(parse("dim 3\nc 1 2 3 1\nc 2 3 1 1\nc 1 3 1 1\n"), ValidationError);
}

TEST_CASE("reports") {
    CHECK(num(0.0) == "0");
    CHECK(num(0.1) == "0.1");
    CHECK(num(1.0 / 3.0) == "0.333333333333333");
    CHECK(num(cplx(1, -2)) == "1-2i");
    CHECK(num(cplx(0.5, 0.25)) == "0.5+0.25i");
    auto r = verify_hopf(hopf_env(heisenberg(), 3));
    Report a = to_report(r), b = to_report(verify_hopf(hopf_env(heisenberg(), 3)));
    CHECK(a.dump() == b.dump());
    CHECK(a["pass"] == true);
    CHECK(a["max_residual"].is_string());
    CHECK(a.find("seconds") == a.end());
}
