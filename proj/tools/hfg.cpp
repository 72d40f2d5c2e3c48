// hfg: verification kernel front end.
//
//   hfg verify-hopf --catalog usl2 --hbar 0.3 0.1 --trunc 5
//   hfg lie --catalog n33
//   hfg norms --family power --r 2 --s 1 --input coeffs.txt
//   hfg group --group z2z2 --word u*v*u --rho 3
//   hfg primitives --catalog env-af1 --trunc 6 --maxdeg 3
//
// Reports are JSON objects on stdout (or --out); exit status 0 iff the
// suite passes, 2 on bad input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "hfg/groups.hpp"
#include "hfg/hopf.hpp"
#include "hfg/io.hpp"
#include "hfg/lie.hpp"
#include "hfg/norms.hpp"

#ifndef HFG_DATA_DIR
#define HFG_DATA_DIR "data"
#endif

using namespace hfg;

namespace {

struct Config {
    int trunc = 5;
    double tol = 1e-9;
    unsigned seed = 1;
    std::vector<double> hbar, q;
    std::string catalog, input, out;
    int guard = -1;
    int random_checks = 0;
    // norms
    std::string family;
    double r = 1, s = 0;
    std::string weights;
    std::string lie_name = "heisenberg";
    int test = 0;
    // group
    std::string group = "z2z2";
    std::vector<std::string> words;
    std::string F;
    std::vector<double> rho;
    std::string arbt;
    int horizon = 6;
    // primitives
    int maxdeg = -1;
};

std::string data_path(const std::string& f) { return std::string(HFG_DATA_DIR) + "/" + f; }

std::optional<cplx> param(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    return cplx(v[0], v.size() > 1 ? v[1] : 0.0);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    if (!cur.empty() || !out.empty()) out.push_back(cur);
    return out;
}

std::vector<double> doubles(const std::string& s) {
    std::vector<double> out;
    for (auto& t : split(s, ',')) out.push_back(std::stod(t));
    return out;
}

std::vector<int> ints(const std::string& s) {
    std::vector<int> out;
    for (auto& t : split(s, ',')) out.push_back(std::stoi(t));
    return out;
}

void emit(const Config& c, const Report& j) {
    std::string text = j.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw ParseError("cannot write " + c.out);
    f << text;
}

LieAlgebra lie_catalog(const std::string& name, std::optional<Mat>* levi = nullptr,
                       std::optional<Mat>* sub = nullptr) {
    if (name == "heisenberg") return heisenberg();
    if (name == "sl2") return sl2();
    if (name == "af1") return af1();
    if (name == "n33") return free_nilpotent(3, 3);
    if (name.rfind("abelian", 0) == 0) return abelian(std::stoi(name.substr(7)));
    if (name == "gl2n632") {
        auto f = load_lie_file(data_path("gl2n632.lie"));
        if (levi) *levi = f.levi;
        if (sub) *sub = f.subalgebra;
        return f.g;
    }
    throw ParameterError("unknown Lie algebra '" + name + "'");
}

struct Suite {
    HopfData data;
    std::vector<Realization> reals;
};

// Catalog entries and files; parameters from the command line override defaults.
Suite load_suite(const Config& c) {
    const int N = c.trunc;
    ParamMap over;
    if (auto h = param(c.hbar)) over["hbar"] = *h;
    if (auto q = param(c.q)) over["q"] = *q;
    auto from_file = [&](const std::string& path) {
        auto f = load_hopf_file(path);
        Suite s{build_hopf(f, N, over, c.guard), {}};
        if (!f.realizations.empty()) s.reals = build_realizations(f, s.data.pres.trunc, over);
        return s;
    };
    if (!c.input.empty()) {
        if (c.input.size() > 4 && c.input.substr(c.input.size() - 4) == ".lie") {
            auto f = load_lie_file(c.input);
            return {hopf_env(f.g, N, f.name), {}};
        }
        return from_file(c.input);
    }
    const std::string& n = c.catalog;
    const int guard = c.guard < 0 ? kDefaultGuard : c.guard;
    if (n == "usl2") return {hopf_usl2_hbar(param(c.hbar).value_or(cplx(0.3, 0.1)), N, guard), {}};
    if (n == "uaf1") return {hopf_uaf1_hbar(param(c.hbar).value_or(1.0), N, guard), {}};
    if (n == "oaf1q") {
        cplx q = param(c.q).value_or(2.0);
        if (std::abs(q) < 1e-300) throw ParameterError("q = 0 is excluded");
        int g = c.guard < 0 ? oaf1_guard(q, N) : c.guard;
        Suite s{hopf_oaf1_q(q, N, g), {}};
        s.reals = oaf1_realizations(q, N + g);
        return s;
    }
    if (n == "cz2") return {hopf_group_algebra(cyclic_group(2), N), {}};
    if (n.rfind("cyclic", 0) == 0) return {hopf_group_algebra(cyclic_group(std::stoi(n.substr(6))), N), {}};
    if (n.rfind("env-", 0) == 0) return {hopf_env(lie_catalog(n.substr(4)), N, n), {}};
    if (n.empty()) throw ParameterError("give --catalog or --input");
    throw ParameterError("unknown catalog entry '" + n + "'");
}

Report params_report(const HopfData& h) {
    Report p = Report::object();
    for (auto& [k, v] : h.params) p[k] = num(v);
    return p;
}

int cmd_verify(const Config& c) {
    Suite s = load_suite(c);
    auto res = run_suite(s.data, s.reals, c.tol, c.random_checks, c.seed);
    Report j;
    j["command"] = "verify-hopf";
    j["name"] = s.data.name;
    j["params"] = params_report(s.data);
    j["formal"] = to_report(res.formal);
    if (res.realized) j["realized"] = to_report(*res.realized);
    j["pass"] = res.pass();
    emit(c, j);
    std::cerr << s.data.name << ": " << (res.pass() ? "pass" : "FAIL") << " (formal "
              << fmt_real(res.formal.seconds) << " s";
    if (res.realized) std::cerr << ", realized " << fmt_real(res.realized->seconds) << " s";
    std::cerr << ")\n";
    return res.pass() ? 0 : 1;
}

Report matrix_report(const Mat& B, const std::vector<std::string>& names) {
    Report out = Report::array();
    Mat C = canonical_basis(B);
    for (int j = 0; j < C.cols(); ++j) {
        Report v = Report::object();
        for (int i = 0; i < C.rows(); ++i)
            if (std::abs(C(i, j)) > kRankTol) v[names[i]] = num(C(i, j));
        out.push_back(v);
    }
    return out;
}

int cmd_lie(const Config& c) {
    std::optional<Mat> levi, sub;
    LieAlgebra g;
    std::string name;
    if (!c.input.empty()) {
        auto f = load_lie_file(c.input);
        g = f.g;
        levi = f.levi;
        sub = f.subalgebra;
        name = f.name;
    } else {
        name = c.catalog.empty() ? "heisenberg" : c.catalog;
        g = lie_catalog(name, &levi, &sub);
    }
    Report j;
    j["command"] = "lie";
    j["name"] = name;
    j["dim"] = g.dim();
    j["jacobi_residual"] = num(g.jacobi_residual());
    auto lcs = lower_central_series(g);
    j["lower_central_dims"] = lcs.dims();
    j["nilpotent"] = is_nilpotent(g);
    if (is_nilpotent(g)) {
        auto wd = f_basis(g);
        j["weights"] = wd.weights;
        j["f_basis"] = matrix_report(wd.basis, g.names());
        j["weight_residual"] = num(weight_invariant_residual(g, wd));
    }
    Mat rad = solvable_radical(g);
    j["radical"] = matrix_report(rad, g.names());
    if (levi) {
        auto er = exponential_radical(g, *levi);
        j["r_infinity"] = matrix_report(er.r_inf, g.names());
        j["s_r"] = matrix_report(er.s_r, g.names());
        j["exponential_radical"] = matrix_report(er.e, g.names());
        if (sub) {
            Mat E = intersect(*sub, er.e);
            if (containment_residual(er.e, orth(*sub)) > kRankTol)
                j["quotient_note"] = "exponential radical not contained in the subalgebra; quotient by the intersection";
            LieAlgebra qa = quotient_algebra(g, *sub, E);
            j["quotient_dim"] = qa.dim();
            j["quotient_names"] = qa.names();
            if (is_nilpotent(qa)) j["quotient_weights"] = f_basis(qa).weights;
            else j["quotient_weights"] = "not nilpotent";
        }
    }
    emit(c, j);
    return 0;
}

// ---------------------------------------------------------------------------
// norms

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto t = detail::split_ws(line);
        if (!t.empty()) rows.push_back(t);
    }
    return rows;
}

cplx coef_of(const std::vector<std::string>& row, std::size_t at) {
    if (row.size() < at + 1) throw ParseError("row lacks a coefficient");
    return cplx(std::stod(row[at]), row.size() > at + 1 ? std::stod(row[at + 1]) : 0.0);
}

std::vector<int> weights_for(const Config& c) {
    if (!c.weights.empty()) return ints(c.weights);
    LieAlgebra g = lie_catalog(c.lie_name);
    if (!is_nilpotent(g)) throw ParameterError("weights need a nilpotent Lie algebra");
    return f_basis(g).weights;
}

FinGenGroup group_catalog(const std::string& n) {
    if (n == "z2z2") return z2z2();
    if (n == "z2z2-uw") return z2z2(true);
    if (n.rfind("free", 0) == 0) return free_monoid(std::stoi(n.substr(4)));
    if (n.rfind("cyclic", 0) == 0) {
        auto G = cyclic_group(std::stoi(n.substr(6)));
        return table_group(n, G.table, {1}, G.names);
    }
    if (n.size() > 1 && n[0] == 'z' && std::isdigit(static_cast<unsigned char>(n[1])))
        return integer_lattice(std::stoi(n.substr(1)));
    throw ParameterError("unknown group '" + n + "'");
}

Elem parse_group_word(const FinGenGroup& G, const std::string& w) {
    if (w == "1" || w.empty()) return G.identity;
    std::vector<int> letters;
    for (auto& t : split(w, '*')) {
        auto it = std::find(G.gen_names.begin(), G.gen_names.end(), t);
        if (it == G.gen_names.end()) throw ParseError("unknown generator '" + t + "' in " + G.name);
        letters.push_back(static_cast<int>(it - G.gen_names.begin()));
    }
    return G.word(letters);
}

std::string render_pbw(const PBWCoeffs& a) {
    std::string s;
    for (auto& [al, c] : a) {
        s += (s.empty() ? "" : " + ") + std::string("(") + fmt_cplx(c) + ")e^(";
        for (std::size_t i = 0; i < al.size(); ++i) s += (i ? "," : "") + std::to_string(al[i]);
        s += ")";
    }
    return s.empty() ? "0" : s;
}

int cmd_norms(const Config& c) {
    NormFamily fam = parse_norm_family(c.family);
    Report j;
    j["command"] = "norms";
    j["family"] = c.family;
    j["r"] = num(c.r);
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> U(-1, 1);
    auto rc = [&] { return cplx(U(rng), U(rng)); };
    switch (fam) {
        case NormFamily::FreeEntire: {
            int n = 2, T = 8;
            if (!c.input.empty()) {
                auto rows = read_rows(c.input);
                std::vector<std::pair<Word, cplx>> terms;
                for (auto& r : rows) {
                    Word w;
                    if (r[0] != "-")
                        for (char ch : r[0]) {
                            if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("word letters are digits");
                            w.push_back(static_cast<char>(ch - '0'));
                            n = std::max(n, ch - '0' + 1);
                        }
                    T = std::max<int>(T, static_cast<int>(w.size()));
                    terms.emplace_back(w, coef_of(r, 1));
                }
                NCSeries a(n, T);
                for (auto& [w, v] : terms) a.add_term({w}, v);
                j["value"] = num(norm_free(a, c.r));
            }
            if (c.test > 0) {
                auto sample = [&] {
                    NCSeries a(2, 8);
                    for (int k = 0; k < 4; ++k) {
                        Word w;
                        for (int l = static_cast<int>(rng() % 4); l > 0; --l) w.push_back(static_cast<char>(rng() % 2));
                        a.add_term({w}, rc());
                    }
                    return a;
                };
                auto res = submult_test<NCSeries>([&](const NCSeries& a) { return norm_free(a, c.r); },
                                                  [](const NCSeries& a, const NCSeries& b) { return a * b; }, sample, c.test);
                j["max_ratio"] = num(res.max_ratio);
                j["witness"] = {render(res.a), render(res.b)};
            }
            break;
        }
        case NormFamily::PowerSeries: {
            j["s"] = num(c.s);
            if (!c.input.empty()) {
                std::vector<cplx> a;
                for (auto& r : read_rows(c.input)) {
                    std::size_t n = std::stoul(r[0]);
                    if (a.size() <= n) a.resize(n + 1);
                    a[n] += coef_of(r, 1);
                }
                j["value"] = num(norm_power_series(a, c.r, c.s));
            }
            if (c.test > 0) {
                using P = std::vector<cplx>;
                auto sample = [&] {
                    P a(1 + rng() % 6);
                    for (auto& x : a) x = rc();
                    return a;
                };
                auto mul = [](const P& a, const P& b) {
                    P out(a.size() + b.size() - 1);
                    for (std::size_t i = 0; i < a.size(); ++i)
                        for (std::size_t k = 0; k < b.size(); ++k) out[i + k] += a[i] * b[k];
                    return out;
                };
                auto res = submult_test<P>([&](const P& a) { return norm_power_series(a, c.r, c.s); }, mul, sample, c.test);
                j["max_ratio"] = num(res.max_ratio);
            }
            break;
        }
        case NormFamily::PowerSeriesTensor: {
            j["s"] = num(c.s);
            std::map<std::pair<int, int>, cplx> t;
            if (!c.input.empty())
                for (auto& r : read_rows(c.input)) t[{std::stoi(r.at(0)), std::stoi(r.at(1))}] += coef_of(r, 2);
            j["value"] = num(norm_power_series_tensor(t, c.r, c.s));
            Report bounds = Report::array();
            for (int n = 0; n <= 20; ++n)
                bounds.push_back({{"n", n},
                                  {"delta_norm", num(norm_power_series_tensor(delta_power(n), c.r, c.s))},
                                  {"bound", num(delta_power_bound(n, c.r, c.s))}});
            j["delta_powers"] = bounds;
            break;
        }
        case NormFamily::NilpotentPBW:
        case NormFamily::AlternativePBW: {
            auto w = weights_for(c);
            j["weights"] = w;
            auto norm = [&](const PBWCoeffs& a) {
                return fam == NormFamily::NilpotentPBW ? norm_pbw(a, c.r, w) : norm_pbw_alt(a, c.r, w);
            };
            if (!c.input.empty()) {
                PBWCoeffs a;
                for (auto& r : read_rows(c.input)) a[ints(r.at(0))] += coef_of(r, 1);
                j["value"] = num(norm(a));
            }
            if (c.test > 0) {
                LieAlgebra g = lie_catalog(c.lie_name);
                if (g.dim() != static_cast<int>(w.size())) throw DimensionError("weights do not match the Lie algebra");
                PBWRewriter rw(g, 64);
                auto sample = [&] {
                    PBWCoeffs a;
                    for (int k = 0; k < 2; ++k) {
                        MultiIndex al(g.dim());
                        for (auto& x : al) x = static_cast<int>(rng() % 3);
                        a[al] += rc();
                    }
                    return a;
                };
                auto res = submult_test<PBWCoeffs>(norm, [&](const PBWCoeffs& a, const PBWCoeffs& b) { return pbw_multiply(rw, a, b); },
                                                   sample, c.test);
                j["max_ratio"] = num(res.max_ratio);
                j["witness"] = {render_pbw(res.a), render_pbw(res.b)};
            }
            break;
        }
        case NormFamily::Connected: {
            auto w = weights_for(c);
            ConnectedCoeffs a;
            ConnectedSupport F;
            if (c.input.empty()) throw ParameterError("connected norms need --input");
            for (auto& r : read_rows(c.input)) {
                if (r[0] == "F") F.insert({std::stoi(r.at(1)), ints(r.at(2))});
                else a[{std::stoi(r.at(0)), std::stoi(r.at(1)), std::stoi(r.at(2)), ints(r.at(3)), ints(r.at(4))}] += coef_of(r, 5);
            }
            j["weights"] = w;
            j["value"] = num(norm_connected(a, c.r, F, w));
            break;
        }
        case NormFamily::LengthFn: {
            FinGenGroup G = group_catalog(c.group);
            std::vector<double> Fw = c.F.empty() ? std::vector<double>(G.ngens(), 1.0) : doubles(c.F);
            CayleyBall B(G, Fw);
            std::function<double(const Elem&)> ell = [&](const Elem& g) { return B.distance(g); };
            j["group"] = G.name;
            if (!c.input.empty()) {
                GroupAlgebraElement a;
                for (auto& r : read_rows(c.input)) a[parse_group_word(G, r[0])] += coef_of(r, 1);
                j["value"] = num(norm_length(a, ell));
            }
            if (c.test > 0) {
                std::uniform_int_distribution<int> len(0, 4), pick(0, G.ngens() - 1);
                auto sample = [&] {
                    GroupAlgebraElement a;
                    for (int k = 0; k < 3; ++k) {
                        std::vector<int> letters(len(rng));
                        for (auto& l : letters) l = pick(rng);
                        a[G.word(letters)] += rc();
                    }
                    return a;
                };
                auto res = submult_test<GroupAlgebraElement>(
                    [&](const GroupAlgebraElement& a) { return norm_length(a, ell); },
                    [&](const GroupAlgebraElement& a, const GroupAlgebraElement& b) { return convolve(G, a, b); }, sample, c.test);
                j["max_ratio"] = num(res.max_ratio);
            }
            break;
        }
    }
    emit(c, j);
    return 0;
}

// ---------------------------------------------------------------------------
// group

Report laurent_report(const Laurent& f) {
    Report o = Report::object();
    for (auto& [n, a] : f)
        if (a != cplx{}) o[std::to_string(n)] = num(a);
    return o;
}

int cmd_group(const Config& c) {
    FinGenGroup G = group_catalog(c.group);
    Report j;
    j["command"] = "group";
    j["group"] = G.name;
    j["generators"] = G.gen_names;
    std::vector<double> Fw = c.F.empty() ? std::vector<double>(G.ngens(), 1.0) : doubles(c.F);
    CayleyBall uniform(G), weighted_ball(G, Fw);
    Report lens = Report::array();
    for (auto& w : c.words) {
        Elem e = parse_group_word(G, w);
        lens.push_back({{"word", w},
                        {"normal_form", G.show(e)},
                        {"length", std::llround(uniform.distance(e))},
                        {"length_F", num(weighted_ball.distance(e))}});
    }
    j["lengths"] = lens;
    if (!c.arbt.empty()) {
        auto W = arbtCnF_witness(G, doubles(c.arbt), c.horizon);
        Report a;
        a["F"] = Report::array();
        a["ell_F"] = Report::array();
        for (double x : W.F) a["F"].push_back(num(x));
        for (double x : W.ell) a["ell_F"].push_back(num(x));
        a["verified"] = W.verified;
        j["arbtCnF"] = a;
    }
    if (G.name == "z2z2" && !c.input.empty()) {
        GroupAlgebraElement a;
        for (auto& r : read_rows(c.input)) a[{std::stoll(r.at(0)), std::stoll(r.at(1))}] += coef_of(r, 2);
        LaurentMatrix M = z2z2_phi(a);
        Report phi = Report::array();
        for (auto& f : M) phi.push_back(laurent_report(f));
        j["phi"] = phi;
        j["sigma_fixed_residual"] = num(laurent_distance(sigma(M), M));
        Report norms = Report::array();
        for (double r : c.rho.empty() ? std::vector<double>{0.5, 1, 3} : c.rho)
            norms.push_back({{"rho", num(r)}, {"norm", num(matrix_norm(M, r))}, {"closed_form", num(z2z2_norm_closed(a, r))}});
        j["norms"] = norms;
        Report ev = Report::array();
        for (cplx z : {cplx(1), cplx(-1), cplx(2)}) {
            Mat2 A = evaluate(M, z);
            Report m = Report::array();
            for (auto& x : A) m.push_back(num(x));
            ev.push_back({{"z", num(z)}, {"value", m}, {"commutator_with_u", num(commutator_with_u(A))}});
        }
        j["evaluations"] = ev;
    }
    emit(c, j);
    return 0;
}

int cmd_primitives(const Config& c) {
    Suite s = load_suite(c);
    const HopfData& h = s.data;
    int maxdeg = c.maxdeg < 0 ? h.nominal_trunc() / 2 : c.maxdeg;
    auto rw = preferred_rewriting(h.pres);
    HopfData hd = rw || h.pres.trunc == h.nominal_trunc() ? h : h.retruncated(h.nominal_trunc());
    IdealSpan I(hd.pres, rw);
    TensorIdealSpan T(hd.pres, rw);
    auto res = primitives(hd, I, T, maxdeg, c.tol);
    Report j;
    j["command"] = "primitives";
    j["name"] = h.name;
    j["params"] = params_report(h);
    j["trunc"] = h.nominal_trunc();
    j["maxdeg"] = maxdeg;
    j["backend"] = backend_name(I.backend());
    j["candidates"] = res.candidates.size();
    j["dimension"] = res.basis.size();
    Report b = Report::array();
    for (auto& x : res.basis) b.push_back(render(x, &h.pres.names));
    j["basis"] = b;
    Report gens = Report::array();
    for (int i = 0; i < h.pres.ngens; ++i)
        gens.push_back({{"generator", h.pres.names[i]}, {"primitive_residual", num(primitive_residual(hd, T, hd.pres.gen(i)))}});
    j["generators"] = gens;
    if (h.name == "cz2" || h.name.rfind("cyclic", 0) == 0)
        j["note"] = "1 = delta_e is group-like, not primitive; the computed space is {0}";
    emit(c, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Truncated verification of holomorphically finitely generated Hopf algebras"};
    app.require_subcommand(1);
    Config c;
    auto common = [&](CLI::App* s) {
        s->add_option("--trunc", c.trunc, "truncation degree N")->check(CLI::PositiveNumber);
        s->add_option("--tol", c.tol, "residual tolerance")->check(CLI::PositiveNumber);
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--out", c.out, "write the report here instead of stdout");
        s->add_option("--input", c.input, "data file");
        s->add_option("--catalog", c.catalog, "built-in object");
    };
    auto hopf_opts = [&](CLI::App* s) {
        s->add_option("--hbar", c.hbar, "hbar as RE IM")->expected(2);
        s->add_option("--q", c.q, "q as RE IM")->expected(2);
        s->add_option("--guard", c.guard, "extra truncation degree for entire functions");
    };
    auto* verify = app.add_subcommand("verify-hopf", "check Hopf axioms on generators");
    common(verify);
    hopf_opts(verify);
    verify->add_option("--random", c.random_checks, "antipode checks on random products");

    auto* lie = app.add_subcommand("lie", "lower central series, weights, exponential radical");
    common(lie);

    auto* norms = app.add_subcommand("norms", "weighted norm families");
    common(norms);
    norms->add_option("--family", c.family, "free|power|power-tensor|pbw|pbw-alt|connected|length")->required();
    norms->add_option("--r,--rho", c.r, "r or rho")->check(CLI::PositiveNumber);
    norms->add_option("--s", c.s, "factorial exponent s")->check(CLI::NonNegativeNumber);
    norms->add_option("--weights", c.weights, "comma-separated PBW weights");
    norms->add_option("--lie", c.lie_name, "Lie algebra for PBW weights and products");
    norms->add_option("--group", c.group, "group for length norms");
    norms->add_option("--F", c.F, "comma-separated generator weights");
    norms->add_option("--test", c.test, "submultiplicativity test on this many random pairs");

    auto* group = app.add_subcommand("group", "word lengths and the z2z2 realization");
    common(group);
    group->add_option("--group", c.group, "z2z2|z2z2-uw|freeN|zK|cyclicN");
    group->add_option("--word", c.words, "element as generator names joined by '*'");
    group->add_option("--F", c.F, "comma-separated generator weights");
    group->add_option("--rho", c.rho, "rho values for the matrix norm");
    group->add_option("--arbt", c.arbt, "comma-separated C_n for the weight witness");
    group->add_option("--horizon", c.horizon, "number of generators for the witness");

    auto* prim = app.add_subcommand("primitives", "basis of primitive elements");
    common(prim);
    hopf_opts(prim);
    prim->add_option("--maxdeg", c.maxdeg, "degree bound, at most N/2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        if (*verify) return cmd_verify(c);
        if (*lie) return cmd_lie(c);
        if (*norms) return cmd_norms(c);
        if (*group) return cmd_group(c);
        if (*prim) return cmd_primitives(c);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
