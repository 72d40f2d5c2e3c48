#pragma once

// Text formats for Hopf data and Lie algebras, and the report writer.
//
// Hopf file (one directive per line, '#' starts a comment):
//   hopf NAME
//   gens E F H
//   param hbar 0.3 0.1          default value, overridable
//   nonzero q                   reject the parameter when it vanishes
//   guard 20                    extra truncation for entire functions
//   relator LABEL = TERMS
//   delta E = TERMS             two slots separated by '@'
//   eps E = EXPR
//   S E = TERMS
//   S_inv E = TERMS
//   realization LABEL           target algebra U(g) with images, up to 'end'
//     names x y
//     c 1 2 2 EXPR              [x_1, x_2] += EXPR x_2
//     image z = TERMS
//   end
// TERMS is 'term | term | ...'; a term is a coefficient expression followed
// by factors: a generator name, exp(EXPR;NAME), sinh_q(EXPR;NAME) for
// sinh(EXPR·NAME)/sinh(EXPR), or 1. An empty slot is the unit.
//
// Lie file:
//   lie NAME
//   dim 10
//   names t h x ...
//   c i j k EXPR                [e_i, e_j] += EXPR e_k, 1-based
//   levi | subalgebra           rows 'v EXPR ...' up to 'end'

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hopf.hpp"
#include "lie.hpp"

namespace hfg {

using ParamMap = std::map<std::string, cplx>;

// Recursive descent over + - * / ^, numbers, i, pi, parameters, (re,im)
// pairs and exp/log/sinh/cosh/sqrt.
class ExprParser {
public:
    ExprParser(std::string s, const ParamMap& params) : s_(std::move(s)), params_(params) {}

    cplx parse() {
        cplx v = expr();
        skip();
        if (pos_ != s_.size()) fail("trailing input");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("expression '" + s_ + "': " + why + " at column " + std::to_string(pos_ + 1));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    cplx expr() {
        cplx v = term();
        while (true) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }
    cplx term() {
        cplx v = unary();
        while (true) {
            if (eat('*')) v *= unary();
            else if (eat('/')) {
                cplx d = unary();
                if (d == cplx{}) fail("division by zero");
                v /= d;
            } else return v;
        }
    }
    cplx unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        cplx b = primary();
        if (eat('^')) return std::pow(b, unary());
        return b;
    }
    cplx primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            cplx a = expr();
            if (eat(',')) {
                cplx b = expr();
                if (!eat(')')) fail("expected ')'");
                return a + cplx(0, 1) * b;
            }
            if (!eat(')')) fail("expected ')'");
            return a;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* start = s_.c_str() + pos_;
            char* end = nullptr;
            double x = std::strtod(start, &end);
            if (end == start) fail("bad number");
            pos_ += static_cast<std::size_t>(end - start);
            return x;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id = s_.substr(b, pos_ - b);
            if (eat('(')) {
                cplx a = expr();
                if (!eat(')')) fail("expected ')'");
                if (id == "exp") return std::exp(a);
                if (id == "log") {
                    if (a == cplx{}) fail("log(0)");
                    return std::log(a);
                }
                if (id == "sinh") return std::sinh(a);
                if (id == "cosh") return std::cosh(a);
                if (id == "sqrt") return std::sqrt(a);
                fail("unknown function '" + id + "'");
            }
            if (auto it = params_.find(id); it != params_.end()) return it->second;
            if (id == "i") return cplx(0, 1);
            if (id == "pi") return std::acos(-1.0);
            fail("unknown name '" + id + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    std::string s_;
    const ParamMap& params_;
    std::size_t pos_ = 0;
};

inline cplx eval_expr(const std::string& s, const ParamMap& p) { return ExprParser(s, p).parse(); }

struct Factor {
    enum Kind { Gen, Unit, Exp, SinhQ } kind = Unit;
    int gen = 0;
    std::string arg;  // expression for Exp / SinhQ
};

struct Term {
    std::string coef;
    std::vector<std::vector<Factor>> slots;
};

using TermList = std::vector<Term>;

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

inline int gen_index(const std::vector<std::string>& names, const std::string& n) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == n) return static_cast<int>(i);
    throw ParseError("unknown generator '" + n + "'");
}

inline Factor parse_factor(const std::string& tok, const std::vector<std::string>& names) {
    if (tok == "1") return {};
    for (auto [prefix, kind] : {std::pair{"exp(", Factor::Exp}, std::pair{"sinh_q(", Factor::SinhQ}}) {
        std::string p = prefix;
        if (tok.rfind(p, 0) == 0) {
            if (tok.back() != ')') throw ParseError("factor '" + tok + "' lacks ')'");
            std::string inner = tok.substr(p.size(), tok.size() - p.size() - 1);
            auto semi = inner.rfind(';');
            if (semi == std::string::npos) throw ParseError("factor '" + tok + "' needs ARG;NAME");
            return {kind, gen_index(names, inner.substr(semi + 1)), inner.substr(0, semi)};
        }
    }
    return {Factor::Gen, gen_index(names, tok), {}};
}

}  // namespace detail

inline TermList parse_terms(const std::string& rhs, const std::vector<std::string>& names, std::size_t slots) {
    TermList out;
    std::string cur;
    std::vector<std::string> pieces;
    int depth = 0;
    for (char c : rhs) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '|' && depth == 0) {
            pieces.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    pieces.push_back(cur);
    for (auto& piece : pieces) {
        auto toks = detail::split_ws(piece);
        if (toks.empty()) throw ParseError("empty term in '" + rhs + "'");
        Term t;
        t.coef = toks[0];
        t.slots.resize(1);
        for (std::size_t i = 1; i < toks.size(); ++i) {
            if (toks[i] == "@") t.slots.emplace_back();
            else t.slots.back().push_back(detail::parse_factor(toks[i], names));
        }
        if (t.slots.size() != slots)
            throw ParseError("term '" + detail::trim(piece) + "' has " + std::to_string(t.slots.size()) +
                             " slots, expected " + std::to_string(slots));
        out.push_back(std::move(t));
    }
    return out;
}

inline NCSeries eval_factor(const Factor& f, int n, int T, const ParamMap& p) {
    switch (f.kind) {
        case Factor::Unit: return NCSeries::unit(n, T);
        case Factor::Gen: return gen(n, T, f.gen);
        case Factor::Exp: return apply_entire(exp_fn(eval_expr(f.arg, p)), gen(n, T, f.gen));
        case Factor::SinhQ: return apply_entire(sinh_quotient(eval_expr(f.arg, p)), gen(n, T, f.gen));
    }
    return NCSeries(n, T);
}

template <std::size_t K>
Series<K> eval_terms(const TermList& terms, int n, int T, const ParamMap& p) {
    Series<K> out(n, T);
    for (const auto& t : terms) {
        Series<K> prod = Series<K>::unit(n, T, eval_expr(t.coef, p));
        for (std::size_t s = 0; s < K; ++s)
            for (const auto& f : t.slots[s]) prod = prod * embed<K>(eval_factor(f, n, T, p), s);
        out += prod;
    }
    return out;
}

inline bool has_entire(const TermList& terms) {
    for (const auto& t : terms)
        for (const auto& s : t.slots)
            for (const auto& f : s)
                if (f.kind == Factor::Exp || f.kind == Factor::SinhQ) return true;
    return false;
}

struct RealizationSpec {
    std::string label;
    std::vector<std::string> names;
    std::vector<std::tuple<int, int, int, std::string>> brackets;
    std::map<int, TermList> images;
};

struct HopfFile {
    std::string name = "hopf";
    std::vector<std::string> gens;
    ParamMap params;
    std::vector<std::string> nonzero;
    int guard = 0;
    std::vector<std::pair<std::string, TermList>> relators;
    std::map<int, TermList> delta, S, S_inv;
    std::map<int, std::string> eps;
    std::vector<RealizationSpec> realizations;
};

inline HopfFile parse_hopf(std::istream& in, const std::string& source = "input") {
    HopfFile f;
    std::string line;
    int lineno = 0;
    RealizationSpec* open = nullptr;
    auto where = [&] { return source + ":" + std::to_string(lineno) + ": "; };
    auto lhs_rhs = [&](const std::string& rest) {
        auto eq = rest.find('=');
        if (eq == std::string::npos) throw ParseError(where() + "expected '='");
        return std::pair{detail::trim(rest.substr(0, eq)), detail::trim(rest.substr(eq + 1))};
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = detail::trim(line);
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        std::string rest;
        std::getline(ls, rest);
        rest = detail::trim(rest);
        try {
            if (open) {
                if (kw == "end") open = nullptr;
                else if (kw == "names") open->names = detail::split_ws(rest);
                else if (kw == "c") {
                    auto t = detail::split_ws(rest);
                    if (t.size() != 4) throw ParseError("expected 'c i j k EXPR'");
                    open->brackets.emplace_back(std::stoi(t[0]) - 1, std::stoi(t[1]) - 1, std::stoi(t[2]) - 1, t[3]);
                } else if (kw == "image") {
                    auto [g, r] = lhs_rhs(rest);
                    open->images[detail::gen_index(f.gens, g)] = parse_terms(r, open->names, 1);
                } else throw ParseError("unknown realization directive '" + kw + "'");
                continue;
            }
            if (kw == "hopf") f.name = rest;
            else if (kw == "gens") f.gens = detail::split_ws(rest);
            else if (kw == "param") {
                auto t = detail::split_ws(rest);
                if (t.size() < 2 || t.size() > 3) throw ParseError("expected 'param NAME RE [IM]'");
                f.params[t[0]] = cplx(std::stod(t[1]), t.size() == 3 ? std::stod(t[2]) : 0.0);
            } else if (kw == "nonzero") f.nonzero.push_back(rest);
            else if (kw == "guard") f.guard = std::stoi(rest);
            else if (kw == "relator") {
                auto [lab, r] = lhs_rhs(rest);
                f.relators.emplace_back(lab, parse_terms(r, f.gens, 1));
            } else if (kw == "delta" || kw == "S" || kw == "S_inv" || kw == "eps") {
                auto [g, r] = lhs_rhs(rest);
                int i = detail::gen_index(f.gens, g);
                if (kw == "delta") f.delta[i] = parse_terms(r, f.gens, 2);
                else if (kw == "S") f.S[i] = parse_terms(r, f.gens, 1);
                else if (kw == "S_inv") f.S_inv[i] = parse_terms(r, f.gens, 1);
                else f.eps[i] = r;
            } else if (kw == "realization") {
                f.realizations.push_back({rest, {}, {}, {}});
                open = &f.realizations.back();
            } else throw ParseError("unknown directive '" + kw + "'");
        } catch (const ParseError& e) {
            std::string msg = e.what();
            throw ParseError(msg.rfind(source, 0) == 0 ? msg : where() + msg);
        } catch (const std::logic_error&) {
            throw ParseError(where() + "bad number in '" + line + "'");
        }
    }
    if (open) throw ParseError(source + ": realization '" + open->label + "' lacks 'end'");
    if (f.gens.empty()) throw ParseError(source + ": no generators");
    return f;
}

inline HopfFile load_hopf_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_hopf(in, path);
}

inline ParamMap merged_params(const HopfFile& f, const ParamMap& overrides) {
    ParamMap p = f.params;
    for (auto& [k, v] : overrides)
        if (p.count(k)) p[k] = v;
    for (auto& n : f.nonzero) {
        if (!p.count(n)) throw ParseError("nonzero: unknown parameter '" + n + "'");
        if (std::abs(p[n]) < 1e-300) throw ParameterError(n + " = 0 is excluded");
    }
    return p;
}

// Data built at N + guard (guard < 0: the file's value), read off at N.
inline HopfData build_hopf(const HopfFile& f, int N, const ParamMap& overrides = {}, int guard = -1) {
    const ParamMap p = merged_params(f, overrides);
    const int n = static_cast<int>(f.gens.size());
    const int M = N + (guard < 0 ? f.guard : guard);
    HopfData h;
    h.name = f.name;
    h.verify_trunc = N;
    for (auto& [k, v] : p) h.params.emplace_back(k, v);
    Presentation pres(n, M, f.gens);
    for (const auto& [lab, terms] : f.relators) {
        auto src = [terms, n, p](int T) { return eval_terms<1>(terms, n, T, p); };
        pres.add_relator(src(M), has_entire(terms), {}, lab, src);
    }
    h.pres = pres;
    for (int i = 0; i < n; ++i) {
        if (!f.delta.count(i) || !f.S.count(i))
            throw ParseError("generator " + f.gens[i] + " lacks delta or S");
        h.delta.push_back(eval_terms<2>(f.delta.at(i), n, M, p));
        h.S.push_back(eval_terms<1>(f.S.at(i), n, M, p));
        h.eps.push_back(f.eps.count(i) ? eval_expr(f.eps.at(i), p) : cplx{});
    }
    if (!f.S_inv.empty()) {
        std::vector<NCSeries> si;
        for (int i = 0; i < n; ++i) {
            if (!f.S_inv.count(i)) throw ParseError("generator " + f.gens[i] + " lacks S_inv");
            si.push_back(eval_terms<1>(f.S_inv.at(i), n, M, p));
        }
        h.S_inv = si;
    }
    return h;
}

inline std::vector<Realization> build_realizations(const HopfFile& f, int M, const ParamMap& overrides = {}) {
    const ParamMap p = merged_params(f, overrides);
    std::vector<Realization> out;
    for (const auto& r : f.realizations) {
        LieAlgebra g(static_cast<int>(r.names.size()), r.names);
        for (auto& [i, j, k, e] : r.brackets) {
            if (std::min({i, j, k}) < 0 || std::max({i, j, k}) >= g.dim())
                throw ParseError("realization " + r.label + ": bracket index out of range");
            g.set(i, j, k, eval_expr(e, p));
        }
        g.validate();
        Presentation pb = pbw_presentation(g, M);
        auto rw = CommutationSystem::detect(pb, 0);
        if (!rw) throw ValidationError("realization " + r.label + " has no confluent rewriting");
        Realization R{r.label, rw, {}};
        for (std::size_t i = 0; i < f.gens.size(); ++i) {
            if (!r.images.count(static_cast<int>(i)))
                throw ParseError("realization " + r.label + " lacks an image of " + f.gens[i]);
            R.images.push_back(eval_terms<1>(r.images.at(static_cast<int>(i)), g.dim(), M, p));
        }
        out.push_back(std::move(R));
    }
    return out;
}

struct LieFile {
    std::string name = "lie";
    LieAlgebra g;
    std::optional<Mat> levi, subalgebra;
};

inline LieFile parse_lie(std::istream& in, const std::string& source = "input", const ParamMap& params = {}) {
    LieFile f;
    int dim = -1;
    std::vector<std::string> names;
    std::vector<std::tuple<int, int, int, cplx>> br;
    std::vector<Vec> rows;
    std::string block;
    std::vector<Vec> levi_rows, sub_rows;
    bool have_levi = false, have_sub = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        auto t = detail::split_ws(line);
        if (t.empty()) continue;
        auto where = source + ":" + std::to_string(lineno) + ": ";
        try {
            if (!block.empty()) {
                if (t[0] == "end") {
                    (block == "levi" ? levi_rows : sub_rows) = rows;
                    rows.clear();
                    block.clear();
                } else if (t[0] == "v") {
                    if (dim < 0) throw ParseError("dim must precede vectors");
                    if (static_cast<int>(t.size()) != dim + 1) throw ParseError("vector needs " + std::to_string(dim) + " entries");
                    Vec v(dim);
                    for (int i = 0; i < dim; ++i) v(i) = eval_expr(t[i + 1], params);
                    rows.push_back(v);
                } else throw ParseError("expected 'v' or 'end'");
                continue;
            }
            if (t[0] == "lie") f.name = t.size() > 1 ? t[1] : f.name;
            else if (t[0] == "dim") dim = std::stoi(t.at(1));
            else if (t[0] == "names") names.assign(t.begin() + 1, t.end());
            else if (t[0] == "c") {
                if (t.size() != 5) throw ParseError("expected 'c i j k EXPR'");
                br.emplace_back(std::stoi(t[1]) - 1, std::stoi(t[2]) - 1, std::stoi(t[3]) - 1, eval_expr(t[4], params));
            } else if (t[0] == "levi" || t[0] == "subalgebra") {
                block = t[0];
                (block == "levi" ? have_levi : have_sub) = true;
            } else throw ParseError("unknown directive '" + t[0] + "'");
        } catch (const ParseError& e) {
            throw ParseError(where + e.what());
        } catch (const std::logic_error&) {
            throw ParseError(where + "bad number");
        }
    }
    if (!block.empty()) throw ParseError(source + ": block '" + block + "' lacks 'end'");
    if (dim <= 0) throw ParseError(source + ": missing dim");
    f.g = LieAlgebra(dim, names);
    for (auto& [i, j, k, c] : br) {
        if (std::min({i, j, k}) < 0 || std::max({i, j, k}) >= dim) throw ParseError(source + ": bracket index out of range");
        if (i == j) throw ParseError(source + ": [e_i, e_i] must vanish");
        f.g.set(i, j, k, f.g.sc(i, j, k) + c);
    }
    f.g.validate();
    auto to_mat = [dim](const std::vector<Vec>& r) {
        Mat M(dim, static_cast<int>(r.size()));
        for (std::size_t j = 0; j < r.size(); ++j) M.col(static_cast<int>(j)) = r[j];
        return M;
    };
    if (have_levi) f.levi = to_mat(levi_rows);
    if (have_sub) f.subalgebra = to_mat(sub_rows);
    return f;
}

inline LieFile load_lie_file(const std::string& path, const ParamMap& params = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return parse_lie(in, path, params);
}

// ---------------------------------------------------------------------------
// Reports: one JSON object, keys in insertion order, reals as strings with
// 15 significant digits so that output is byte-stable.

using Report = nlohmann::ordered_json;

inline std::string num(double x) { return fmt_real(x); }
inline std::string num(cplx z) { return fmt_cplx(z); }

inline Report to_report(const VerificationReport& r) {
    Report j;
    j["name"] = r.name;
    j["backend"] = r.backend;
    j["trunc"] = r.trunc;
    j["work_trunc"] = r.work_trunc;
    j["tol"] = num(r.tol);
    Report params = Report::object();
    for (auto& [k, v] : r.params) params[k] = num(v);
    j["params"] = params;
    Report dims = Report::object();
    for (auto& [k, v] : r.dims) dims[k] = num(v);
    j["dims"] = dims;
    j["collapsed"] = r.collapsed;
    j["vacuous"] = r.vacuous();
    j["max_residual"] = num(r.max_residual());
    Report checks = Report::array();
    for (auto& c : r.checks) checks.push_back({{"axiom", c.axiom}, {"item", c.item}, {"residual", num(c.residual)}, {"pass", c.pass}});
    j["checks"] = checks;
    j["pass"] = r.pass() && !r.vacuous();
    return j;
}

inline std::string render_series(const NCSeries& a, const std::vector<std::string>& names) {
    return render(a, &names);
}

}  // namespace hfg
