#pragma once

// Finitely generated groups and semigroups at desk scale: word lengths by
// shortest paths on Cayley balls, and the matrix realization of ℤ₂∗ℤ₂.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "core.hpp"
#include "norms.hpp"

namespace hfg {

// Canonical normal form of an element; its meaning depends on the group.
using Elem = std::vector<long long>;

struct FinGenGroup {
    std::string name;
    std::vector<std::string> gen_names;
    std::vector<Elem> gens;  // semigroup generators s_1, s_2, ...
    Elem identity;
    std::function<Elem(const Elem&, const Elem&)> mul;
    std::function<std::string(const Elem&)> show;

    int ngens() const { return static_cast<int>(gens.size()); }

    Elem word(const std::vector<int>& letters) const {
        Elem e = identity;
        for (int l : letters) e = mul(e, gens.at(l));
        return e;
    }
};

inline std::string show_vector(const Elem& e) {
    std::string s = "(";
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s + ")";
}

// Free monoid on n letters; elements are letter sequences.
inline FinGenGroup free_monoid(int n) {
    FinGenGroup G;
    G.name = "free" + std::to_string(n);
    for (int i = 0; i < n; ++i) {
        G.gen_names.push_back("s" + std::to_string(i + 1));
        G.gens.push_back({i});
    }
    G.mul = [](const Elem& a, const Elem& b) {
        Elem c = a;
        c.insert(c.end(), b.begin(), b.end());
        return c;
    };
    G.show = [names = G.gen_names](const Elem& e) {
        if (e.empty()) return std::string("1");
        std::string s;
        for (auto l : e) s += (s.empty() ? "" : "*") + names[l];
        return s;
    };
    return G;
}

// ℤ^k with semigroup generators e_1, -e_1, e_2, -e_2, ...
inline FinGenGroup integer_lattice(int k) {
    FinGenGroup G;
    G.name = "Z" + std::to_string(k);
    G.identity.assign(k, 0);
    for (int i = 0; i < k; ++i)
        for (int sgn : {1, -1}) {
            Elem e(k, 0);
            e[i] = sgn;
            G.gens.push_back(e);
            G.gen_names.push_back((sgn > 0 ? "e" : "-e") + std::to_string(i + 1));
        }
    G.mul = [](const Elem& a, const Elem& b) {
        Elem c = a;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
        return c;
    };
    G.show = show_vector;
    return G;
}

// Finite monoid or group from a multiplication table, element 0 the identity.
inline FinGenGroup table_group(std::string name, std::vector<std::vector<int>> table, std::vector<int> gens,
                               std::vector<std::string> elem_names = {}) {
    const int n = static_cast<int>(table.size());
    for (auto& row : table)
        if (static_cast<int>(row.size()) != n) throw ValidationError("multiplication table is not square");
    for (int a = 0; a < n; ++a)
        if (table[0][a] != a || table[a][0] != a) throw ValidationError("element 0 is not the identity");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) throw ValidationError("table is not associative");
    if (elem_names.empty())
        for (int a = 0; a < n; ++a) elem_names.push_back(a ? "g" + std::to_string(a) : "e");
    FinGenGroup G;
    G.name = std::move(name);
    G.identity = {0};
    for (int g : gens) {
        if (g < 0 || g >= n) throw ValidationError("generator out of range");
        G.gens.push_back({g});
        G.gen_names.push_back(elem_names[g]);
    }
    G.mul = [table](const Elem& a, const Elem& b) { return Elem{table[a[0]][b[0]]}; };
    G.show = [elem_names](const Elem& e) { return elem_names[e[0]]; };
    return G;
}

// ℤ₂∗ℤ₂ = ⟨u, v | u² = v² = 1⟩. Normal form (ε, n) stands for u^ε w^n with
// w = uv, using u w u = w^{-1}.
inline Elem z2z2_mul(const Elem& a, const Elem& b) {
    long long n = (b[0] ? -a[1] : a[1]) + b[1];
    return {(a[0] + b[0]) % 2, n};
}

inline std::string z2z2_show(const Elem& e) {
    std::string w = e[1] == 0 ? "" : (e[1] == 1 ? "w" : "w^" + std::to_string(e[1]));
    if (e[0]) return w.empty() ? "u" : "u*" + w;
    return w.empty() ? "1" : w;
}

// Generators u, v by default; {u, w, w^{-1}} with the second flag.
inline FinGenGroup z2z2(bool uw_generators = false) {
    FinGenGroup G;
    G.name = "z2z2";
    G.identity = {0, 0};
    if (uw_generators) {
        G.gens = {{1, 0}, {0, 1}, {0, -1}};
        G.gen_names = {"u", "w", "w^-1"};
    } else {
        G.gens = {{1, 0}, {1, 1}};  // v = u w
        G.gen_names = {"u", "v"};
    }
    G.mul = z2z2_mul;
    G.show = z2z2_show;
    return G;
}

inline constexpr std::size_t kBallCap = 100000;

// Cayley ball grown by Dijkstra from the identity, edges s ↦ s·s_i of weight F(i).
// Grown lazily up to a node cap.
class CayleyBall {
public:
    CayleyBall(const FinGenGroup& G, std::vector<double> weights = {}, std::size_t cap = kBallCap,
               double radius = std::numeric_limits<double>::infinity())
        : G_(G), w_(std::move(weights)), cap_(cap), radius_(radius) {
        if (w_.empty()) w_.assign(G.ngens(), 1.0);
        if (static_cast<int>(w_.size()) != G.ngens()) throw DimensionError("one weight per generator");
        for (double x : w_)
            if (!(x >= 0)) throw ParameterError("generator weights must be non-negative");
        tentative_[G.identity] = 0;
        heap_.push({0, G.identity});
    }

    // ℓ_F(g); throws when the capped ball is exhausted first.
    double distance(const Elem& g) {
        if (auto it = settled_.find(g); it != settled_.end()) return it->second;
        while (!heap_.empty()) {
            if (heap_.top().first > radius_) break;
            auto [d, x] = heap_.top();
            heap_.pop();
            if (settled_.count(x)) continue;
            settled_[x] = d;
            bool hit = x == g;
            if (settled_.size() < cap_) {
                for (int i = 0; i < G_.ngens(); ++i) {
                    Elem y = G_.mul(x, G_.gens[i]);
                    double nd = d + w_[i];
                    if (settled_.count(y)) continue;
                    auto t = tentative_.find(y);
                    if (t != tentative_.end() && t->second <= nd) continue;
                    tentative_[y] = nd;
                    heap_.push({nd, std::move(y)});
                }
            }
            if (hit) return d;
        }
        throw UnreachableError(G_.show(g) + " not reached within the ball (" + std::to_string(settled_.size()) +
                               " nodes, radius " + fmt_real(reached_radius()) + ")");
    }

    bool reachable(const Elem& g) {
        try {
            distance(g);
            return true;
        } catch (const UnreachableError&) {
            return false;
        }
    }

    std::size_t size() const { return settled_.size(); }
    double reached_radius() const {
        double r = 0;
        for (auto& [e, d] : settled_) r = std::max(r, d);
        return r;
    }
    const std::map<Elem, double>& settled() const { return settled_; }

private:
    using Node = std::pair<double, Elem>;
    const FinGenGroup& G_;
    std::vector<double> w_;
    std::size_t cap_;
    double radius_;
    std::map<Elem, double> settled_, tentative_;
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap_;
};

inline long long length(const FinGenGroup& G, const Elem& g, std::size_t cap = kBallCap) {
    CayleyBall B(G, {}, cap);
    return std::llround(B.distance(g));
}

inline double length_F(const FinGenGroup& G, const Elem& g, const std::vector<double>& F,
                       std::size_t cap = kBallCap) {
    CayleyBall B(G, F, cap);
    return B.distance(g);
}

struct ArbtWitness {
    std::vector<double> F;       // F(n) for n = 1..horizon
    std::vector<double> ell;     // ℓ_F(s_n)
    bool verified = false;
};

// F(n) = max{C_1..C_n} + 1, so min{F(m) : m ≥ n} > C_n, and check ℓ_F(s_n) > C_n.
// The chain condition s_n ∉ S_{n-1} is checked on words of length <= depth.
inline ArbtWitness arbtCnF_witness(const FinGenGroup& G, const std::vector<double>& C, int horizon, int depth = 8,
                                   std::size_t cap = kBallCap) {
    if (horizon < 1 || horizon > G.ngens()) throw ParameterError("horizon must be between 1 and the generator count");
    if (static_cast<int>(C.size()) < horizon) throw DimensionError("need C_n for n up to the horizon");
    FinGenGroup W = G;
    W.gens.resize(horizon);
    W.gen_names.resize(horizon);
    for (int n = 1; n < horizon; ++n) {
        FinGenGroup sub = W;
        sub.gens.resize(n);
        CayleyBall B(sub, {}, cap, depth);
        if (B.reachable(W.gens[n]))
            throw ValidationError("chain condition fails: " + W.gen_names[n] + " lies in the semigroup of earlier generators");
    }
    ArbtWitness out;
    double m = -std::numeric_limits<double>::infinity();
    for (int n = 0; n < horizon; ++n) {
        m = std::max(m, C[n]);
        out.F.push_back(std::max(m + 1, 0.0));
    }
    CayleyBall B(W, out.F, cap);
    out.verified = true;
    for (int n = 0; n < horizon; ++n) {
        out.ell.push_back(B.distance(W.gens[n]));
        if (!(out.ell.back() > C[n])) out.verified = false;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Group algebra and the realization of ℂ[ℤ₂∗ℤ₂] in M₂(ℂ[z, z⁻¹]).

using GroupAlgebraElement = std::map<Elem, cplx>;

inline GroupAlgebraElement convolve(const FinGenGroup& G, const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
    GroupAlgebraElement out;
    for (const auto& [x, c] : a)
        for (const auto& [y, d] : b) out[G.mul(x, y)] += c * d;
    for (auto it = out.begin(); it != out.end();) it = it->second == cplx{} ? out.erase(it) : std::next(it);
    return out;
}

using Laurent = std::map<long long, cplx>;
using LaurentMatrix = std::array<Laurent, 4>;  // row-major 2×2

inline Laurent laurent_mul(const Laurent& f, const Laurent& g) {
    Laurent h;
    for (auto& [i, a] : f)
        for (auto& [j, b] : g) h[i + j] += a * b;
    return h;
}

inline void laurent_add(Laurent& f, const Laurent& g) {
    for (auto& [i, a] : g) f[i] += a;
}

inline LaurentMatrix matmul(const LaurentMatrix& A, const LaurentMatrix& B) {
    LaurentMatrix C;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) laurent_add(C[2 * i + j], laurent_mul(A[2 * i + k], B[2 * k + j]));
    return C;
}

inline LaurentMatrix z2z2_phi(const GroupAlgebraElement& a) {
    LaurentMatrix M;
    for (const auto& [g, c] : a) {
        long long n = g[1];
        if (g[0] == 0) {
            M[0][n] += c;
            M[3][-n] += c;
        } else {
            M[1][-n] += c;
            M[2][n] += c;
        }
    }
    return M;
}

inline double laurent_norm(const Laurent& f, double rho) {
    require_positive(rho, "rho");
    CompensatedSum s;
    for (auto& [n, a] : f) s.add(weighted(a, static_cast<double>(std::llabs(n)) * std::log(rho)));
    return s.value();
}

inline double matrix_norm(const LaurentMatrix& M, double rho) {
    CompensatedSum s;
    for (auto& f : M) s.add(laurent_norm(f, rho));
    return s.value();
}

// 2 Σ_n (|a_n| + |b_n|) ρ^{|n|}
inline double z2z2_norm_closed(const GroupAlgebraElement& a, double rho) {
    CompensatedSum s;
    for (const auto& [g, c] : a) s.add(2 * weighted(c, static_cast<double>(std::llabs(g[1])) * std::log(rho)));
    return s.value();
}

inline Laurent check(const Laurent& f) {
    Laurent g;
    for (auto& [n, a] : f) g[-n] = a;
    return g;
}

// (f11 f12; f21 f22) ↦ (f̌22 f̌21; f̌12 f̌11), f̌(z) = f(1/z)
inline LaurentMatrix sigma(const LaurentMatrix& M) { return {check(M[3]), check(M[2]), check(M[1]), check(M[0])}; }

inline double laurent_distance(const LaurentMatrix& A, const LaurentMatrix& B) {
    double m = 0;
    for (int e = 0; e < 4; ++e) {
        Laurent d = A[e];
        for (auto& [n, b] : B[e]) d[n] -= b;
        for (auto& [n, v] : d) m = std::max(m, std::abs(v));
    }
    return m;
}

using Mat2 = std::array<cplx, 4>;

inline Mat2 evaluate(const LaurentMatrix& M, cplx z0) {
    if (std::abs(z0) == 0) throw ParameterError("evaluation at z = 0: pole of a Laurent polynomial");
    Mat2 out{};
    for (int e = 0; e < 4; ++e)
        for (auto& [n, a] : M[e]) out[e] += a * std::pow(z0, static_cast<int>(n));
    return out;
}

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

inline const Mat2 kUMatrix{0.0, 1.0, 1.0, 0.0};

// Largest entry of [A, u].
inline double commutator_with_u(const Mat2& A) {
    Mat2 l = mat2_mul(A, kUMatrix), r = mat2_mul(kUMatrix, A);
    double m = 0;
    for (int e = 0; e < 4; ++e) m = std::max(m, std::abs(l[e] - r[e]));
    return m;
}

// Random element Σ a_n w^n + b_n u w^n with |n| <= span and `terms` entries.
inline GroupAlgebraElement random_z2z2_element(std::mt19937_64& rng, int terms = 6, int span = 5) {
    std::uniform_int_distribution<int> eps(0, 1), n(-span, span);
    std::uniform_real_distribution<double> c(-1, 1);
    GroupAlgebraElement a;
    for (int t = 0; t < terms; ++t) a[{eps(rng), n(rng)}] += cplx(c(rng), c(rng));
    return a;
}

}  // namespace hfg
