#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "presentation.hpp"
#include "series.hpp"

namespace hfg {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// ---------------------------------------------------------------------------
// Subspaces of C^m, stored as matrices whose columns span them.

inline int numeric_rank(const Mat& A, double tol = kRankTol) {
    if (A.cols() == 0 || A.rows() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(A);
    auto s = svd.singularValues();
    double scale = std::max(1.0, s.size() ? s(0) : 0.0);
    int r = 0;
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol * scale) ++r;
    return r;
}

// Orthonormal basis of the column space.
inline Mat orth(const Mat& A, double tol = kRankTol) {
    if (A.cols() == 0) return Mat(A.rows(), 0);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU);
    int r = numeric_rank(A, tol);
    return svd.matrixU().leftCols(r);
}

inline Mat hcat(const Mat& A, const Mat& B) {
    Mat C(std::max(A.rows(), B.rows()), A.cols() + B.cols());
    C << A, B;
    return C;
}

inline Mat span_sum(const Mat& A, const Mat& B, double tol = kRankTol) { return orth(hcat(A, B), tol); }

// Orthonormal basis of the null space of A.
inline Mat null_space(const Mat& A, double tol = kRankTol) {
    const int n = static_cast<int>(A.cols());
    if (A.rows() == 0) return Mat::Identity(n, n);
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    int r = numeric_rank(A, tol);
    return svd.matrixV().rightCols(n - r);
}

// Max distance of the columns of B from span(A).
inline double containment_residual(const Mat& A, const Mat& B) {
    if (B.cols() == 0) return 0;
    Mat Q = orth(A);
    Mat R = B - Q * (Q.adjoint() * B);
    double m = 0;
    for (int j = 0; j < R.cols(); ++j) m = std::max(m, R.col(j).norm() / std::max(1.0, B.col(j).norm()));
    return m;
}

inline bool same_subspace(const Mat& A, const Mat& B, double tol = kRankTol) {
    return numeric_rank(A, tol) == numeric_rank(B, tol) && containment_residual(A, B) < tol &&
           containment_residual(B, A) < tol;
}

inline Mat intersect(const Mat& A, const Mat& B, double tol = kRankTol) {
    Mat QA = orth(A, tol), QB = orth(B, tol);
    if (QA.cols() == 0 || QB.cols() == 0) return Mat(A.rows(), 0);
    Mat N = null_space(hcat(QA, -QB), tol);
    return orth(QA * N.topRows(QA.cols()), tol);
}

// Canonical spanning set: reduced row echelon form of the transposed basis,
// pivots chosen in original coordinate order.
inline Mat canonical_basis(const Mat& A, double tol = kRankTol) {
    Mat Q = orth(A, tol);
    Mat R = Q.transpose();  // rows span the subspace
    const int r = static_cast<int>(R.rows()), m = static_cast<int>(R.cols());
    int row = 0;
    for (int col = 0; col < m && row < r; ++col) {
        int best = row;
        for (int i = row + 1; i < r; ++i)
            if (std::abs(R(i, col)) > std::abs(R(best, col))) best = i;
        if (std::abs(R(best, col)) < tol) continue;
        R.row(row).swap(R.row(best));
        R.row(row) /= R(row, col);
        for (int i = 0; i < r; ++i)
            if (i != row) R.row(i) -= R(i, col) * R.row(row);
        ++row;
    }
    Mat out = R.topRows(row).transpose();
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j)
            if (std::abs(out(i, j)) < kDropTol) out(i, j) = 0;
    return out;
}

// ---------------------------------------------------------------------------

class LieAlgebra {
public:
    LieAlgebra() = default;
    explicit LieAlgebra(int m, std::vector<std::string> names = {}) : m_(m), names_(std::move(names)),
        c_(static_cast<std::size_t>(m) * m * m) {
        if (names_.empty())
            for (int i = 0; i < m; ++i) names_.push_back("e" + std::to_string(i + 1));
        if (static_cast<int>(names_.size()) != m) throw DimensionError("basis name count");
    }

    int dim() const { return m_; }
    const std::vector<std::string>& names() const { return names_; }

    // 0-based; sets c_ij^k and c_ji^k = -c_ij^k.
    void set(int i, int j, int k, cplx v) {
        at(i, j, k) = v;
        at(j, i, k) = -v;
    }
    cplx sc(int i, int j, int k) const { return c_[(static_cast<std::size_t>(i) * m_ + j) * m_ + k]; }

    Vec basis_vec(int i) const {
        Vec v = Vec::Zero(m_);
        v(i) = 1;
        return v;
    }

    Vec bracket(const Vec& x, const Vec& y) const {
        Vec r = Vec::Zero(m_);
        for (int i = 0; i < m_; ++i) {
            if (x(i) == cplx{}) continue;
            for (int j = 0; j < m_; ++j) {
                cplx s = x(i) * y(j);
                if (s == cplx{}) continue;
                for (int k = 0; k < m_; ++k) r(k) += s * sc(i, j, k);
            }
        }
        return r;
    }

    Mat ad(const Vec& x) const {
        Mat A(m_, m_);
        for (int j = 0; j < m_; ++j) A.col(j) = bracket(x, basis_vec(j));
        return A;
    }

    Mat killing() const {
        std::vector<Mat> ads;
        for (int i = 0; i < m_; ++i) ads.push_back(ad(basis_vec(i)));
        Mat K(m_, m_);
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j) K(i, j) = (ads[i] * ads[j]).trace();
        return K;
    }

    double antisymmetry_residual() const {
        double r = 0;
        for (int i = 0; i < m_; ++i)
            for (int j = 0; j < m_; ++j)
                for (int k = 0; k < m_; ++k) r = std::max(r, std::abs(sc(i, j, k) + sc(j, i, k)));
        return r;
    }

    double jacobi_residual(const Vec& x, const Vec& y, const Vec& z) const {
        Vec j = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y));
        return j.cwiseAbs().maxCoeff();
    }

    double jacobi_residual() const {
        double r = 0;
        for (int a = 0; a < m_; ++a)
            for (int b = a + 1; b < m_; ++b)
                for (int c = b + 1; c < m_; ++c)
                    r = std::max(r, jacobi_residual(basis_vec(a), basis_vec(b), basis_vec(c)));
        return r;
    }

    void validate(double tol = kRankTol) const {
        if (antisymmetry_residual() > tol) throw ValidationError("structure constants not antisymmetric");
        if (jacobi_residual() > tol) throw ValidationError("Jacobi identity fails");
    }

    // span{[x, y] : x in A, y in B}
    Mat bracket_space(const Mat& A, const Mat& B) const {
        Mat out(m_, A.cols() * B.cols());
        int c = 0;
        for (int i = 0; i < A.cols(); ++i)
            for (int j = 0; j < B.cols(); ++j) out.col(c++) = bracket(A.col(i), B.col(j));
        return orth(out);
    }

    Mat whole() const { return Mat::Identity(m_, m_); }

private:
    cplx& at(int i, int j, int k) { return c_[(static_cast<std::size_t>(i) * m_ + j) * m_ + k]; }

    int m_ = 0;
    std::vector<std::string> names_;
    std::vector<cplx> c_;
};

// ---------------------------------------------------------------------------
// Filtrations and F-bases.

struct Filtration {
    std::vector<Mat> terms;  // terms[0] = g_1
    std::vector<int> dims() const {
        std::vector<int> d;
        for (auto& t : terms) d.push_back(static_cast<int>(t.cols()));
        return d;
    }
};

// Starting from sub (an ideal-like subspace X), X_1 = X, X_{i+1} = [X, X_i];
// stops at the first repeated dimension. For the whole algebra this is the
// lower central series; the last dimension is the stable one.
inline Filtration central_series_of(const LieAlgebra& g, const Mat& sub) {
    Filtration f;
    Mat X = orth(sub);
    f.terms.push_back(X);
    Mat cur = X;
    while (cur.cols() > 0) {
        Mat next = g.bracket_space(X, cur);
        if (next.cols() == cur.cols()) break;
        f.terms.push_back(next);
        cur = next;
    }
    if (cur.cols() == 0) return f;
    return f;
}

inline Filtration lower_central_series(const LieAlgebra& g) { return central_series_of(g, g.whole()); }

inline double filtration_residual(const LieAlgebra& g, const Filtration& f) {
    double r = 0;
    for (std::size_t i = 0; i + 1 < f.terms.size(); ++i)
        r = std::max(r, containment_residual(f.terms[i + 1], g.bracket_space(g.whole(), f.terms[i])));
    return r;
}

inline bool is_nilpotent(const LieAlgebra& g) {
    auto f = lower_central_series(g);
    return f.terms.back().cols() == 0;
}

struct WeightData {
    Mat basis;               // columns e_1..e_m of the F-basis, in weight order
    std::vector<int> weights;  // non-decreasing
    int weight_of(const std::vector<int>& alpha) const {
        if (alpha.size() != weights.size()) throw DimensionError("multi-index length");
        int w = 0;
        for (std::size_t i = 0; i < alpha.size(); ++i) w += weights[i] * alpha[i];
        return w;
    }
};

inline WeightData f_basis(const LieAlgebra& g) {
    auto lcs = lower_central_series(g);
    if (lcs.terms.back().cols() != 0) throw UnsupportedInput("F-basis requires a nilpotent Lie algebra");
    const int m = g.dim();
    const int depth = static_cast<int>(lcs.terms.size()) - 1;  // terms[depth] = 0
    std::vector<std::pair<int, Vec>> chosen;
    Mat acc(m, 0);
    for (int j = depth; j >= 1; --j) {
        Mat cand = canonical_basis(lcs.terms[j - 1]);
        std::vector<Vec> level;
        for (int c = 0; c < cand.cols(); ++c) {
            Mat trial = hcat(acc, cand.col(c));
            if (numeric_rank(trial) > acc.cols()) {
                acc = trial;
                level.push_back(cand.col(c));
            }
        }
        for (auto& v : level) chosen.emplace_back(j, v);
    }
    std::stable_sort(chosen.begin(), chosen.end(), [](auto& a, auto& b) { return a.first < b.first; });
    WeightData wd;
    wd.basis = Mat(m, m);
    for (int i = 0; i < m; ++i) {
        wd.basis.col(i) = chosen[i].second;
        wd.weights.push_back(chosen[i].first);
    }
    return wd;
}

// Checks g_j = span{e_i : w_i >= j} and w_i = max{j : e_i in g_j}.
inline double weight_invariant_residual(const LieAlgebra& g, const WeightData& wd) {
    auto lcs = lower_central_series(g);
    double r = 0;
    const int m = g.dim();
    for (std::size_t j = 1; j <= lcs.terms.size(); ++j) {
        Mat sub(m, 0);
        for (int i = 0; i < m; ++i)
            if (wd.weights[i] >= static_cast<int>(j)) sub = hcat(sub, wd.basis.col(i));
        const Mat& gj = lcs.terms[j - 1];
        if (numeric_rank(sub) != gj.cols()) r = std::max(r, 1.0);
        r = std::max(r, containment_residual(gj, sub));
        r = std::max(r, containment_residual(sub, gj));
    }
    for (int i = 0; i < m; ++i) {
        int w = 0;
        for (std::size_t j = 1; j <= lcs.terms.size(); ++j)
            if (containment_residual(lcs.terms[j - 1], wd.basis.col(i)) < kRankTol) w = static_cast<int>(j);
        if (w != wd.weights[i]) r = std::max(r, 1.0);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Free nilpotent Lie algebras over a Hall basis.

inline long witt(int k, int d) {
    // (1/d) Σ_{e|d} μ(e) k^{d/e}
    auto mobius = [](int n) {
        int r = 1;
        for (int p = 2; p * p <= n; ++p)
            if (n % p == 0) {
                n /= p;
                if (n % p == 0) return 0;
                r = -r;
            }
        return n > 1 ? -r : r;
    };
    long s = 0;
    for (int e = 1; e <= d; ++e)
        if (d % e == 0) {
            long p = 1;
            for (int i = 0; i < d / e; ++i) p *= k;
            s += mobius(e) * p;
        }
    return s / d;
}

struct HallBasis {
    int k = 0, c = 0;
    std::vector<int> weight;
    std::vector<int> left, right;  // -1 for letters; element = [left, right]
    std::map<std::pair<int, int>, int> index;

    std::string name(int i) const {
        if (left[i] < 0) return "x" + std::to_string(i + 1);
        return "[" + name(left[i]) + "," + name(right[i]) + "]";
    }
};

// Basic commutators: [u, v] with u > v, weights adding, and if u = [y, z]
// then z <= v. Order: weight, then generation order.
inline HallBasis hall_basis(int k, int c) {
    HallBasis h;
    h.k = k;
    h.c = c;
    for (int i = 0; i < k; ++i) {
        h.weight.push_back(1);
        h.left.push_back(-1);
        h.right.push_back(-1);
    }
    for (int n = 2; n <= c; ++n) {
        int count = static_cast<int>(h.weight.size());
        for (int u = 0; u < count; ++u)
            for (int v = 0; v < u; ++v) {
                if (h.weight[u] + h.weight[v] != n) continue;
                if (h.left[u] >= 0 && h.right[u] > v) continue;
                h.index[{u, v}] = static_cast<int>(h.weight.size());
                h.weight.push_back(n);
                h.left.push_back(u);
                h.right.push_back(v);
            }
    }
    return h;
}

using LieVec = std::map<int, cplx>;

class HallRewriter {
public:
    explicit HallRewriter(const HallBasis& h) : h_(h) {}

    LieVec bracket(int a, int b) {
        if (a == b) return {};
        if (h_.weight[a] + h_.weight[b] > h_.c) return {};
        auto key = std::make_pair(a, b);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        LieVec out;
        if (a < b) {
            for (auto& [i, v] : bracket(b, a)) out[i] -= v;
        } else if (h_.left[a] < 0 || h_.right[a] <= b) {
            out[h_.index.at(key)] = 1.0;
        } else {
            // [[y,z],b] = [[y,b],z] + [y,[z,b]]
            int y = h_.left[a], z = h_.right[a];
            add(out, bracket(bracket(y, b), z));
            add(out, bracket(y, bracket(z, b)));
        }
        clean(out);
        memo_[key] = out;
        return out;
    }

    LieVec bracket(const LieVec& x, int b) {
        LieVec out;
        for (auto& [i, v] : x) add(out, bracket(i, b), v);
        return out;
    }
    LieVec bracket(int a, const LieVec& y) {
        LieVec out;
        for (auto& [j, v] : y) add(out, bracket(a, j), v);
        return out;
    }

private:
    static void add(LieVec& acc, const LieVec& x, cplx s = 1.0) {
        for (auto& [i, v] : x) acc[i] += s * v;
    }
    static void clean(LieVec& x) {
        for (auto it = x.begin(); it != x.end();) it = std::abs(it->second) < kDropTol ? x.erase(it) : std::next(it);
    }

    const HallBasis& h_;
    std::map<std::pair<int, int>, LieVec> memo_;
};

inline LieAlgebra free_nilpotent(int k, int c, HallBasis* out_basis = nullptr) {
    if (k < 1 || c < 1) throw ParameterError("free nilpotent algebra needs k >= 1, c >= 1");
    long total = 0;
    for (int d = 1; d <= c; ++d) total += witt(k, d);
    if (total > 2000) throw ParameterError("free nilpotent algebra too large (dimension " + std::to_string(total) + ")");
    HallBasis h = hall_basis(k, c);
    HallRewriter rw(h);
    const int m = static_cast<int>(h.weight.size());
    std::vector<std::string> names;
    for (int i = 0; i < m; ++i) names.push_back("e" + std::to_string(i + 1));
    LieAlgebra g(m, names);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < a; ++b)
            for (auto& [i, v] : rw.bracket(a, b)) g.set(a, b, i, v);
    if (out_basis) *out_basis = h;
    return g;
}

// ---------------------------------------------------------------------------
// Enveloping algebra: presentation and PBW rewriting.

inline Presentation pbw_presentation(const LieAlgebra& g, int N) {
    const int m = g.dim();
    Presentation p(m, N, g.names());
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            NCSeries r = p.gen(j) * p.gen(i) - p.gen(i) * p.gen(j);
            for (int k = 0; k < m; ++k) {
                cplx c = g.sc(j, i, k);
                if (c != cplx{}) r -= p.gen(k) * c;
            }
            p.add_relator(r, false, {}, "[" + g.names()[j] + "," + g.names()[i] + "]");
        }
    return p;
}

using MultiIndex = std::vector<int>;
using PBWCoeffs = std::map<MultiIndex, cplx>;

class PBWRewriter {
public:
    PBWRewriter(const LieAlgebra& g, int N) : g_(g), N_(N) {}

    // Normal form of a word as ordered monomials e_1^{a_1}...e_m^{a_m}.
    const std::map<Word, cplx>& word_nf(const Word& w) {
        if (auto it = memo_.find(w); it != memo_.end()) return it->second;
        std::map<Word, cplx> out;
        std::size_t p = 0;
        while (p + 1 < w.size() && static_cast<unsigned char>(w[p]) <= static_cast<unsigned char>(w[p + 1])) ++p;
        if (p + 1 >= w.size()) {
            out[w] = 1.0;
        } else {
            // e_j e_i -> e_i e_j + [e_j, e_i],  j > i
            int j = static_cast<unsigned char>(w[p]), i = static_cast<unsigned char>(w[p + 1]);
            Word swapped = w;
            std::swap(swapped[p], swapped[p + 1]);
            for (auto& [u, c] : word_nf(swapped)) out[u] += c;
            for (int k = 0; k < g_.dim(); ++k) {
                cplx c = g_.sc(j, i, k);
                if (c == cplx{}) continue;
                Word shorter = w.substr(0, p) + static_cast<char>(k) + w.substr(p + 2);
                for (auto& [u, d] : word_nf(shorter)) out[u] += c * d;
            }
            for (auto it = out.begin(); it != out.end();)
                it = std::abs(it->second) < kDropTol ? out.erase(it) : std::next(it);
        }
        return memo_.emplace(w, std::move(out)).first->second;
    }

    MultiIndex alpha_of(const Word& w) const {
        MultiIndex a(g_.dim(), 0);
        for (unsigned char l : w) a[l]++;
        return a;
    }

    Word word_of(const MultiIndex& a) const {
        Word w;
        for (int i = 0; i < g_.dim(); ++i) w += Word(a[i], static_cast<char>(i));
        return w;
    }

    PBWCoeffs normal_form(const NCSeries& a) {
        std::map<Word, cplx> acc;
        for (const auto& [k, c] : a.terms()) {
            if (static_cast<int>(k[0].size()) > N_) continue;
            for (auto& [u, d] : word_nf(k[0])) acc[u] += c * d;
        }
        PBWCoeffs out;
        for (auto& [u, c] : acc)
            if (std::abs(c) >= kDropTol) out[alpha_of(u)] = c;
        return out;
    }

private:
    LieAlgebra g_;
    int N_;
    std::map<Word, std::map<Word, cplx>> memo_;
};

inline PBWCoeffs pbw_normal_form(const LieAlgebra& g, const NCSeries& a, int N) {
    PBWRewriter rw(g, N);
    return rw.normal_form(a);
}

inline double pbw_monomial_count(int m, int N) {
    // C(N+m, m)
    double c = 1;
    for (int i = 1; i <= m; ++i) c = c * (N + i) / i;
    return c;
}

// ---------------------------------------------------------------------------
// Radicals.

inline Mat derived_algebra(const LieAlgebra& g) { return g.bracket_space(g.whole(), g.whole()); }

inline bool is_solvable_subalgebra(const LieAlgebra& g, const Mat& S) {
    Mat cur = orth(S);
    while (cur.cols() > 0) {
        Mat next = g.bracket_space(cur, cur);
        if (next.cols() == cur.cols()) return false;
        cur = next;
    }
    return true;
}

inline bool is_subalgebra(const LieAlgebra& g, const Mat& S) {
    return containment_residual(S, g.bracket_space(S, S)) < kRankTol;
}

inline bool is_ideal(const LieAlgebra& g, const Mat& S) {
    return containment_residual(S, g.bracket_space(g.whole(), S)) < kRankTol;
}

// rad = {x : K(x, [g,g]) = 0}
inline Mat solvable_radical(const LieAlgebra& g) {
    Mat D = derived_algebra(g);
    Mat K = g.killing();
    Mat R = null_space(D.transpose() * K);
    if (!is_solvable_subalgebra(g, R)) throw ValidationError("Killing-form radical is not solvable at tolerance");
    return orth(R);
}

// Smallest ideal containing V.
inline Mat ideal_closure(const LieAlgebra& g, const Mat& V) {
    Mat cur = orth(V);
    while (true) {
        Mat next = span_sum(cur, g.bracket_space(g.whole(), cur));
        if (next.cols() == cur.cols()) return cur;
        cur = next;
    }
}

inline Mat stable_central_term(const LieAlgebra& g, const Mat& R) {
    auto f = central_series_of(g, R);
    return f.terms.back();
}

struct ExpRadical {
    Mat radical, r_inf, s_r, e;
};

inline ExpRadical exponential_radical(const LieAlgebra& g, const Mat& levi) {
    ExpRadical out;
    out.radical = solvable_radical(g);
    Mat L = orth(levi);
    if (L.cols() > 0 && !is_subalgebra(g, L)) throw ValidationError("Levi input is not a subalgebra");
    if (L.cols() + out.radical.cols() != g.dim() || numeric_rank(hcat(L, out.radical)) != g.dim())
        throw ValidationError("Levi input does not complement the radical");
    out.r_inf = stable_central_term(g, out.radical);
    out.s_r = L.cols() ? ideal_closure(g, g.bracket_space(L, out.radical)) : Mat(g.dim(), 0);
    out.e = span_sum(out.r_inf, out.s_r);
    return out;
}

inline Mat exponential_radical_ideal(const LieAlgebra& g, const Mat& levi) { return exponential_radical(g, levi).e; }

// Quotient B/E of a subalgebra B by an ideal E of B. The complement basis is
// chosen greedily from the canonical basis of B.
inline LieAlgebra quotient_algebra(const LieAlgebra& g, const Mat& B, const Mat& E, Mat* complement = nullptr) {
    Mat QE = orth(E);
    if (containment_residual(B, QE) > kRankTol) throw ValidationError("ideal not contained in subalgebra");
    Mat cand = canonical_basis(B);
    Mat C(g.dim(), 0), acc = QE;
    std::vector<std::string> names;
    for (int j = 0; j < cand.cols(); ++j) {
        Mat t = hcat(acc, cand.col(j));
        if (numeric_rank(t) > acc.cols()) {
            acc = t;
            C = hcat(C, cand.col(j));
            // name after the coordinate of the pivot entry
            int piv = 0;
            while (std::abs(cand(piv, j)) < kRankTol) ++piv;
            names.push_back(g.names()[piv]);
        }
    }
    const int q = static_cast<int>(C.cols());
    LieAlgebra out(q, names);
    Mat M = hcat(C, QE);
    auto solver = M.colPivHouseholderQr();
    for (int a = 0; a < q; ++a)
        for (int b = a + 1; b < q; ++b) {
            Vec br = g.bracket(C.col(a), C.col(b));
            Vec coef = solver.solve(br);
            for (int k = 0; k < q; ++k)
                if (std::abs(coef(k)) > kDropTol) out.set(a, b, k, coef(k));
        }
    if (complement) *complement = C;
    return out;
}

}  // namespace hfg
