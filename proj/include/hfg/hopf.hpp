#pragma once

#include <chrono>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lie.hpp"
#include "presentation.hpp"
#include "series.hpp"

namespace hfg {

struct HopfData {
    std::string name;
    Presentation pres;
    std::vector<TensorSeries> delta;
    std::vector<cplx> eps;
    std::vector<NCSeries> S;
    std::optional<std::vector<NCSeries>> S_inv;
    std::vector<std::pair<std::string, cplx>> params;
    int verify_trunc = -1;  // degree up to which identities are read off; the data may carry a guard above it

    int nominal_trunc() const { return verify_trunc < 0 ? pres.trunc : verify_trunc; }

    // Same data at a lower truncation.
    HopfData retruncated(int T) const {
        if (T > pres.trunc) throw DimensionError("cannot raise the truncation of Hopf data");
        HopfData h = *this;
        h.pres = pres.retruncated(T);
        for (auto& d : h.delta) d = d.truncated(T);
        for (auto& x : h.S) x = x.truncated(T);
        if (h.S_inv)
            for (auto& x : *h.S_inv) x = x.truncated(T);
        h.verify_trunc = std::min(nominal_trunc(), T);
        return h;
    }

    void validate() const {
        const auto n = static_cast<std::size_t>(pres.ngens);
        if (delta.size() != n || eps.size() != n || S.size() != n || (S_inv && S_inv->size() != n))
            throw ValidationError("Hopf data needs one image per generator");
        for (auto& d : delta)
            if (d.ngens() != pres.ngens || d.trunc() != pres.trunc) throw DimensionError("coproduct image truncation");
        for (auto& s : S)
            if (s.ngens() != pres.ngens || s.trunc() != pres.trunc) throw DimensionError("antipode image truncation");
    }
};

// Multiplicative extension of generator images to a series.
template <std::size_t K>
Series<K> extend_hom(const NCSeries& a, const std::vector<Series<K>>& img) {
    // images may live in another algebra
    const int n = img.empty() ? a.ngens() : img.front().ngens();
    const int N = img.empty() ? a.trunc() : img.front().trunc();
    Series<K> out(n, N);
    std::map<Word, Series<K>> memo;
    memo.emplace(Word{}, Series<K>::unit(n, N));
    std::function<const Series<K>&(const Word&)> image = [&](const Word& w) -> const Series<K>& {
        if (auto it = memo.find(w); it != memo.end()) return it->second;
        const Series<K>& pre = image(w.substr(0, w.size() - 1));
        Series<K> v = pre * img[static_cast<unsigned char>(w.back())];
        return memo.emplace(w, std::move(v)).first->second;
    };
    for (const auto& [k, c] : a.terms()) out += c * image(k[0]);
    return out;
}

// Antimultiplicative extension: word order reversed.
inline NCSeries extend_antihom(const NCSeries& a, const std::vector<NCSeries>& img) {
    NCSeries rev(a.ngens(), a.trunc());
    for (const auto& [k, c] : a.terms()) {
        Word w(k[0].rbegin(), k[0].rend());
        rev.add_term({w}, c);
    }
    return extend_hom<1>(rev, img);
}

inline cplx extend_scalar(const NCSeries& a, const std::vector<cplx>& img) {
    cplx s = 0;
    for (const auto& [k, c] : a.terms()) {
        cplx p = c;
        for (unsigned char l : k[0]) p *= img[l];
        s += p;
    }
    return s;
}

inline TensorSeries apply_delta(const HopfData& h, const NCSeries& a) { return extend_hom<2>(a, h.delta); }
inline NCSeries apply_S(const HopfData& h, const NCSeries& a) { return extend_antihom(a, h.S); }

// (Δ ⊗ id)(x) and (id ⊗ Δ)(x)
inline Tensor3Series delta_left(const HopfData& h, const TensorSeries& x) {
    Tensor3Series out(x.ngens(), x.trunc());
    std::map<Word, TensorSeries> memo;
    for (const auto& [k, c] : x.terms()) {
        auto it = memo.find(k[0]);
        if (it == memo.end()) it = memo.emplace(k[0], apply_delta(h, word_series(x.ngens(), x.trunc(), k[0]))).first;
        for (const auto& [d, e] : it->second.terms())
            out.add_term({d[0], d[1], k[1]}, c * e);
    }
    return out;
}

inline Tensor3Series delta_right(const HopfData& h, const TensorSeries& x) {
    Tensor3Series out(x.ngens(), x.trunc());
    std::map<Word, TensorSeries> memo;
    for (const auto& [k, c] : x.terms()) {
        auto it = memo.find(k[1]);
        if (it == memo.end()) it = memo.emplace(k[1], apply_delta(h, word_series(x.ngens(), x.trunc(), k[1]))).first;
        for (const auto& [d, e] : it->second.terms())
            out.add_term({k[0], d[0], d[1]}, c * e);
    }
    return out;
}

// (ε ⊗ id)(x) if slot == 0, (id ⊗ ε)(x) if slot == 1
inline NCSeries counit_slot(const HopfData& h, const TensorSeries& x, int slot) {
    NCSeries out(x.ngens(), x.trunc());
    for (const auto& [k, c] : x.terms()) {
        NCSeries w = word_series(x.ngens(), x.trunc(), k[slot]);
        out.add_term({k[1 - slot]}, c * extend_scalar(w, h.eps));
    }
    return out;
}

// m(S ⊗ id)(x) if slot == 0, m(id ⊗ S)(x) if slot == 1
inline NCSeries multiply_antipode(const HopfData& h, const TensorSeries& x, int slot) {
    const int n = x.ngens(), N = x.trunc();
    NCSeries out(n, N);
    std::map<Word, NCSeries> memo;
    for (const auto& [k, c] : x.terms()) {
        const Word& w = k[slot];
        auto it = memo.find(w);
        if (it == memo.end()) it = memo.emplace(w, apply_S(h, word_series(n, N, w))).first;
        NCSeries other = word_series(n, N, k[1 - slot]);
        out += c * (slot == 0 ? it->second * other : other * it->second);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct Check {
    std::string axiom;
    std::string item;
    double residual = 0;
    bool pass = false;
};

struct VerificationReport {
    std::string name;
    int trunc = 0;
    double tol = 1e-9;
    bool degenerate = false;
    std::vector<std::pair<std::string, cplx>> params;
    std::string backend;
    int work_trunc = 0;
    std::vector<std::string> collapsed;  // generators lying in the ideal: checks involving them are vacuous
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> dims;
    double seconds = 0;

    bool vacuous() const { return degenerate || !collapsed.empty(); }

    bool pass() const {
        if (degenerate) return false;
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    double max_residual() const {
        double m = 0;
        for (auto& c : checks) m = std::max(m, c.residual);
        return m;
    }
    void add(std::string axiom, std::string item, double r) {
        checks.push_back({std::move(axiom), std::move(item), r, r < tol});
    }
};

// Rewriting when the presentation allows it, linear algebra otherwise.
inline std::shared_ptr<CommutationSystem> preferred_rewriting(const Presentation& p) {
    return CommutationSystem::detect(p, 0);
}

// Ideal spans of H, H⊗H and H⊗H⊗H for one presentation.
struct HopfSpans {
    std::shared_ptr<CommutationSystem> rw;
    IdealSpan one;
    TensorIdealSpan two;
    std::optional<Tensor3IdealSpan> three;
    int maxdeg;  // degree bound for residuals

    explicit HopfSpans(const Presentation& p, int read_deg = -1, bool with_triple = true, double tol = kRankTol)
        : rw(preferred_rewriting(p)), one(p, rw, tol), two(p, rw, tol), maxdeg(read_deg) {
        if (with_triple) three.emplace(p, rw, tol);
    }
    explicit HopfSpans(const HopfData& h, bool with_triple = true, double tol = kRankTol)
        : HopfSpans(h.pres, h.nominal_trunc(), with_triple, tol) {}

    double r1(const NCSeries& a) const { return one.residual(a, maxdeg); }
    double r2(const TensorSeries& a) const { return two.residual(a, maxdeg); }
    double r3(const Tensor3Series& a) const { return three->residual(a, maxdeg); }
};

inline std::string relator_label(const Presentation& p, std::size_t i) {
    const auto& r = p.relators[i];
    return r.label.empty() ? "r" + std::to_string(i + 1) : r.label;
}

inline void check_relations(const HopfData& h, const HopfSpans& sp, VerificationReport& rep) {
    const auto& p = h.pres;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        const auto& g = p.relators[i].poly;  // expanded at the data truncation
        std::string lab = relator_label(p, i);
        rep.add("relation.delta", lab, sp.r2(apply_delta(h, g)));
        rep.add("relation.eps", lab, std::abs(extend_scalar(g, h.eps)));
        rep.add("relation.S", lab, sp.r1(apply_S(h, g)));
        if (h.S_inv) rep.add("relation.S_inv", lab, sp.r1(extend_antihom(g, *h.S_inv)));
    }
}

inline void check_bialgebra(const HopfData& h, const HopfSpans& sp, VerificationReport& rep) {
    const auto& p = h.pres;
    for (int i = 0; i < p.ngens; ++i) {
        const auto& d = h.delta[i];
        NCSeries x = p.gen(i);
        if (sp.three) rep.add("coassociativity", p.names[i], sp.r3(delta_left(h, d) - delta_right(h, d)));
        rep.add("counit.left", p.names[i], sp.r1(counit_slot(h, d, 0) - x));
        rep.add("counit.right", p.names[i], sp.r1(counit_slot(h, d, 1) - x));
    }
}

inline void check_antipode(const HopfData& h, const HopfSpans& sp, VerificationReport& rep) {
    const auto& p = h.pres;
    for (int i = 0; i < p.ngens; ++i) {
        const auto& d = h.delta[i];
        NCSeries e = p.one() * h.eps[i];
        rep.add("antipode.left", p.names[i], sp.r1(multiply_antipode(h, d, 0) - e));
        rep.add("antipode.right", p.names[i], sp.r1(multiply_antipode(h, d, 1) - e));
        if (h.S_inv) {
            NCSeries x = p.gen(i);
            rep.add("S.S_inv", p.names[i], sp.r1(apply_S(h, (*h.S_inv)[i]) - x));
            rep.add("S_inv.S", p.names[i], sp.r1(extend_antihom(h.S[i], *h.S_inv) - x));
        }
    }
}

// Antipode axiom on random products of generators, a guard on the
// generator-level reduction.
inline void check_random_products(const HopfData& h, const HopfSpans& sp, VerificationReport& rep, int count,
                                  unsigned seed) {
    const auto& p = h.pres;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, p.ngens - 1);
    std::uniform_int_distribution<int> len(2, std::max(2, h.nominal_trunc() / 2));
    for (int t = 0; t < count; ++t) {
        Word w;
        int l = len(rng);
        for (int i = 0; i < l; ++i) w.push_back(static_cast<char>(pick(rng)));
        NCSeries x = word_series(p.ngens, p.trunc, w);
        TensorSeries d = apply_delta(h, x);
        NCSeries e = p.one() * extend_scalar(x, h.eps);
        double r = std::max(sp.r1(multiply_antipode(h, d, 0) - e),
                            sp.r1(multiply_antipode(h, d, 1) - e));
        rep.add("antipode.random", render_word(w, &p.names), r);
    }
}

inline VerificationReport verify_hopf(const HopfData& hin, double tol = 1e-9, int random_checks = 0,
                                      unsigned seed = 1) {
    auto t0 = std::chrono::steady_clock::now();
    hin.validate();
    // the linear-algebra span is only built at the nominal truncation
    const HopfData h = preferred_rewriting(hin.pres) || hin.pres.trunc == hin.nominal_trunc()
                           ? hin
                           : hin.retruncated(hin.nominal_trunc());
    VerificationReport rep;
    rep.name = h.name;
    rep.trunc = h.nominal_trunc();
    rep.work_trunc = h.pres.trunc;
    rep.tol = tol;
    rep.params = h.params;
    HopfSpans sp(h);
    rep.backend = backend_name(sp.one.backend());
    rep.degenerate = sp.one.degenerate();
    if (sp.rw) {
        rep.dims.push_back({"quotient_dim", sorted_key_count(1, h.pres.ngens, rep.trunc)});
    } else {
        rep.dims.push_back({"quotient_dim", sp.one.quotient_dim()});
        rep.dims.push_back({"ideal_rank", sp.one.rank()});
        rep.dims.push_back({"tensor_ideal_rank", sp.two.rank()});
        if (sp.three) rep.dims.push_back({"triple_ideal_rank", sp.three->rank()});
    }
    for (int i = 0; i < h.pres.ngens; ++i)
        if (sp.r1(h.pres.gen(i)) < tol) rep.collapsed.push_back(h.pres.names[i]);
    check_relations(h, sp, rep);
    check_bialgebra(h, sp, rep);
    check_antipode(h, sp, rep);
    if (random_checks > 0) check_random_products(h, sp, rep, random_checks, seed);
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// ---------------------------------------------------------------------------
// Checks through homomorphisms into algebras with rewriting normal forms.
// Used where the formal truncation of the ideal swallows a generator: the
// identities are then tested on the images, which are nonzero.

struct Realization {
    std::string label;
    std::shared_ptr<CommutationSystem> rw;
    std::vector<NCSeries> images;  // one per source generator
};

// Slotwise pushforward (φ_1 ⊗ ... ⊗ φ_K)(x).
template <std::size_t K>
Series<K> push_slots(const Series<K>& x, const std::array<const Realization*, K>& r) {
    const int n = r[0]->rw->ngens(), M = r[0]->rw->work_trunc();
    std::array<std::map<Word, NCSeries>, K> memo;
    auto image = [&](std::size_t s, const Word& w) -> const NCSeries& {
        auto it = memo[s].find(w);
        if (it != memo[s].end()) return it->second;
        NCSeries v = NCSeries::unit(n, M);
        for (unsigned char l : w) v = v * r[s]->images[l];
        return memo[s].emplace(w, std::move(v)).first->second;
    };
    Series<K> out(n, M);
    for (const auto& [k, c] : x.terms()) {
        std::vector<std::pair<Key<K>, cplx>> cur{{Key<K>{}, c}};
        for (std::size_t s = 0; s < K; ++s) {
            const NCSeries& im = image(s, k[s]);
            std::vector<std::pair<Key<K>, cplx>> next;
            for (const auto& [pk, pc] : cur) {
                int deg = static_cast<int>(key_degree(pk));
                for (const auto& [w, wc] : im.terms()) {
                    if (deg + static_cast<int>(w[0].size()) > M) break;
                    Key<K> nk = pk;
                    nk[s] = w[0];
                    next.emplace_back(std::move(nk), pc * wc);
                }
            }
            cur = std::move(next);
        }
        for (auto& [nk, v] : cur) out.add_term(nk, v);
    }
    return out;
}

// Largest coefficient of the slotwise normal form on keys of degree <= maxdeg.
template <std::size_t K>
double slot_residual(const Series<K>& a, const std::array<const Realization*, K>& r, int maxdeg) {
    std::map<Key<K>, cplx, KeyLess<K>> acc;
    for (const auto& [k, c] : a.terms()) {
        std::vector<std::pair<Key<K>, cplx>> cur{{Key<K>{}, c}};
        for (std::size_t s = 0; s < K; ++s) {
            const NCSeries& nf = r[s]->rw->word_nf(k[s]);
            std::vector<std::pair<Key<K>, cplx>> next;
            for (const auto& [pk, pc] : cur) {
                int deg = static_cast<int>(key_degree(pk));
                for (const auto& [w, wc] : nf.terms()) {
                    if (deg + static_cast<int>(w[0].size()) > maxdeg) break;
                    Key<K> nk = pk;
                    nk[s] = w[0];
                    next.emplace_back(std::move(nk), pc * wc);
                }
            }
            cur = std::move(next);
        }
        for (auto& [nk, v] : cur) acc[nk] += v;
    }
    double m = 0;
    for (auto& [k, v] : acc) m = std::max(m, std::abs(v));
    return m;
}

// Every Hopf identity of h, pushed through all slotwise combinations of the
// realizations. Data must be built at the realizations' working truncation.
inline VerificationReport verify_hopf_realized(const HopfData& h, const std::vector<Realization>& reals,
                                               double tol = 1e-9) {
    auto t0 = std::chrono::steady_clock::now();
    h.validate();
    if (reals.empty()) throw ParameterError("no realizations given");
    VerificationReport rep;
    rep.name = h.name;
    rep.trunc = h.nominal_trunc();
    rep.work_trunc = h.pres.trunc;
    rep.tol = tol;
    rep.params = h.params;
    rep.backend = "realized";
    const int N = rep.trunc;
    for (const auto& R : reals) {
        if (static_cast<int>(R.images.size()) != h.pres.ngens)
            throw DimensionError("realization " + R.label + " has the wrong number of images");
        if (R.rw->work_trunc() < h.pres.trunc)
            throw DimensionError("realization " + R.label + " is truncated below the data");
    }
    const auto& p = h.pres;
    auto one = [&](const NCSeries& x, const Realization& R) {
        return slot_residual<1>(push_slots<1>(
                                    Series<1>(x), std::array<const Realization*, 1>{&R}),
                                std::array<const Realization*, 1>{&R}, N);
    };
    for (const auto& R : reals) {
        for (int i = 0; i < p.ngens; ++i)
            if (one(p.gen(i), R) < tol) rep.collapsed.push_back(p.names[i] + "@" + R.label);
    }
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
        const auto& g = p.relators[i].poly;
        std::string lab = relator_label(p, i);
        rep.add("relation.eps", lab, std::abs(extend_scalar(g, h.eps)));
        TensorSeries d = apply_delta(h, g);
        NCSeries sg = apply_S(h, g);
        for (const auto& A : reals) {
            rep.add("realization.kernel", lab + "@" + A.label, one(g, A));
            rep.add("relation.S", lab + "@" + A.label, one(sg, A));
            if (h.S_inv) rep.add("relation.S_inv", lab + "@" + A.label, one(extend_antihom(g, *h.S_inv), A));
            for (const auto& B : reals) {
                std::array<const Realization*, 2> ab{&A, &B};
                rep.add("relation.delta", lab + "@" + A.label + "," + B.label,
                        slot_residual<2>(push_slots<2>(d, ab), ab, N));
            }
        }
    }
    for (int i = 0; i < p.ngens; ++i) {
        const auto& d = h.delta[i];
        NCSeries x = p.gen(i);
        NCSeries e = p.one() * h.eps[i];
        Tensor3Series co = delta_left(h, d) - delta_right(h, d);
        for (const auto& A : reals) {
            std::string at = p.names[i] + "@" + A.label;
            rep.add("counit.left", at, one(counit_slot(h, d, 0) - x, A));
            rep.add("counit.right", at, one(counit_slot(h, d, 1) - x, A));
            rep.add("antipode.left", at, one(multiply_antipode(h, d, 0) - e, A));
            rep.add("antipode.right", at, one(multiply_antipode(h, d, 1) - e, A));
            if (h.S_inv) {
                rep.add("S.S_inv", at, one(apply_S(h, (*h.S_inv)[i]) - x, A));
                rep.add("S_inv.S", at, one(extend_antihom(h.S[i], *h.S_inv) - x, A));
            }
            for (const auto& B : reals)
                for (const auto& C : reals) {
                    std::array<const Realization*, 3> abc{&A, &B, &C};
                    rep.add("coassociativity", p.names[i] + "@" + A.label + "," + B.label + "," + C.label,
                            slot_residual<3>(push_slots<3>(co, abc), abc, N));
                }
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// Formal check, plus the realized one when realizations are supplied. A formal
// check on data whose generators collapse only passes if the realized check
// does.
struct SuiteResult {
    VerificationReport formal;
    std::optional<VerificationReport> realized;

    bool pass() const {
        if (!formal.pass()) return false;
        if (realized && (!realized->pass() || realized->vacuous())) return false;
        return !formal.vacuous() || realized.has_value();
    }
};

inline SuiteResult run_suite(const HopfData& h, const std::vector<Realization>& reals, double tol = 1e-9,
                             int random_checks = 0, unsigned seed = 1) {
    SuiteResult out{verify_hopf(h, tol, random_checks, seed), std::nullopt};
    if (!reals.empty()) out.realized = verify_hopf_realized(h, reals, tol);
    return out;
}

// ---------------------------------------------------------------------------
// Primitive elements.

struct PrimitiveResult {
    std::vector<NCSeries> basis;
    std::vector<Word> candidates;
    double smallest_rejected = 0;  // smallest singular value outside the null space
};

inline PrimitiveResult primitives(const HopfData& h, const IdealSpan& I, const TensorIdealSpan& T, int maxdeg,
                                  double tol = 1e-9) {
    const auto& p = h.pres;
    const int N = h.nominal_trunc();
    if (maxdeg < 0 || 2 * maxdeg > N) throw ParameterError("primitive search needs 0 <= maxdeg <= N/2");
    PrimitiveResult res;
    res.candidates = quotient_basis(I, maxdeg);
    std::map<Key<2>, int, KeyLess<2>> row_of;
    std::vector<TensorSeries> cols;
    for (const auto& w : res.candidates) {
        NCSeries x = word_series(p.ngens, p.trunc, w);
        TensorSeries d = apply_delta(h, x) - tensor_embed_left(x) - tensor_embed_right(x);
        TensorSeries nf = T.normal_form(d), low(p.ngens, p.trunc);
        for (auto& [k, c] : nf.terms())
            if (static_cast<int>(key_degree(k)) <= N) {
                row_of.emplace(k, 0);
                low.add_term(k, c);
            }
        cols.push_back(std::move(low));
    }
    int r = 0;
    for (auto& [k, v] : row_of) v = r++;
    Mat A = Mat::Zero(std::max(r, 1), static_cast<int>(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (auto& [k, c] : cols[j].terms()) A(row_of.at(k), static_cast<int>(j)) = c;
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullV);
    auto s = svd.singularValues();
    const int n = static_cast<int>(cols.size());
    int rank = 0;
    res.smallest_rejected = std::numeric_limits<double>::infinity();
    for (int i = 0; i < s.size(); ++i)
        if (s(i) > tol) {
            ++rank;
            res.smallest_rejected = std::min(res.smallest_rejected, s(i));
        }
    Mat Nsp = canonical_basis(svd.matrixV().rightCols(n - rank));
    for (int j = 0; j < Nsp.cols(); ++j) {
        NCSeries x(p.ngens, p.trunc);
        for (int i = 0; i < n; ++i)
            if (std::abs(Nsp(i, j)) > kDropTol) x.add_term({res.candidates[i]}, Nsp(i, j));
        res.basis.push_back(std::move(x));
    }
    return res;
}

// Residual of Δ(x) - x⊗1 - 1⊗x in the tensor ideal.
inline double primitive_residual(const HopfData& h, const TensorIdealSpan& T, const NCSeries& x) {
    return T.residual(apply_delta(h, x) - tensor_embed_left(x) - tensor_embed_right(x), h.nominal_trunc());
}

// ---------------------------------------------------------------------------
// Exponential identities.

struct ScalingCheck {
    double precondition;  // residual of [b,c] - αc
    double residual;      // residual of e^{λb} c e^{-λb} - e^{λα} c
};

// Residuals are read on words of degree <= maxdeg (all words when negative).
inline ScalingCheck conjugation_scaling_check(const NCSeries& b, const NCSeries& c, cplx alpha, cplx lambda,
                                              const IdealSpan& I, int maxdeg = -1) {
    ScalingCheck out;
    out.precondition = I.residual(b * c - c * b - alpha * c, maxdeg);
    NCSeries lhs = apply_entire(exp_fn(lambda), b) * c * apply_entire(exp_fn(-lambda), b);
    out.residual = I.residual(lhs - std::exp(lambda * alpha) * c, maxdeg);
    return out;
}

// [h(b), c] - Σ_{n>=1} (1/n!) (ad b)^n(c) h^{(n)}(b)
inline NCSeries ad_entire_difference(const EntireFn& h, const NCSeries& b, const NCSeries& c) {
    NCSeries hb = apply_entire(h, b);
    NCSeries lhs = hb * c - c * hb;
    NCSeries rhs(b.ngens(), b.trunc());
    NCSeries adn = c;
    for (int n = 1; n <= b.trunc(); ++n) {
        adn = b * adn - adn * b;
        if (adn.is_zero()) break;
        rhs += (1.0 / factorial(n)) * (adn * apply_entire(derivative(h, n), b));
    }
    return lhs - rhs;
}

inline double ad_entire_check(const EntireFn& h, const NCSeries& b, const NCSeries& c, const IdealSpan& I,
                              int maxdeg = -1) {
    return I.residual(ad_entire_difference(h, b, c), maxdeg);
}

// ---------------------------------------------------------------------------
// Catalog.

inline LieAlgebra heisenberg() {
    LieAlgebra g(3, {"x", "y", "z"});
    g.set(0, 1, 2, 1.0);
    return g;
}

inline LieAlgebra abelian(int m) { return LieAlgebra(m); }

inline LieAlgebra sl2() {
    LieAlgebra g(3, {"E", "F", "H"});
    g.set(2, 0, 0, 2.0);   // [H,E] = 2E
    g.set(2, 1, 1, -2.0);  // [H,F] = -2F
    g.set(0, 1, 2, 1.0);   // [E,F] = H
    return g;
}

// [X,Y] = λY
inline LieAlgebra af1(cplx lambda = 1.0, std::vector<std::string> names = {"X", "Y"}) {
    LieAlgebra g(2, std::move(names));
    g.set(0, 1, 1, lambda);
    return g;
}

inline void require_hbar(cplx hbar) {
    if (std::abs(std::sinh(hbar)) < 1e-12)
        throw ParameterError("sinh(hbar) = 0 is excluded (hbar = " + fmt_cplx(hbar) + ")");
}

// Catalog objects carrying entire functions are built at N + guard and read
// off at N.
inline HopfData hopf_usl2_hbar(cplx hbar, int N, int guard = kDefaultGuard) {
    require_hbar(hbar);
    const int M = N + guard;
    HopfData h;
    h.name = "usl2";
    h.params = {{"hbar", hbar}};
    h.verify_trunc = N;
    Presentation p(3, M, {"E", "F", "H"});
    NCSeries E = p.gen(0), F = p.gen(1), H = p.gen(2);
    p.add_relator(H * E - E * H - 2.0 * E, false, {}, "[H,E]-2E");
    p.add_relator(H * F - F * H + 2.0 * F, false, {}, "[H,F]+2F");
    p.add_analytic(
        [hbar](int T) {
            NCSeries e = gen(3, T, 0), f = gen(3, T, 1), hh = gen(3, T, 2);
            return e * f - f * e - apply_entire(sinh_quotient(hbar), hh);
        },
        "[E,F]-sinh(hH)/sinh(h)");
    NCSeries K = apply_entire(exp_fn(hbar), H), Ki = apply_entire(exp_fn(-hbar), H);
    h.pres = p;
    h.delta = {tensor_product(E, K) + tensor_embed_right(E), tensor_embed_left(F) + tensor_product(Ki, F),
               tensor_embed_left(H) + tensor_embed_right(H)};
    h.eps = {0.0, 0.0, 0.0};
    h.S = {-(E * Ki), -(K * F), -H};
    h.S_inv = std::vector<NCSeries>{-(Ki * E), -(F * K), -H};
    return h;
}

inline HopfData hopf_uaf1_hbar(cplx hbar, int N, int guard = kDefaultGuard) {
    require_hbar(hbar);
    const int M = N + guard;
    HopfData h;
    h.name = "uaf1";
    h.params = {{"hbar", hbar}};
    h.verify_trunc = N;
    Presentation p(2, M, {"X", "Y"});
    NCSeries X = p.gen(0), Y = p.gen(1);
    NCSeries sY = apply_entire(sinh_quotient(hbar), Y);
    p.add_analytic(
        [hbar](int T) {
            NCSeries x = gen(2, T, 0), y = gen(2, T, 1);
            return x * y - y * x - apply_entire(sinh_quotient(hbar), y);
        },
        "[X,Y]-sinh(hY)/sinh(h)");
    NCSeries K = apply_entire(exp_fn(hbar), Y), Ki = apply_entire(exp_fn(-hbar), Y);
    h.pres = p;
    h.delta = {tensor_product(X, Ki) + tensor_product(K, X), tensor_embed_right(Y) + tensor_embed_left(Y)};
    h.eps = {0.0, 0.0};
    // (ħ/sinh ħ) sinh(ħY) = ħ · sY
    h.S = {-X - hbar * sY, -Y};
    h.S_inv = std::vector<NCSeries>{-X + hbar * sY, -Y};
    return h;
}

inline NCSeries oaf1_relator(cplx q, int T) {
    NCSeries z = gen(2, T, 0), b = gen(2, T, 1);
    NCSeries ez = apply_entire(exp_fn(1.0), z);
    return ez * b - q * (b * ez);
}

// Not of commutation shape. The data is built at N + guard so that it can also
// be pushed into realizations; the formal check runs at N.
inline HopfData hopf_oaf1_q(cplx q, int N, int guard = 0) {
    if (std::abs(q) < 1e-300) throw ParameterError("q = 0 is excluded");
    const int M = N + guard;
    HopfData h;
    h.name = "oaf1q";
    h.params = {{"q", q}};
    h.verify_trunc = N;
    Presentation p(2, M, {"z", "b"});
    NCSeries z = p.gen(0), b = p.gen(1);
    NCSeries ez = apply_entire(exp_fn(1.0), z), emz = apply_entire(exp_fn(-1.0), z);
    p.add_analytic([q](int T) { return oaf1_relator(q, T); }, "e^z b-q b e^z");
    h.pres = p;
    h.delta = {tensor_embed_left(z) + tensor_embed_right(z), tensor_product(ez, b) + tensor_embed_left(b)};
    h.eps = {0.0, 0.0};
    h.S = {-z, -(emz * b)};
    h.S_inv = std::vector<NCSeries>{-z, -(b * emz)};
    return h;
}

// Smallest guard g with r^{N+g}/(N+g)! · e^r below 1e-18: the tail bound for
// exponentials whose argument is shifted by at most r under rewriting.
inline int tail_guard(double r, int N) {
    int g = 8;
    auto tail = [&](int M) { return M * std::log(r) - std::lgamma(M + 1.0) + r; };
    while (r > 0 && tail(N + g) > std::log(1e-18)) ++g;
    return g;
}

// B_ζ = U(span{x,y}), [x,y] = ζy, with e^ζ = q and ζ = log q + 2πik.
// z ↦ x, b ↦ y sends e^z b - q b e^z to zero.
inline std::vector<cplx> oaf1_branches(cplx q, const std::vector<int>& ks) {
    std::vector<cplx> out;
    for (int k : ks) out.push_back(std::log(q) + cplx(0, 2 * std::acos(-1.0) * k));
    return out;
}

inline std::vector<Realization> oaf1_realizations(cplx q, int M, const std::vector<int>& ks = {-1, 0, 1}) {
    std::vector<Realization> out;
    std::size_t i = 0;
    for (cplx zeta : oaf1_branches(q, ks)) {
        LieAlgebra B = af1(zeta, {"x", "y"});
        Presentation pb = pbw_presentation(B, M);
        auto rw = CommutationSystem::detect(pb, 0);
        if (!rw) throw ValidationError("B_zeta is not confluent");
        out.push_back({"k=" + std::to_string(ks[i++]), rw, {pb.gen(0), pb.gen(1)}});
    }
    return out;
}

// Guard needed by the realizations at N.
inline int oaf1_guard(cplx q, int N, const std::vector<int>& ks = {-1, 0, 1}) {
    double r = 0;
    for (cplx z : oaf1_branches(q, ks)) r = std::max(r, std::abs(z));
    return tail_guard(r + 2.0, N);
}

inline HopfData hopf_env(const LieAlgebra& g, int N, std::string name = "env") {
    HopfData h;
    h.name = std::move(name);
    h.verify_trunc = N;
    h.pres = pbw_presentation(g, N);
    for (int i = 0; i < g.dim(); ++i) {
        NCSeries x = h.pres.gen(i);
        h.delta.push_back(tensor_embed_left(x) + tensor_embed_right(x));
        h.eps.push_back(0.0);
        h.S.push_back(-x);
    }
    h.S_inv = h.S;
    return h;
}

struct FiniteGroup {
    std::vector<std::string> names;        // element 0 is the identity
    std::vector<std::vector<int>> table;   // table[a][b] = a*b
    int order() const { return static_cast<int>(names.size()); }
    int inverse(int a) const {
        for (int b = 0; b < order(); ++b)
            if (table[a][b] == 0) return b;
        throw ValidationError("element without inverse");
    }
    void validate() const {
        const int n = order();
        if (n == 0 || static_cast<int>(table.size()) != n) throw ValidationError("group table size");
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(table[a].size()) != n) throw ValidationError("group table size");
            if (table[0][a] != a || table[a][0] != a) throw ValidationError("element 0 is not the identity");
            inverse(a);
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (table[table[a][b]][c] != table[a][table[b][c]]) throw ValidationError("group table not associative");
    }
};

inline FiniteGroup cyclic_group(int n) {
    FiniteGroup G;
    for (int i = 0; i < n; ++i) G.names.push_back(i == 0 ? "e" : (n == 2 ? "u" : "g" + std::to_string(i)));
    G.table.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) G.table[a][b] = (a + b) % n;
    return G;
}

// Generators: the non-identity elements; relators g*h - (gh).
inline HopfData hopf_group_algebra(const FiniteGroup& G, int N) {
    G.validate();
    // Δ(gh) = gh ⊗ gh has twice the degree of the relator
    if (N < 4) throw ParameterError("group algebra needs truncation >= 4 so that coproducts of relators are kept");
    const int n = G.order() - 1;
    if (n == 0) throw ParameterError("trivial group");
    std::vector<std::string> names(G.names.begin() + 1, G.names.end());
    Presentation p(n, N, names);
    auto elem = [&](int a) { return a == 0 ? p.one() : p.gen(a - 1); };
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b)
            p.add_relator(p.gen(a - 1) * p.gen(b - 1) - elem(G.table[a][b]), false, {},
                          names[a - 1] + "*" + names[b - 1]);
    HopfData h;
    h.name = "group";
    h.verify_trunc = N;
    h.pres = p;
    for (int a = 1; a <= n; ++a) {
        NCSeries x = p.gen(a - 1);
        h.delta.push_back(tensor_product(x, x));
        h.eps.push_back(1.0);
        h.S.push_back(elem(G.inverse(a)));
    }
    h.S_inv = h.S;
    return h;
}

}  // namespace hfg
