#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "echelon.hpp"
#include "series.hpp"

namespace hfg {

struct Relator {
    NCSeries poly;      // expanded to the presentation truncation
    int lead = 0;       // placement degree: |u| + lead + |v| <= N
    bool analytic = false;
    std::string label;
    std::function<NCSeries(int)> source;  // re-expansion at another truncation
    bool fixed_lead = false;
};

// Same terms at truncation M.
inline NCSeries retruncate(const NCSeries& a, int M) {
    NCSeries r(a.ngens(), M, a.drop_tol());
    for (const auto& [k, c] : a.terms()) r.add_term(k, c);
    return r;
}

inline NCSeries relator_at(const Relator& r, int M) { return r.source ? r.source(M) : retruncate(r.poly, M); }

// Polynomial relators are placed only where they fit entirely (filtered
// truncation). Relators carrying entire-function terms are placed by their
// lowest degree, i.e. modulo words of degree > N.
inline int default_lead(const NCSeries& g, bool analytic) {
    if (g.is_zero()) return 0;
    return analytic ? g.min_degree() : g.degree();
}

struct Presentation {
    int ngens = 0;
    int trunc = 0;
    std::vector<std::string> names;
    std::vector<Relator> relators;

    Presentation() = default;
    Presentation(int n, int N, std::vector<std::string> nm = {}) : ngens(n), trunc(N), names(std::move(nm)) {
        if (names.empty())
            for (int i = 0; i < n; ++i) names.push_back("z" + std::to_string(i + 1));
        if (static_cast<int>(names.size()) != n) throw DimensionError("generator name count");
    }

    void add_relator(const NCSeries& g, bool analytic = false, std::optional<int> lead = {},
                     std::string label = {}, std::function<NCSeries(int)> source = {}) {
        if (g.ngens() != ngens || g.trunc() != trunc) throw DimensionError("relator does not fit presentation");
        if (g.is_zero()) throw ValidationError("zero relator");
        relators.push_back({g, lead ? *lead : default_lead(g, analytic), analytic, std::move(label), std::move(source),
                            lead.has_value()});
    }

    // Relator with entire-function terms, expanded by `source` at any truncation.
    void add_analytic(std::function<NCSeries(int)> source, std::string label = {}) {
        NCSeries g = source(trunc);
        add_relator(g, true, {}, std::move(label), std::move(source));
    }

    // Copy at truncation M; analytic relators are re-expanded where possible.
    Presentation retruncated(int M) const {
        Presentation p(ngens, M, names);
        for (const auto& r : relators) {
            NCSeries g = relator_at(r, M);
            p.relators.push_back({g, r.fixed_lead ? r.lead : default_lead(g, r.analytic), r.analytic, r.label,
                                  r.source, r.fixed_lead});
        }
        return p;
    }

    bool has_analytic() const {
        return std::any_of(relators.begin(), relators.end(), [](const Relator& r) { return r.analytic; });
    }

    NCSeries gen(int i) const { return hfg::gen(ngens, trunc, i); }
    NCSeries one() const { return NCSeries::unit(ngens, trunc); }
    NCSeries zero() const { return NCSeries(ngens, trunc); }
    int index_of(const std::string& name) const {
        for (int i = 0; i < ngens; ++i)
            if (names[i] == name) return i;
        throw ParseError("unknown generator '" + name + "'");
    }
};

// Number of keys of total degree <= N in the K-fold tensor power.
inline double key_count(int K, int n, int N) {
    double total = 0;
    for (int d = 0; d <= N; ++d) {
        double comp = 1;  // C(d+K-1, K-1)
        for (int i = 1; i < K; ++i) comp = comp * (d + i) / i;
        total += comp * std::pow(static_cast<double>(n), d);
    }
    return total;
}

// Number of K-tuples of non-decreasing words with total degree <= N.
inline double sorted_key_count(int K, int n, int N) {
    std::vector<double> one(N + 1);  // sorted words of length d: C(d+n-1, n-1)
    for (int d = 0; d <= N; ++d) {
        double c = 1;
        for (int i = 1; i < n; ++i) c = c * (d + i) / i;
        one[d] = c;
    }
    std::vector<double> acc(N + 1, 0.0);
    acc[0] = 1;
    for (int k = 0; k < K; ++k) {
        std::vector<double> next(N + 1, 0.0);
        for (int a = 0; a <= N; ++a)
            for (int b = 0; a + b <= N; ++b) next[a + b] += acc[a] * one[b];
        acc = std::move(next);
    }
    double total = 0;
    for (double v : acc) total += v;
    return total;
}

inline std::vector<Word> words_upto(int n, int maxlen) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (int len = 1; len <= maxlen; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int l = 0; l < n; ++l) out.push_back(out[i] + static_cast<char>(l));
        begin = end;
    }
    return out;
}

inline bool is_sorted_word(const Word& w) {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (static_cast<unsigned char>(w[i - 1]) > static_cast<unsigned char>(w[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Commutation rewriting: one rule x_j x_i -> λ x_i x_j + R for each j > i,
// with R an arbitrary (possibly entire) series. Normal words are the
// non-decreasing words.

constexpr int kDefaultGuard = 20;

class CommutationSystem {
public:
    struct Rule {
        cplx lambda;
        NCSeries rest;
    };

    // Empty when the presentation is not of commutation shape.
    static std::shared_ptr<CommutationSystem> detect(const Presentation& p, int guard = kDefaultGuard) {
        const int n = p.ngens;
        if (static_cast<int>(p.relators.size()) != n * (n - 1) / 2) return nullptr;
        std::map<std::pair<int, int>, Rule> rules;
        for (const auto& rel : p.relators) {
            const NCSeries g = relator_at(rel, p.trunc + guard);
            std::optional<std::pair<int, int>> pair;
            for (const auto& [k, c] : g.terms()) {
                const Word& w = k[0];
                if (w.size() == 2 && static_cast<unsigned char>(w[0]) > static_cast<unsigned char>(w[1])) {
                    if (pair) return nullptr;
                    pair = {static_cast<unsigned char>(w[0]), static_cast<unsigned char>(w[1])};
                }
            }
            if (!pair || rules.count(*pair)) return nullptr;
            auto [j, i] = *pair;
            Word desc{static_cast<char>(j), static_cast<char>(i)}, asc{static_cast<char>(i), static_cast<char>(j)};
            cplx a = g.coef({desc});
            Rule r{-g.coef({asc}) / a, NCSeries(n, p.trunc + guard)};
            for (const auto& [k, c] : g.terms()) {
                if (k[0] == desc || k[0] == asc) continue;
                if (!is_sorted_word(k[0])) return nullptr;  // remainders must already be normal
                r.rest.add_term(k, -c / a);
            }
            rules.emplace(*pair, std::move(r));
        }
        auto sys = std::shared_ptr<CommutationSystem>(new CommutationSystem(p, guard, std::move(rules)));
        try {
            if (!sys->check_confluence()) return nullptr;
        } catch (const UnsupportedInput&) {
            return nullptr;
        }
        return sys;
    }

    int ngens() const { return n_; }
    int trunc() const { return trunc_; }          // presentation truncation
    int work_trunc() const { return work_; }      // internal truncation
    double confluence_residual() const { return confluence_; }

    // Normal form of a word, at the internal truncation.
    const NCSeries& word_nf(const Word& w) const {
        if (auto it = word_memo_.find(w); it != word_memo_.end()) return it->second;
        NCSeries cur = NCSeries::unit(n_, work_);
        for (unsigned char l : w) cur = times_gen(cur, l);
        return word_memo_.emplace(w, std::move(cur)).first->second;
    }

    NCSeries normal_form(const NCSeries& a) const {
        NCSeries out(n_, work_);
        for (const auto& [k, c] : a.terms()) out += c * word_nf(k[0]);
        return out;
    }

private:
    CommutationSystem(const Presentation& p, int guard, std::map<std::pair<int, int>, Rule> rules)
        : n_(p.ngens), trunc_(p.trunc), work_(p.trunc + guard), rules_(std::move(rules)) {}

    NCSeries times_gen(const NCSeries& a, int l) const {
        NCSeries out(n_, work_);
        for (const auto& [k, c] : a.terms()) out += c * mulgen(k[0], l);
        return out;
    }

    // NF(s x_l) for a sorted word s.
    const NCSeries& mulgen(const Word& s, int l) const {
        auto key = std::make_pair(s, l);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (++depth_ > kMaxDepth) {
            depth_ = 0;
            throw UnsupportedInput("commutation rewriting does not terminate");
        }
        NCSeries out(n_, work_);
        if (s.empty() || static_cast<unsigned char>(s.back()) <= l) {
            out.add_term({s + static_cast<char>(l)}, 1.0);
        } else {
            int k = static_cast<unsigned char>(s.back());
            Word head = s.substr(0, s.size() - 1);
            const Rule& r = rules_.at({k, l});
            if (r.lambda != cplx{}) {
                // s' x_l x_k
                const NCSeries& left = mulgen(head, l);
                for (const auto& [t, c] : left.terms()) out += (r.lambda * c) * mulgen(t[0], k);
            }
            for (const auto& [w, c] : r.rest.terms()) {
                if (head.size() + w[0].size() > static_cast<std::size_t>(work_)) continue;
                NCSeries cur = word_series(n_, work_, head);
                for (unsigned char x : w[0]) cur = times_gen(cur, x);
                out += c * cur;
            }
        }
        --depth_;
        return memo_.emplace(std::move(key), std::move(out)).first->second;
    }

    // Overlaps x_k x_j x_i, k > j > i, resolved both ways.
    bool check_confluence() {
        confluence_ = 0;
        for (int k = 0; k < n_; ++k)
            for (int j = 0; j < k; ++j)
                for (int i = 0; i < j; ++i) {
                    Word w{static_cast<char>(k), static_cast<char>(j), static_cast<char>(i)};
                    NCSeries left = word_nf(w);
                    const Rule& r = rules_.at({j, i});
                    NCSeries xk = gen(n_, work_, k);
                    NCSeries right = r.lambda * normal_form(xk * gen(n_, work_, i) * gen(n_, work_, j));
                    right += normal_form(xk * r.rest);
                    // compare below the internal boundary
                    NCSeries d = left - right;
                    for (const auto& [key, c] : d.terms())
                        if (static_cast<int>(key[0].size()) <= trunc_ + 2)
                            confluence_ = std::max(confluence_, std::abs(c));
                }
        return confluence_ < 1e-8;
    }

    static constexpr int kMaxDepth = 4000;
    int n_, trunc_, work_;
    std::map<std::pair<int, int>, Rule> rules_;
    mutable std::map<std::pair<Word, int>, NCSeries> memo_;
    mutable std::map<Word, NCSeries> word_memo_;
    mutable int depth_ = 0;
    double confluence_ = 0;
};

inline bool commutation_shaped(const Presentation& p) { return CommutationSystem::detect(p, 0) != nullptr; }

enum class Backend { Auto, Linear, Rewrite };

inline const char* backend_name(Backend b) {
    switch (b) {
        case Backend::Linear: return "linear";
        case Backend::Rewrite: return "rewrite";
        default: return "auto";
    }
}

// Echelonized span of the truncated two-sided ideal in the K-fold tensor
// power of the presented algebra, generated by placements of the relators
// in one tensor slot. The rewrite backend represents the same span by the
// rows k - NF(k) for keys with an unsorted slot.
template <std::size_t K>
class IdealSpanK {
public:
    IdealSpanK() = default;
    explicit IdealSpanK(const Presentation& p, double rank_tol = kRankTol, Backend backend = Backend::Auto,
                        int guard = kDefaultGuard)
        : pres_(p), tol_(rank_tol), ech_(rank_tol) {
        if (backend != Backend::Linear) rewrite_ = CommutationSystem::detect(p, guard);
        if (backend == Backend::Rewrite && !rewrite_)
            throw UnsupportedInput("presentation is not of confluent commutation shape");
        if (backend == Backend::Auto && rewrite_ && !p.has_analytic()) rewrite_.reset();
        if (!rewrite_) build();
    }

    IdealSpanK(const Presentation& p, std::shared_ptr<CommutationSystem> rw, double rank_tol = kRankTol)
        : pres_(p), tol_(rank_tol), ech_(rank_tol), rewrite_(std::move(rw)) {
        if (!rewrite_) build();
        else if (rewrite_->trunc() != p.trunc || rewrite_->ngens() != p.ngens)
            throw DimensionError("rewriting system built for another presentation");
    }

    const Presentation& presentation() const { return pres_; }
    Backend backend() const { return rewrite_ ? Backend::Rewrite : Backend::Linear; }
    const std::shared_ptr<CommutationSystem>& rewriting() const { return rewrite_; }
    double rank() const {
        if (rewrite_) return total_dim() - sorted_key_count(K, pres_.ngens, pres_.trunc);
        return ech_.rank();
    }
    double rank_tol() const { return tol_; }
    double total_dim() const { return key_count(static_cast<int>(K), pres_.ngens, pres_.trunc); }
    double quotient_dim() const { return total_dim() - rank(); }
    std::size_t placement_count() const { return placements_; }

    bool degenerate() const {
        if (rewrite_) return false;
        auto it = index_.find(Key<K>{});
        return it != index_.end() && ech_.is_pivot(it->second);
    }

    bool is_pivot(const Key<K>& k) const {
        if (rewrite_) {
            if (static_cast<int>(key_degree(k)) > pres_.trunc) return false;
            return std::any_of(k.begin(), k.end(), [](const Word& w) { return !is_sorted_word(w); });
        }
        auto it = index_.find(k);
        return it != index_.end() && ech_.is_pivot(it->second);
    }

    std::vector<Key<K>> pivot_keys() const {
        std::vector<Key<K>> out;
        if (rewrite_) {
            for_each_key([&](const Key<K>& k) {
                if (is_pivot(k)) out.push_back(k);
            });
            std::sort(out.begin(), out.end(), KeyLess<K>{});
            return out;
        }
        for (int c : ech_.pivots()) out.push_back(cols_[c]);
        return out;
    }

    // Basis rows as series, pivot coefficient 1.
    std::vector<Series<K>> basis() const {
        std::vector<Series<K>> out;
        if (rewrite_) {
            for (const auto& k : pivot_keys()) {
                Series<K> s(pres_.ngens, pres_.trunc);
                s.add_term(k, 1.0);
                out.push_back(s - normal_form(s));
            }
            return out;
        }
        for (const auto& row : ech_.rows()) {
            Series<K> s(pres_.ngens, pres_.trunc);
            for (auto& [c, v] : row) s.add_term(cols_[c], v);
            out.push_back(std::move(s));
        }
        return out;
    }

    Series<K> normal_form(const Series<K>& a) const {
        if (a.ngens() != pres_.ngens || a.trunc() != pres_.trunc)
            throw DimensionError("series incompatible with presentation");
        if (rewrite_) return rewrite_nf(a);
        SparseRow in;
        Series<K> out(pres_.ngens, pres_.trunc);
        for (const auto& [k, c] : a.terms()) {
            auto it = index_.find(k);
            if (it == index_.end()) out.add_term(k, c);
            else in.emplace_back(it->second, c);
        }
        for (auto& [c, v] : ech_.reduce(in)) out.add_term(cols_[c], v);
        return out;
    }

    // Largest normal-form coefficient on keys of total degree <= maxdeg
    // (all keys when maxdeg < 0).
    double residual(const Series<K>& a, int maxdeg = -1) const {
        double m = 0;
        const Series<K> nf = normal_form(a);
        for (const auto& [k, c] : nf.terms())
            if (maxdeg < 0 || static_cast<int>(key_degree(k)) <= maxdeg) m = std::max(m, std::abs(c));
        return m;
    }

    std::pair<bool, double> member(const Series<K>& a, double tol, int maxdeg = -1) const {
        double r = residual(a, maxdeg);
        return {r < tol, r};
    }

private:
    Series<K> rewrite_nf(const Series<K>& a) const {
        const int n = pres_.ngens, N = pres_.trunc;
        Series<K> out(n, N);
        for (const auto& [k, c] : a.terms()) {
            // slotwise normal forms, multiplied out by total degree
            std::vector<std::pair<Key<K>, cplx>> acc{{Key<K>{}, c}};
            for (std::size_t s = 0; s < K; ++s) {
                const NCSeries& nf = rewrite_->word_nf(k[s]);
                std::vector<std::pair<Key<K>, cplx>> next;
                for (const auto& [pk, pc] : acc) {
                    int deg = static_cast<int>(key_degree(pk));
                    for (const auto& [w, wc] : nf.terms()) {
                        if (deg + static_cast<int>(w[0].size()) > N) break;  // degree-ordered
                        Key<K> nk = pk;
                        nk[s] = w[0];
                        next.emplace_back(std::move(nk), pc * wc);
                    }
                }
                acc = std::move(next);
            }
            for (auto& [nk, v] : acc) out.add_term(nk, v);
        }
        return out;
    }

    template <class F>
    void for_each_key(F&& f) const {
        auto ws = words_upto(pres_.ngens, pres_.trunc);
        Key<K> k{};
        std::function<void(std::size_t, int)> rec = [&](std::size_t slot, int left) {
            if (slot == K) {
                f(k);
                return;
            }
            for (const auto& w : ws) {
                if (static_cast<int>(w.size()) > left) break;
                k[slot] = w;
                rec(slot + 1, left - static_cast<int>(w.size()));
            }
        };
        rec(0, pres_.trunc);
    }

    void build() {
        const int n = pres_.ngens, N = pres_.trunc;
        std::vector<std::vector<std::pair<Key<K>, cplx>>> raw;
        for (const auto& rel : pres_.relators) {
            int budget = N - rel.lead;
            if (budget < 0) continue;
            auto ws = words_upto(n, budget);
            // Assign word lengths to u, v (inside the slot) and the K-1 other slots.
            std::vector<int> lens(K + 1, 0);
            enumerate_lengths(lens, 0, budget, [&](const std::vector<int>& L) {
                for (std::size_t slot = 0; slot < K; ++slot)
                    place(rel.poly, slot, L, ws, raw);
            });
        }
        placements_ = raw.size();
        std::map<Key<K>, int, KeyLess<K>> seen;
        for (auto& r : raw)
            for (auto& [k, c] : r) seen.emplace(k, 0);
        int idx = 0;
        for (auto& [k, v] : seen) {
            v = idx++;
            cols_.push_back(k);
        }
        index_ = std::move(seen);
        std::vector<SparseRow> rows;
        rows.reserve(raw.size());
        for (auto& r : raw) {
            SparseRow sr;
            sr.reserve(r.size());
            for (auto& [k, c] : r) sr.emplace_back(index_.at(k), c);
            rows.push_back(std::move(sr));
        }
        ech_.build(std::move(rows));
    }

    template <class F>
    static void enumerate_lengths(std::vector<int>& L, std::size_t pos, int left, F&& f) {
        if (pos == L.size()) {
            f(L);
            return;
        }
        for (int l = 0; l <= left; ++l) {
            L[pos] = l;
            enumerate_lengths(L, pos + 1, left - l, f);
        }
        L[pos] = 0;
    }

    static std::size_t range_begin(int n, int len) {
        std::size_t b = 0, p = 1;
        for (int i = 0; i < len; ++i) b += p, p *= n;
        return b;
    }

    void place(const NCSeries& g, std::size_t slot, const std::vector<int>& L, const std::vector<Word>& ws,
               std::vector<std::vector<std::pair<Key<K>, cplx>>>& raw) const {
        const int n = pres_.ngens, N = pres_.trunc;
        // L[0] = |u|, L[1] = |v|, L[2..] = lengths of the other slots in order.
        std::vector<std::pair<std::size_t, std::size_t>> ranges;
        for (int l : L) {
            std::size_t b = range_begin(n, l);
            ranges.emplace_back(b, b + static_cast<std::size_t>(std::pow(n, l) + 0.5));
        }
        int fixed = 0;
        for (int l : L) fixed += l;
        std::vector<std::size_t> cur(L.size());
        for (std::size_t i = 0; i < L.size(); ++i) cur[i] = ranges[i].first;
        while (true) {
            std::vector<std::pair<Key<K>, cplx>> row;
            for (const auto& [k, c] : g.terms()) {
                if (fixed + static_cast<int>(k[0].size()) > N) break;
                Key<K> key{};
                key[slot] = ws[cur[0]] + k[0] + ws[cur[1]];
                std::size_t o = 2;
                for (std::size_t s = 0; s < K; ++s)
                    if (s != slot) key[s] = ws[cur[o++]];
                row.emplace_back(std::move(key), c);
            }
            if (!row.empty()) raw.push_back(std::move(row));
            std::size_t i = 0;
            for (; i < cur.size(); ++i) {
                if (++cur[i] < ranges[i].second) break;
                cur[i] = ranges[i].first;
            }
            if (i == cur.size()) break;
        }
    }

    Presentation pres_;
    double tol_ = kRankTol;
    Echelon ech_;
    std::shared_ptr<CommutationSystem> rewrite_;
    std::vector<Key<K>> cols_;
    std::map<Key<K>, int, KeyLess<K>> index_;
    std::size_t placements_ = 0;
};

using IdealSpan = IdealSpanK<1>;
using TensorIdealSpan = IdealSpanK<2>;
using Tensor3IdealSpan = IdealSpanK<3>;

inline IdealSpan ideal_span(const Presentation& p, double tol = kRankTol) { return IdealSpan(p, tol); }
inline TensorIdealSpan tensor_ideal_span(const IdealSpan& I) {
    if (I.rewriting()) return TensorIdealSpan(I.presentation(), I.rewriting(), I.rank_tol());
    return TensorIdealSpan(I.presentation(), I.rank_tol(), Backend::Linear);
}

inline NCSeries normal_form(const NCSeries& a, const IdealSpan& I) { return I.normal_form(a); }

struct Membership {
    bool member;
    double residual;
};

template <std::size_t K>
Membership ideal_member(const Series<K>& a, const IdealSpanK<K>& I, double tol) {
    auto [m, r] = I.member(a, tol);
    return {m, r};
}

// Non-pivot words of degree <= maxdeg: a basis of the quotient in that range.
inline std::vector<Word> quotient_basis(const IdealSpan& I, int maxdeg) {
    std::vector<Word> out;
    for (auto& w : words_upto(I.presentation().ngens, std::min(maxdeg, I.presentation().trunc)))
        if (!I.is_pivot({w})) out.push_back(w);
    std::sort(out.begin(), out.end(), deglex_less);
    return out;
}

// Letters of a shifted by `offset` into an alphabet of size n.
inline NCSeries relabel(const NCSeries& a, int n, int offset) {
    NCSeries r(n, a.trunc());
    for (const auto& [k, c] : a.terms()) {
        Word w = k[0];
        for (auto& l : w) l = static_cast<char>(static_cast<unsigned char>(l) + offset);
        r.add_term({w}, c);
    }
    return r;
}

inline Presentation free_product(const Presentation& p1, const Presentation& p2) {
    if (p1.trunc != p2.trunc) throw DimensionError("free product of presentations with different truncation");
    std::vector<std::string> names = p1.names;
    for (const auto& nm : p2.names) {
        std::string x = nm;
        while (std::find(names.begin(), names.end(), x) != names.end()) x += "'";
        names.push_back(x);
    }
    int n = p1.ngens + p2.ngens;
    Presentation p(n, p1.trunc, names);
    auto embed = [n](const Relator& r, int offset) {
        Relator out{relabel(r.poly, n, offset), r.lead, r.analytic, r.label, {}, r.fixed_lead};
        if (r.source) out.source = [src = r.source, n, offset](int M) { return relabel(src(M), n, offset); };
        return out;
    };
    for (const auto& r : p1.relators) p.relators.push_back(embed(r, 0));
    for (const auto& r : p2.relators) p.relators.push_back(embed(r, p1.ngens));
    return p;
}

inline Presentation tensor_algebra(int dim, int N) {
    if (dim < 1) throw DimensionError("tensor algebra of a zero space");
    return Presentation(dim, N);
}

}  // namespace hfg
