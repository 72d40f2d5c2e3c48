#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"

namespace hfg {

// Letters are stored as bytes 0..n-1; the empty word is the unit.
using Word = std::string;

inline bool deglex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

template <std::size_t K>
using Key = std::array<Word, K>;

template <std::size_t K>
std::size_t key_degree(const Key<K>& k) {
    std::size_t d = 0;
    for (const auto& w : k) d += w.size();
    return d;
}

// Total degree first, then componentwise degree-lexicographic.
template <std::size_t K>
struct KeyLess {
    bool operator()(const Key<K>& a, const Key<K>& b) const {
        std::size_t da = key_degree(a), db = key_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < K; ++i)
            if (a[i] != b[i]) return deglex_less(a[i], b[i]);
        return false;
    }
};

template <std::size_t K>
class Series {
public:
    using key_type = Key<K>;
    using map_type = std::map<key_type, cplx, KeyLess<K>>;

    Series() = default;
    Series(int ngens, int trunc, double drop = kSeriesDrop)
        : ngens_(ngens), trunc_(trunc), drop_(drop) {
        if (ngens < 0 || trunc < 0) throw DimensionError("negative ngens or truncation");
    }

    static Series unit(int ngens, int trunc, cplx c = 1.0) {
        Series s(ngens, trunc);
        s.add_term(key_type{}, c);
        return s;
    }

    int ngens() const { return ngens_; }
    int trunc() const { return trunc_; }
    double drop_tol() const { return drop_; }
    const map_type& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    cplx coef(const key_type& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? cplx{} : it->second;
    }
    cplx constant() const { return coef(key_type{}); }

    // Accumulates; words above the truncation are discarded, as are coefficients
    // with magnitude <= the drop tolerance (exact zeros by default).
    void add_term(const key_type& k, cplx c) {
        for (const auto& w : k)
            for (unsigned char l : w)
                if (static_cast<int>(l) >= ngens_) throw DimensionError("letter out of range");
        if (static_cast<int>(key_degree(k)) > trunc_) return;
        auto [it, fresh] = terms_.try_emplace(k, c);
        if (!fresh) it->second += c;
        if (std::abs(it->second) <= drop_) terms_.erase(it);
    }

    int degree() const {
        int d = -1;
        for (const auto& [k, c] : terms_) d = std::max(d, static_cast<int>(key_degree(k)));
        return d;
    }
    int min_degree() const {
        return terms_.empty() ? -1 : static_cast<int>(key_degree(terms_.begin()->first));
    }
    double max_abs() const {
        double m = 0;
        for (const auto& [k, c] : terms_) m = std::max(m, std::abs(c));
        return m;
    }

    Series truncated(int n) const {
        Series r(ngens_, std::min(n, trunc_), drop_);
        for (const auto& [k, c] : terms_)
            if (static_cast<int>(key_degree(k)) <= n) r.terms_.emplace(k, c);
        return r;
    }

    void require_compatible(const Series& o) const {
        if (ngens_ != o.ngens_ || trunc_ != o.trunc_)
            throw DimensionError("mismatched ngens or truncation");
    }

    Series& operator+=(const Series& o) {
        require_compatible(o);
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    Series& operator-=(const Series& o) {
        require_compatible(o);
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    Series& operator*=(cplx s) {
        map_type out;
        for (const auto& [k, c] : terms_)
            if (std::abs(c * s) > drop_) out.emplace(k, c * s);
        terms_ = std::move(out);
        return *this;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a) { return a *= -1.0; }
    friend Series operator*(cplx s, Series a) { return a *= s; }
    friend Series operator*(Series a, cplx s) { return a *= s; }

    friend Series operator*(const Series& a, const Series& b) {
        a.require_compatible(b);
        Series r(a.ngens_, a.trunc_, a.drop_);
        const int N = a.trunc_;
        for (const auto& [u, x] : a.terms_) {
            int du = static_cast<int>(key_degree(u));
            for (const auto& [v, y] : b.terms_) {
                if (du + static_cast<int>(key_degree(v)) > N) break;  // b is degree-ordered
                key_type w;
                for (std::size_t i = 0; i < K; ++i) w[i] = u[i] + v[i];
                auto [it, fresh] = r.terms_.try_emplace(std::move(w), x * y);
                if (!fresh) it->second += x * y;
            }
        }
        for (auto it = r.terms_.begin(); it != r.terms_.end();)
            it = std::abs(it->second) <= r.drop_ ? r.terms_.erase(it) : std::next(it);
        return r;
    }

    friend bool operator==(const Series& a, const Series& b) {
        return a.ngens_ == b.ngens_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
    }

private:
    int ngens_ = 0;
    int trunc_ = 0;
    double drop_ = kSeriesDrop;
    map_type terms_;
};

using NCSeries = Series<1>;
using TensorSeries = Series<2>;
using Tensor3Series = Series<3>;

template <std::size_t K>
Series<K> mul(const Series<K>& a, const Series<K>& b) { return a * b; }

inline NCSeries word_series(int ngens, int trunc, const Word& w, cplx c = 1.0) {
    NCSeries s(ngens, trunc);
    s.add_term({w}, c);
    return s;
}

// Generator with 0-based index i.
inline NCSeries gen(int ngens, int trunc, int i, cplx c = 1.0) {
    if (i < 0 || i >= ngens) throw DimensionError("generator index out of range");
    return word_series(ngens, trunc, Word(1, static_cast<char>(i)), c);
}

inline Word make_word(std::initializer_list<int> letters) {
    Word w;
    for (int l : letters) w.push_back(static_cast<char>(l));
    return w;
}

template <std::size_t K>
Series<K> embed(const NCSeries& a, std::size_t slot) {
    if (slot >= K) throw DimensionError("tensor slot out of range");
    Series<K> r(a.ngens(), a.trunc(), a.drop_tol());
    for (const auto& [k, c] : a.terms()) {
        Key<K> key{};
        key[slot] = k[0];
        r.add_term(key, c);
    }
    return r;
}

inline TensorSeries tensor_embed_left(const NCSeries& a) { return embed<2>(a, 0); }
inline TensorSeries tensor_embed_right(const NCSeries& a) { return embed<2>(a, 1); }
inline TensorSeries tensor_mul(const TensorSeries& x, const TensorSeries& y) { return x * y; }

// a ⊗ b as a two-fold tensor; degrees add.
inline TensorSeries tensor_product(const NCSeries& a, const NCSeries& b) {
    return tensor_embed_left(a) * tensor_embed_right(b);
}

struct EntireFn {
    std::string name;
    std::function<cplx(int)> taylor;
};

inline double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// z ↦ exp(λ z)
inline EntireFn exp_fn(cplx lambda = 1.0) {
    return {"exp", [lambda](int k) { return std::pow(lambda, k) / factorial(k); }};
}

// z ↦ sinh(ħ z)/sinh(ħ)
inline EntireFn sinh_quotient(cplx hbar) {
    cplx s = std::sinh(hbar);
    if (std::abs(s) < 1e-12) throw ParameterError("sinh(hbar) = 0");
    return {"sinh_q", [hbar, s](int k) {
                return k % 2 ? std::pow(hbar, k) / factorial(k) / s : cplx{};
            }};
}

// n-th derivative.
inline EntireFn derivative(const EntireFn& h, int n) {
    auto t = h.taylor;
    return {h.name + "^(" + std::to_string(n) + ")", [t, n](int k) {
                double f = 1;
                for (int i = 1; i <= n; ++i) f *= k + i;
                return t(k + n) * f;
            }};
}

template <std::size_t K>
Series<K> apply_entire(const EntireFn& h, const Series<K>& a) {
    if (std::abs(a.constant()) > kDropTol)
        throw UnsupportedInput("entire function of a series with nonzero constant term");
    Series<K> r = Series<K>::unit(a.ngens(), a.trunc(), h.taylor(0));
    Series<K> p = Series<K>::unit(a.ngens(), a.trunc());
    for (int k = 1; k <= a.trunc(); ++k) {
        p = p * a;
        if (p.is_zero()) break;
        cplx t = h.taylor(k);
        if (t != cplx{}) r += t * p;
    }
    return r;
}

inline Series<2> apply_entire_tensor(const EntireFn& h, const Series<2>& x) { return apply_entire(h, x); }

inline std::string letter_name(int l, const std::vector<std::string>* names) {
    if (names && l < static_cast<int>(names->size())) return (*names)[l];
    return "z" + std::to_string(l + 1);
}

inline std::string render_word(const Word& w, const std::vector<std::string>* names = nullptr) {
    if (w.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += "*";
        s += letter_name(static_cast<unsigned char>(w[i]), names);
    }
    return s;
}

template <std::size_t K>
std::string render(const Series<K>& a, const std::vector<std::string>* names = nullptr) {
    if (a.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : a.terms()) {
        if (!first) s += " + ";
        first = false;
        s += c.imag() == 0.0 ? fmt_cplx(c) : "(" + fmt_cplx(c) + ")";
        if (K == 1 && k[0].empty()) continue;
        s += " ";
        for (std::size_t i = 0; i < K; ++i) {
            if (i) s += " | ";
            s += render_word(k[i], names);
        }
    }
    return s;
}

}  // namespace hfg
