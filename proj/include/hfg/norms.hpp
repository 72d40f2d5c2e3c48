#pragma once

// Köthe-type weighted norms on coefficient data, and an empirical
// submultiplicativity test. All evaluators work on finitely supported data.

#include <cmath>
#include <functional>
#include <map>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "lie.hpp"
#include "series.hpp"

namespace hfg {

// Neumaier summation; the result does not depend on how terms cancel.
class CompensatedSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) comp_ += (sum_ - t) + x;
        else comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0, comp_ = 0;
};

// Exact products up to 20!, lgamma beyond.
inline double log_factorial(int n) {
    if (n < 0) throw ParameterError("negative factorial");
    if (n <= 20) return std::log(factorial(n));
    return std::lgamma(n + 1.0);
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (n <= 60) {
        double b = 1;
        for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
        return std::round(b);
    }
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

// |c| · exp(logw), avoiding overflow in the weight.
inline double weighted(cplx c, double logw) {
    double a = std::abs(c);
    return a == 0 ? 0.0 : std::exp(std::log(a) + logw);
}

inline void require_positive(double r, const char* what) {
    if (!(r > 0)) throw ParameterError(std::string(what) + " must be positive");
}

// ‖a‖_ρ = Σ |c_α| ρ^{|α|}. Works for tensor series too (total degree).
template <std::size_t K>
double norm_free(const Series<K>& a, double rho) {
    require_positive(rho, "rho");
    CompensatedSum s;
    const double lr = std::log(rho);
    for (const auto& [k, c] : a.terms()) s.add(weighted(c, key_degree(k) * lr));
    return s.value();
}

// ‖a‖_{r,s} = Σ |a_n| r^n / n!^s
inline double norm_power_series(const std::vector<cplx>& a, double r, double s) {
    require_positive(r, "r");
    if (s < 0) throw ParameterError("s must be non-negative");
    CompensatedSum acc;
    for (std::size_t n = 0; n < a.size(); ++n)
        acc.add(weighted(a[n], n * std::log(r) - s * log_factorial(static_cast<int>(n))));
    return acc.value();
}

// ‖c‖'_{r,s} = Σ |c_ij| r^{i+j} / (i! j!)^s
inline double norm_power_series_tensor(const std::map<std::pair<int, int>, cplx>& c, double r, double s) {
    require_positive(r, "r");
    if (s < 0) throw ParameterError("s must be non-negative");
    CompensatedSum acc;
    for (const auto& [ij, v] : c) {
        auto [i, j] = ij;
        acc.add(weighted(v, (i + j) * std::log(r) - s * (log_factorial(i) + log_factorial(j))));
    }
    return acc.value();
}

// Coefficients of Δ(x^n) = Σ_j C(n,j) x^{n-j} ⊗ x^j.
inline std::map<std::pair<int, int>, cplx> delta_power(int n) {
    std::map<std::pair<int, int>, cplx> c;
    for (int j = 0; j <= n; ++j) c[{n - j, j}] = binomial(n, j);
    return c;
}

// The continuity bound 2^{n(s+1)} r^n / n!^s for ‖Δ(x^n)‖'_{r,s}.
inline double delta_power_bound(int n, double r, double s) {
    return std::exp(n * (s + 1) * std::log(2.0) + n * std::log(r) - s * log_factorial(n));
}

namespace detail {
inline void check_len(const MultiIndex& a, const std::vector<int>& w) {
    if (a.size() != w.size())
        throw DimensionError("multi-index of length " + std::to_string(a.size()) + " against " +
                             std::to_string(w.size()) + " weights");
}
inline int abs_index(const MultiIndex& a) {
    int n = 0;
    for (int x : a) n += x;
    return n;
}
// log of r^{|α|} / Π α_i!^{w_i - 1}
inline double log_pbw_weight(const MultiIndex& a, double r, const std::vector<int>& w) {
    double l = abs_index(a) * std::log(r);
    for (std::size_t i = 0; i < a.size(); ++i) l -= (w[i] - 1) * log_factorial(a[i]);
    return l;
}
}  // namespace detail

inline void require_weights(const std::vector<int>& w) {
    for (int x : w)
        if (x < 1) throw ParameterError("weights must be integers >= 1");
}

// ‖a‖_r = Σ |c_α| r^{|α|} / Π α_i!^{w_i-1}, over a PBW basis adapted to the
// lower central series.
inline double norm_pbw(const PBWCoeffs& c, double r, const std::vector<int>& w) {
    require_positive(r, "r");
    require_weights(w);
    CompensatedSum acc;
    for (const auto& [a, v] : c) {
        detail::check_len(a, w);
        acc.add(weighted(v, detail::log_pbw_weight(a, r, w)));
    }
    return acc.value();
}

// ‖a‖'_r = Σ |c_α| α! w(α)^{-w(α)} r^{w(α)}, with α! = Π α_i! and 0^0 = 1.
inline double norm_pbw_alt(const PBWCoeffs& c, double r, const std::vector<int>& w) {
    require_positive(r, "r");
    require_weights(w);
    CompensatedSum acc;
    for (const auto& [a, v] : c) {
        detail::check_len(a, w);
        int wa = 0;
        double l = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            wa += w[i] * a[i];
            l += log_factorial(a[i]);
        }
        if (wa > 0) l += wa * (std::log(r) - std::log(static_cast<double>(wa)));
        acc.add(weighted(v, l));
    }
    return acc.value();
}

// Index of the basis u^σ_ij e^α f^β of a connected linear group.
struct ConnectedIndex {
    int sigma = 0, i = 0, j = 0;
    MultiIndex alpha, beta;
    auto operator<=>(const ConnectedIndex&) const = default;
};

using ConnectedCoeffs = std::map<ConnectedIndex, cplx>;
using ConnectedSupport = std::set<std::pair<int, MultiIndex>>;  // (σ, β)

// ‖a‖_{r,F}: only indices with (σ,β) ∈ F contribute.
inline double norm_connected(const ConnectedCoeffs& c, double r, const ConnectedSupport& F,
                             const std::vector<int>& w) {
    require_positive(r, "r");
    require_weights(w);
    CompensatedSum acc;
    for (const auto& [ix, v] : c) {
        if (!F.count({ix.sigma, ix.beta})) continue;
        detail::check_len(ix.alpha, w);
        acc.add(weighted(v, detail::log_pbw_weight(ix.alpha, r, w)));
    }
    return acc.value();
}

// ‖a‖_F = Σ |a_s| e^{ℓ(s)} on a semigroup or group algebra.
template <class G>
double norm_length(const std::map<G, cplx>& a, const std::function<double(const G&)>& ell) {
    CompensatedSum acc;
    for (const auto& [g, c] : a) acc.add(weighted(c, ell(g)));
    return acc.value();
}

// sup ‖ab‖ / (‖a‖‖b‖) over sampled pairs, with the witnessing pair.
template <class T>
struct SubmultResult {
    double max_ratio = 0;
    int samples = 0;
    T a{}, b{};
};

template <class T, class Norm, class Mul, class Sampler>
SubmultResult<T> submult_test(Norm&& norm, Mul&& mul, Sampler&& sample, int count) {
    SubmultResult<T> res;
    for (int t = 0; t < count; ++t) {
        T a = sample(), b = sample();
        double na = norm(a), nb = norm(b);
        if (na == 0 || nb == 0) continue;
        double q = norm(mul(a, b)) / (na * nb);
        ++res.samples;
        if (q > res.max_ratio) {
            res.max_ratio = q;
            res.a = a;
            res.b = b;
        }
    }
    return res;
}

// Product of PBW-coordinate elements of U(g), by rewriting.
inline PBWCoeffs pbw_multiply(PBWRewriter& rw, const PBWCoeffs& a, const PBWCoeffs& b) {
    PBWCoeffs out;
    for (const auto& [x, c] : a)
        for (const auto& [y, d] : b)
            for (const auto& [u, e] : rw.word_nf(rw.word_of(x) + rw.word_of(y))) out[rw.alpha_of(u)] += c * d * e;
    for (auto it = out.begin(); it != out.end();) it = it->second == cplx{} ? out.erase(it) : std::next(it);
    return out;
}

enum class NormFamily { FreeEntire, PowerSeries, PowerSeriesTensor, NilpotentPBW, AlternativePBW, Connected, LengthFn };

inline NormFamily parse_norm_family(const std::string& s) {
    static const std::map<std::string, NormFamily> names{
        {"free", NormFamily::FreeEntire},          {"power", NormFamily::PowerSeries},
        {"power-tensor", NormFamily::PowerSeriesTensor}, {"pbw", NormFamily::NilpotentPBW},
        {"pbw-alt", NormFamily::AlternativePBW},   {"connected", NormFamily::Connected},
        {"length", NormFamily::LengthFn}};
    auto it = names.find(s);
    if (it == names.end()) throw ParameterError("unknown norm family '" + s + "'");
    return it->second;
}

}  // namespace hfg
