#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "core.hpp"

namespace hfg {

// Sparse row, entries sorted by descending column.
using SparseRow = std::vector<std::pair<int, cplx>>;

inline double row_max(const SparseRow& r) {
    double m = 0;
    for (const auto& e : r) m = std::max(m, std::abs(e.second));
    return m;
}

// a - s*b over descending-column sparse rows.
inline SparseRow axpy_row(const SparseRow& a, cplx s, const SparseRow& b, double drop) {
    SparseRow out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first > b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first > a[i].first) {
            cplx c = -s * b[j].second;
            if (std::abs(c) >= drop) out.emplace_back(b[j].first, c);
            ++j;
        } else {
            cplx c = a[i].second - s * b[j].second;
            if (std::abs(c) >= drop) out.emplace_back(a[i].first, c);
            ++i, ++j;
        }
    }
    return out;
}

// Row echelon basis with one pivot per row at its greatest column.
// Columns are processed from the greatest down; within a column the row
// with the largest entry is the pivot (partial pivoting).
class Echelon {
public:
    Echelon() = default;
    explicit Echelon(double rank_tol, double drop = kDropTol) : tol_(rank_tol), drop_(drop) {}

    void build(std::vector<SparseRow> input, bool reduce_fully = true) {
        rows_.clear();
        pivot_of_.clear();
        std::map<int, std::vector<SparseRow>, std::greater<int>> bucket;
        for (auto& r : input) {
            std::sort(r.begin(), r.end(), [](auto& x, auto& y) { return x.first > y.first; });
            SparseRow merged;
            for (auto& e : r) {
                if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
                else merged.push_back(e);
            }
            double m = row_max(merged);
            if (m < tol_) continue;
            SparseRow clean;
            for (auto& e : merged)
                if (std::abs(e.second / m) >= drop_) clean.emplace_back(e.first, e.second / m);
            int lead = clean.front().first;
            bucket[lead].push_back(std::move(clean));
        }
        while (!bucket.empty()) {
            auto node = bucket.extract(bucket.begin());
            int col = node.key();
            auto& rows = node.mapped();
            std::size_t best = 0;
            for (std::size_t i = 1; i < rows.size(); ++i)
                if (std::abs(rows[i].front().second) > std::abs(rows[best].front().second)) best = i;
            bool have_pivot = std::abs(rows[best].front().second) >= tol_;
            SparseRow piv;
            if (have_pivot) {
                piv = std::move(rows[best]);
                cplx p = piv.front().second;
                for (auto& e : piv) e.second /= p;
                piv.front().second = 1.0;
            }
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (have_pivot && i == best) continue;
                SparseRow r;
                if (have_pivot) {
                    r = axpy_row(rows[i], rows[i].front().second, piv, drop_);
                    if (!r.empty() && r.front().first == col) r.erase(r.begin());
                } else {
                    r.assign(rows[i].begin() + 1, rows[i].end());  // sub-tolerance entry treated as zero
                }
                if (r.empty() || row_max(r) < tol_) continue;
                bucket[r.front().first].push_back(std::move(r));
            }
            if (have_pivot) {
                pivot_of_[col] = static_cast<int>(rows_.size());
                rows_.push_back(std::move(piv));
            }
        }
        if (reduce_fully) back_substitute();
    }

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseRow>& rows() const { return rows_; }
    bool is_pivot(int col) const { return pivot_of_.count(col) != 0; }
    std::vector<int> pivots() const {
        std::vector<int> p;
        for (auto& [c, i] : pivot_of_) p.push_back(c);
        return p;
    }

    // Descending sweep: eliminate every pivot column. Canonical result.
    SparseRow reduce(const SparseRow& v) const {
        std::map<int, cplx, std::greater<int>> acc;
        for (auto& e : v) acc[e.first] += e.second;
        SparseRow out;
        while (!acc.empty()) {
            auto it = acc.begin();
            int col = it->first;
            cplx c = it->second;
            acc.erase(it);
            if (std::abs(c) < drop_) continue;
            auto p = pivot_of_.find(col);
            if (p == pivot_of_.end()) {
                out.emplace_back(col, c);
                continue;
            }
            const auto& row = rows_[p->second];
            for (std::size_t k = 1; k < row.size(); ++k) acc[row[k].first] -= c * row[k].second;
        }
        return out;
    }

private:
    void back_substitute() {
        std::vector<std::pair<int, int>> order(pivot_of_.begin(), pivot_of_.end());
        std::sort(order.begin(), order.end());
        std::map<int, int> done;
        for (auto& [col, idx] : order) {
            SparseRow tail(rows_[idx].begin() + 1, rows_[idx].end());
            SparseRow red = reduce_with(tail, done);
            SparseRow full{{col, 1.0}};
            full.insert(full.end(), red.begin(), red.end());
            rows_[idx] = std::move(full);
            done[col] = idx;
        }
    }

    SparseRow reduce_with(const SparseRow& v, const std::map<int, int>& piv) const {
        bool any = false;
        for (auto& e : v)
            if (piv.count(e.first)) { any = true; break; }
        if (!any) return v;
        std::map<int, cplx, std::greater<int>> acc;
        for (auto& e : v) acc[e.first] += e.second;
        SparseRow out;
        while (!acc.empty()) {
            auto it = acc.begin();
            int col = it->first;
            cplx c = it->second;
            acc.erase(it);
            if (std::abs(c) < drop_) continue;
            auto p = piv.find(col);
            if (p == piv.end()) {
                out.emplace_back(col, c);
                continue;
            }
            const auto& row = rows_[p->second];  // already reduced: tail has no pivots
            for (std::size_t k = 1; k < row.size(); ++k) acc[row[k].first] -= c * row[k].second;
        }
        return out;
    }

    double tol_ = kRankTol;
    double drop_ = kDropTol;
    std::vector<SparseRow> rows_;
    std::map<int, int> pivot_of_;
};

}  // namespace hfg
