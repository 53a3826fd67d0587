#pragma once

#include "sentivol/types.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

// Histogram binning and plug-in mutual information / entropy (base 2) on
// paired real series.
namespace sentivol::infotheory {

enum class BinMode { equal_width, equal_frequency };

/// Sturges' rule, ceiled: smallest k with 2^(k-1) >= n, i.e. ceil(log2(n)+1).
/// Integer arithmetic, so exact powers of two cannot misround.
inline int sturges_bin_count(std::size_t n) {
    if (n == 0) throw domain_error("sturges_bin_count: n must be >= 1");
    return static_cast<int>(std::bit_width(n - 1)) + 1;
}

struct BinnedSeries {
    std::vector<double> edges;  // strictly increasing, length k+1
    std::vector<int> indices;   // per observation, in [0, k)
    int k = 0;
    bool collapsed = false;  // constant input collapsed to a single bin
};

/// k equal-width bins spanning [min, max]. The bin index is measured from the
/// nearer extreme, so negating the series mirrors every index bit-exactly.
/// Constant input collapses to k = 1 (flagged). Non-finite values are a
/// domain error; undefined (NaN) entries must be removed by the caller.
inline BinnedSeries bin_equal_width(const std::vector<double>& x, int k) {
    if (x.empty()) throw domain_error("bin_equal_width: empty series");
    if (k < 1) throw domain_error("bin_equal_width: k must be >= 1");
    for (double v : x)
        if (!std::isfinite(v)) throw domain_error("bin_equal_width: non-finite value");

    auto [mn_it, mx_it] = std::minmax_element(x.begin(), x.end());
    const double mn = *mn_it, mx = *mx_it;

    BinnedSeries out;
    if (mn == mx) {
        out.k = 1;
        out.collapsed = true;
        out.edges = {mn, mx};
        out.indices.assign(x.size(), 0);
        return out;
    }

    const double range = mx - mn;
    out.k = k;
    out.edges.resize(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) out.edges[static_cast<std::size_t>(j)] = mn + range * j / k;
    out.edges.front() = mn;
    out.edges.back() = mx;

    out.indices.reserve(x.size());
    for (double v : x) {
        const double dlo = v - mn;
        const double dhi = mx - v;
        int i;
        if (dlo <= dhi) {
            i = static_cast<int>(std::floor(dlo * k / range));
        } else {
            i = k - 1 - static_cast<int>(std::floor(dhi * k / range));
        }
        out.indices.push_back(std::clamp(i, 0, k - 1));
    }
    return out;
}

/// k roughly equal-population bins assigned by rank; sensitivity-analysis
/// alternative to equal-width.
inline BinnedSeries bin_equal_frequency(const std::vector<double>& x, int k) {
    if (x.empty()) throw domain_error("bin_equal_frequency: empty series");
    if (k < 1) throw domain_error("bin_equal_frequency: k must be >= 1");
    for (double v : x)
        if (!std::isfinite(v)) throw domain_error("bin_equal_frequency: non-finite value");

    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    BinnedSeries out;
    if (x[order.front()] == x[order.back()]) {
        out.k = 1;
        out.collapsed = true;
        out.edges = {x[order.front()], x[order.back()]};
        out.indices.assign(n, 0);
        return out;
    }
    out.k = k;
    out.indices.assign(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        int i = static_cast<int>(r * static_cast<std::size_t>(k) / n);
        out.indices[order[r]] = std::min(i, k - 1);
    }
    out.edges.resize(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        std::size_t pos = std::min(n - 1, static_cast<std::size_t>(j) * n / k);
        out.edges[static_cast<std::size_t>(j)] = x[order[pos]];
    }
    out.edges.back() = x[order.back()];
    return out;
}

inline BinnedSeries bin_series(const std::vector<double>& x, int k, BinMode mode) {
    return mode == BinMode::equal_width ? bin_equal_width(x, k) : bin_equal_frequency(x, k);
}

struct JointHistogram {
    std::vector<std::int64_t> counts;  // row-major, ks x kf
    int ks = 0, kf = 0;
    std::int64_t n = 0;
    std::vector<std::int64_t> row_sums;  // marginal of s
    std::vector<std::int64_t> col_sums;  // marginal of f

    std::int64_t at(int i, int j) const {
        return counts[static_cast<std::size_t>(i) * static_cast<std::size_t>(kf) +
                      static_cast<std::size_t>(j)];
    }
};

inline JointHistogram make_joint(const BinnedSeries& bs, const BinnedSeries& bf) {
    if (bs.indices.size() != bf.indices.size())
        throw error("make_joint: length mismatch");
    JointHistogram h;
    h.ks = bs.k;
    h.kf = bf.k;
    h.n = static_cast<std::int64_t>(bs.indices.size());
    h.counts.assign(static_cast<std::size_t>(bs.k) * static_cast<std::size_t>(bf.k), 0);
    h.row_sums.assign(static_cast<std::size_t>(bs.k), 0);
    h.col_sums.assign(static_cast<std::size_t>(bf.k), 0);
    for (std::size_t t = 0; t < bs.indices.size(); ++t) {
        int i = bs.indices[t], j = bf.indices[t];
        ++h.counts[static_cast<std::size_t>(i) * static_cast<std::size_t>(bf.k) +
                   static_cast<std::size_t>(j)];
        ++h.row_sums[static_cast<std::size_t>(i)];
        ++h.col_sums[static_cast<std::size_t>(j)];
    }
    return h;
}

namespace detail {

// Sum after sorting: the result depends only on the multiset of terms, so a
// transposed or mirrored histogram yields a bit-identical value.
inline double sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

/// Strip undefined (NaN) entries pairwise.
inline void defined_pairs(const std::vector<double>& x, const std::vector<double>& y,
                          std::vector<double>& xs, std::vector<double>& ys) {
    if (x.size() != y.size()) throw error("mutual_information: length mismatch");
    xs.clear();
    ys.clear();
    for (std::size_t t = 0; t < x.size(); ++t) {
        if (std::isnan(x[t]) || std::isnan(y[t])) continue;
        xs.push_back(x[t]);
        ys.push_back(y[t]);
    }
}

}  // namespace detail

/// Plug-in MI in bits over the joint histogram, 0*log(0) = 0. Never negative.
inline double mi_bits(const JointHistogram& h) {
    const double n = static_cast<double>(h.n);
    std::vector<double> terms;
    terms.reserve(h.counts.size());
    for (int i = 0; i < h.ks; ++i) {
        for (int j = 0; j < h.kf; ++j) {
            const std::int64_t c = h.at(i, j);
            if (c == 0) continue;
            const double p = static_cast<double>(c) / n;
            const double ps = static_cast<double>(h.row_sums[static_cast<std::size_t>(i)]) / n;
            const double pf = static_cast<double>(h.col_sums[static_cast<std::size_t>(j)]) / n;
            terms.push_back(p * std::log2(p / (ps * pf)));
        }
    }
    double s = detail::sorted_sum(terms);
    return s < 0.0 ? 0.0 : s;
}

inline double entropy_bits(const std::vector<std::int64_t>& counts, std::int64_t n) {
    std::vector<double> terms;
    terms.reserve(counts.size());
    for (std::int64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(n);
        terms.push_back(-p * std::log2(p));
    }
    double s = detail::sorted_sum(terms);
    return s < 0.0 ? 0.0 : s;
}

/// MI(x; y) in bits. Undefined entries are removed pairwise first; k defaults
/// to Sturges on the defined-pair count and applies to both series.
inline double mutual_information(const std::vector<double>& x, const std::vector<double>& y,
                                 std::optional<int> k = std::nullopt,
                                 BinMode mode = BinMode::equal_width) {
    std::vector<double> xs, ys;
    detail::defined_pairs(x, y, xs, ys);
    if (xs.size() < 2) throw domain_error("mutual_information: fewer than 2 defined pairs");
    const int kk = k ? *k : sturges_bin_count(xs.size());
    const auto bx = bin_series(xs, kk, mode);
    const auto by = bin_series(ys, kk, mode);
    return mi_bits(make_joint(bx, by));
}

/// Plug-in Shannon entropy of the binned marginal, bits.
inline double entropy(const std::vector<double>& x, std::optional<int> k = std::nullopt,
                      BinMode mode = BinMode::equal_width) {
    std::vector<double> xs;
    xs.reserve(x.size());
    for (double v : x)
        if (!std::isnan(v)) xs.push_back(v);
    if (xs.size() < 2) throw domain_error("entropy: fewer than 2 defined values");
    const int kk = k ? *k : sturges_bin_count(xs.size());
    const auto bx = bin_series(xs, kk, mode);
    std::vector<std::int64_t> counts(static_cast<std::size_t>(bx.k), 0);
    for (int i : bx.indices) ++counts[static_cast<std::size_t>(i)];
    return entropy_bits(counts, static_cast<std::int64_t>(bx.indices.size()));
}

}  // namespace sentivol::infotheory
