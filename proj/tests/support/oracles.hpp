#ifndef AFFCM_TESTS_ORACLES_HPP
#define AFFCM_TESTS_ORACLES_HPP

// Brute-force reference computations. Everything here is written with plain
// loops over std::vector so it shares no code path with the library.

#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Rows = std::vector<std::vector<double>>;

inline double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(s);
}

/// d[i][j] = ||x_j - v_i||
inline Rows distances(const Rows& x, const Rows& v) {
    Rows d(v.size(), std::vector<double>(x.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) d[i][j] = dist(x[j], v[i]);
    return d;
}

inline std::vector<int> nearest(const Rows& d) {
    std::vector<int> out(d[0].size(), 0);
    for (std::size_t j = 0; j < out.size(); ++j)
        for (std::size_t i = 1; i < d.size(); ++i)
            if (d[i][j] < d[static_cast<std::size_t>(out[j])][j]) out[j] = static_cast<int>(i);
    return out;
}

inline double fuzzy_objective(const Rows& x, const Rows& u, const Rows& v, double m) {
    double s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j) s += std::pow(u[i][j], m) * std::pow(dist(x[j], v[i]), 2);
    return s;
}

inline double hard_objective(const Rows& x, const std::vector<int>& assign, const Rows& v) {
    double s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += std::pow(dist(x[j], v[static_cast<std::size_t>(assign[j])]), 2);
    return s;
}

inline double pc(const Rows& u) {
    double s = 0;
    for (const auto& row : u)
        for (double g : row) s += g * g;
    return s / static_cast<double>(u[0].size());
}

inline double dbi(const Rows& x, const std::vector<int>& assign, const Rows& v) {
    const std::size_t c = v.size();
    std::vector<double> scatter(c, 0.0);
    std::vector<int> size(c, 0);
    for (std::size_t j = 0; j < x.size(); ++j) {
        const auto k = static_cast<std::size_t>(assign[j]);
        scatter[k] += std::pow(dist(x[j], v[k]), 2);
        ++size[k];
    }
    for (std::size_t k = 0; k < c; ++k)
        if (size[k] > 0) scatter[k] /= size[k];
    double total = 0;
    for (std::size_t k = 0; k < c; ++k) {
        double worst = -1e300;
        for (std::size_t i = 0; i < c; ++i) {
            if (i == k) continue;
            worst = std::max(worst, (scatter[i] + scatter[k]) / std::pow(dist(v[i], v[k]), 2));
        }
        total += worst;
    }
    return total / static_cast<double>(c);
}

inline double xb(const Rows& x, const Rows& u, const Rows& v, double m) {
    double sep = 1e300;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k)
            if (i != k) sep = std::min(sep, std::pow(dist(v[i], v[k]), 2));
    return fuzzy_objective(x, u, v, m) / (static_cast<double>(x.size()) * sep);
}

/// ARI from explicit pair counting over all sample pairs.
inline double ari_pairs(const std::vector<int>& a, const std::vector<int>& b) {
    double both = 0, only_a = 0, only_b = 0, neither = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            const bool sa = a[i] == a[j];
            const bool sb = b[i] == b[j];
            if (sa && sb) ++both;
            else if (sa) ++only_a;
            else if (sb) ++only_b;
            else ++neither;
        }
    }
    const double num = 2.0 * (both * neither - only_a * only_b);
    const double den = (both + only_a) * (only_a + neither) + (both + only_b) * (only_b + neither);
    return den == 0 ? 1.0 : num / den;
}

/// NMI (arithmetic-mean normalization) from empirical probabilities.
inline double nmi(const std::vector<int>& a, const std::vector<int>& b) {
    const double n = static_cast<double>(a.size());
    std::map<int, double> pa, pb;
    std::map<std::pair<int, int>, double> pab;
    for (std::size_t i = 0; i < a.size(); ++i) {
        pa[a[i]] += 1;
        pb[b[i]] += 1;
        pab[{a[i], b[i]}] += 1;
    }
    for (auto& [k, p] : pa) p /= n;
    for (auto& [k, p] : pb) p /= n;
    for (auto& [k, p] : pab) p /= n;
    double ha = 0, hb = 0, mi = 0;
    for (auto& [k, p] : pa) ha -= p * std::log(p);
    for (auto& [k, p] : pb) hb -= p * std::log(p);
    for (auto& [k, p] : pab) mi += p * std::log(p / (pa[k.first] * pb[k.second]));
    if (ha + hb == 0) return 1.0;
    return 2.0 * mi / (ha + hb);
}

/// F* = sum over classes of (class share) * best F1 over clusters, by scanning samples.
inline double f_star(const std::vector<int>& cluster, const std::vector<int>& cls) {
    std::map<int, int> classes, clusters;
    for (int c : cls) classes[c] = 0;
    for (int k : cluster) clusters[k] = 0;
    double total = 0;
    for (auto& [c, unused] : classes) {
        double best = 0;
        double class_size = 0;
        for (int v : cls) class_size += (v == c);
        for (auto& [k, unused2] : clusters) {
            double hit = 0, cluster_size = 0;
            for (std::size_t j = 0; j < cls.size(); ++j) {
                cluster_size += (cluster[j] == k);
                hit += (cluster[j] == k && cls[j] == c);
            }
            if (hit == 0) continue;
            const double precision = hit / cluster_size;
            const double recall = hit / class_size;
            best = std::max(best, 2 * precision * recall / (precision + recall));
        }
        total += class_size / static_cast<double>(cls.size()) * best;
    }
    return total;
}

/// Upper alpha quantile of the studentized range (k groups, infinite df) over sqrt(2).
inline double studentized_range_q(int k, double alpha) {
    auto phi = [](double z) { return std::exp(-0.5 * z * z) / std::sqrt(2 * M_PI); };
    auto cdf_normal = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    auto range_cdf = [&](double q) {
        // P(range <= q) = k * int phi(z) [Phi(z + q) - Phi(z)]^(k-1) dz, composite Simpson on [-12, 12].
        const int steps = 4000;
        const double lo = -12, hi = 12, h = (hi - lo) / steps;
        double s = 0;
        for (int i = 0; i <= steps; ++i) {
            const double z = lo + i * h;
            const double f = phi(z) * std::pow(cdf_normal(z + q) - cdf_normal(z), k - 1);
            s += f * (i == 0 || i == steps ? 1 : (i % 2 ? 4 : 2));
        }
        return k * s * h / 3;
    };
    double lo = 0.0, hi = 10.0;
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (range_cdf(mid) < 1 - alpha ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) / std::sqrt(2.0);
}

}  // namespace oracle

#endif
