// Independent oracles for the test suites: direct per-pair betweenness,
// exhaustive partition search, exact discrete power-law sampling, and a
// chi-squared goodness-of-fit helper. Everything here recomputes from first
// principles and stays off the library's fast paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "netmorph/graph.hpp"
#include "netmorph/rng.hpp"

namespace oracles {

using netmorph::Graph;
using netmorph::node_id;

inline Graph from_pairs(std::size_t n, std::vector<netmorph::edge> edges,
                        bool directed = false) {
    return Graph::from_edges(n, std::move(edges), directed);
}

// Nodes 0-1-2 and 3-4-5 triangles, bridged by 2-3. |E| = 7.
inline Graph two_triangles_bridge() {
    return from_pairs(6, {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}, {2, 3}});
}

// BFS with shortest-path counting from one source.
struct PathCounts {
    std::vector<node_id> dist;
    std::vector<double> sigma;
};

inline PathCounts count_paths(const Graph& g, node_id source) {
    PathCounts pc;
    pc.dist.assign(g.node_count(), netmorph::kUnreachable);
    pc.sigma.assign(g.node_count(), 0.0);
    pc.dist[source] = 0;
    pc.sigma[source] = 1.0;
    std::vector<node_id> frontier{source};
    while (!frontier.empty()) {
        std::vector<node_id> next;
        for (node_id u : frontier)
            for (node_id v : g.neighbors(u)) {
                if (pc.dist[v] == netmorph::kUnreachable) {
                    pc.dist[v] = pc.dist[u] + 1;
                    next.push_back(v);
                }
            }
        // Count after levels settle so every same-level parent contributes.
        for (node_id u : frontier)
            for (node_id v : g.neighbors(u))
                if (pc.dist[v] == pc.dist[u] + 1)
                    pc.sigma[v] += pc.sigma[u];
        frontier = std::move(next);
    }
    return pc;
}

// Direct evaluation of the betweenness double sum: for every unordered
// reachable pair, the fraction of shortest paths crossing each edge, where a
// path crosses (u,v) iff dist_i(u) + 1 + dist_l(v) = dist_i(l) in some
// orientation. Path counts multiply across the two path halves.
inline std::map<std::pair<node_id, node_id>, double> direct_edge_betweenness(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<PathCounts> from(n);
    for (node_id s = 0; s < n; ++s)
        from[s] = count_paths(g, s);

    std::map<std::pair<node_id, node_id>, double> scores;
    for (const auto& e : g.edges())
        scores[e] = 0.0;

    for (node_id i = 0; i < n; ++i) {
        for (node_id l = i + 1; l < n; ++l) {
            if (from[i].dist[l] == netmorph::kUnreachable)
                continue;
            const double np = from[i].sigma[l];
            const node_id d_il = from[i].dist[l];
            for (auto& [e, score] : scores) {
                auto [u, v] = e;
                double np_e = 0.0;
                if (from[i].dist[u] != netmorph::kUnreachable &&
                    from[l].dist[v] != netmorph::kUnreachable &&
                    from[i].dist[u] + 1 + from[l].dist[v] == d_il)
                    np_e += from[i].sigma[u] * from[l].sigma[v];
                if (from[i].dist[v] != netmorph::kUnreachable &&
                    from[l].dist[u] != netmorph::kUnreachable &&
                    from[i].dist[v] + 1 + from[l].dist[u] == d_il)
                    np_e += from[i].sigma[v] * from[l].sigma[u];
                score += np_e / np;
            }
        }
    }
    return scores;
}

// Direct reading of the modularity sum for a labeling, no caches.
inline double direct_modularity(const Graph& g, const std::vector<node_id>& labels) {
    const double m = static_cast<double>(g.edge_count());
    node_id max_label = 0;
    for (node_id l : labels)
        max_label = std::max(max_label, l);
    std::vector<double> ls(max_label + 1, 0.0), ds(max_label + 1, 0.0);
    for (node_id u = 0; u < g.node_count(); ++u) {
        ds[labels[u]] += static_cast<double>(g.neighbors(u).size());
        for (node_id v : g.neighbors(u))
            if (u < v && labels[u] == labels[v])
                ls[labels[u]] += 1.0;
    }
    double q = 0.0;
    for (std::size_t s = 0; s <= max_label; ++s)
        q += ls[s] / m - (ds[s] / (2.0 * m)) * (ds[s] / (2.0 * m));
    return q;
}

// Exhaustive max-modularity over all set partitions (restricted growth
// strings); practical for n <= 10 or so.
inline double max_modularity_brute_force(const Graph& g) {
    const std::size_t n = g.node_count();
    std::vector<node_id> labels(n, 0);
    double best = -2.0;
    auto recurse = [&](auto&& self, std::size_t i, node_id max_used) -> void {
        if (i == n) {
            best = std::max(best, direct_modularity(g, labels));
            return;
        }
        for (node_id c = 0; c <= max_used + 1 && c < n; ++c) {
            labels[i] = c;
            self(self, i + 1, std::max(max_used, c));
        }
    };
    labels[0] = 0;
    recurse(recurse, 1, 0);
    return best;
}

// Exact sampler for the discrete power law P(k) = k^-gamma / zeta(gamma),
// k >= 1, by inverse CDF over a dense table. The invisible tail beyond the
// table (mass ~1e-6 and below) is handled by redrawing.
class PowerLawSampler {
public:
    explicit PowerLawSampler(double gamma, std::size_t table_size = 1u << 20)
        : cdf_(table_size) {
        long double z = 0.0L;
        for (std::size_t k = 1; k <= table_size; ++k)
            z += std::pow(static_cast<long double>(k), -static_cast<long double>(gamma));
        // integral tail bound keeps the normalizer honest
        const long double b = static_cast<long double>(table_size) + 0.5L;
        z += std::pow(b, 1.0L - static_cast<long double>(gamma)) /
             (static_cast<long double>(gamma) - 1.0L);
        long double acc = 0.0L;
        for (std::size_t k = 1; k <= table_size; ++k) {
            acc += std::pow(static_cast<long double>(k), -static_cast<long double>(gamma)) / z;
            cdf_[k - 1] = static_cast<double>(acc);
        }
    }

    std::size_t draw(netmorph::Rng& rng) const {
        for (;;) {
            double u = rng.uniform();
            if (u >= cdf_.back())
                continue; // tail beyond the table; redraw
            auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            return static_cast<std::size_t>(it - cdf_.begin()) + 1;
        }
    }

private:
    std::vector<double> cdf_;
};

inline double poisson_pmf(double lambda, std::size_t k) {
    return std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                    std::lgamma(static_cast<double>(k) + 1.0));
}

// Regularized upper incomplete gamma Q(a, x), series/continued-fraction split.
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0)
        return 1.0;
    if (x == 0.0)
        return 1.0;
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // P(a,x) by series, then complement
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15)
                break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - lg);
        return 1.0 - p;
    }
    // Lentz continued fraction for Q(a,x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15)
            break;
    }
    return std::exp(-x + a * std::log(x) - lg) * h;
}

struct Chi2Result {
    double stat = 0.0;
    std::size_t df = 0;
    double p_value = 0.0;
};

// Chi-squared test of an observed degree histogram against Poisson(lambda),
// merging bins from both ends until every expected count is >= 5.
inline Chi2Result chi2_vs_poisson(const std::map<std::size_t, std::uint64_t>& observed,
                                  std::size_t n, double lambda) {
    const std::size_t k_hi = static_cast<std::size_t>(lambda + 12.0 * std::sqrt(lambda)) + 2;
    std::vector<double> expected(k_hi + 1, 0.0);
    std::vector<double> obs(k_hi + 1, 0.0);
    double mass = 0.0;
    for (std::size_t k = 0; k < k_hi; ++k) {
        expected[k] = static_cast<double>(n) * poisson_pmf(lambda, k);
        mass += poisson_pmf(lambda, k);
    }
    expected[k_hi] = static_cast<double>(n) * std::max(0.0, 1.0 - mass); // tail bin
    for (const auto& [k, c] : observed)
        obs[std::min(k, k_hi)] += static_cast<double>(c);

    // merge adjacent cells until each bin expects at least 5
    std::vector<std::pair<double, double>> bins; // expected, observed
    double e_acc = 0.0, o_acc = 0.0;
    for (std::size_t k = 0; k <= k_hi; ++k) {
        e_acc += expected[k];
        o_acc += obs[k];
        if (e_acc >= 5.0) {
            bins.emplace_back(e_acc, o_acc);
            e_acc = o_acc = 0.0;
        }
    }
    if (e_acc > 0.0 || o_acc > 0.0) {
        if (bins.empty())
            bins.emplace_back(e_acc, o_acc);
        else {
            bins.back().first += e_acc;
            bins.back().second += o_acc;
        }
    }

    Chi2Result r;
    for (const auto& [e, o] : bins)
        r.stat += (o - e) * (o - e) / e;
    r.df = bins.size() - 1;
    r.p_value = gamma_q(static_cast<double>(r.df) / 2.0, r.stat / 2.0);
    return r;
}

} // namespace oracles
