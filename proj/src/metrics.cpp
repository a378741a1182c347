#include "netmorph/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "netmorph/rng.hpp"

namespace netmorph {

namespace {

std::string num(double x) {
    return nlohmann::json(x).dump(); // shortest round-trip representation
}

} // namespace

std::size_t worker_count() {
    if (const char* env = std::getenv("NETMORPH_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v >= 1)
            return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

namespace {

// Runs fn(block) for block = 0..n_blocks-1 on up to worker_count() threads.
// Callers merge per-block results in block order, so outputs do not depend
// on the worker count.
template <typename BlockFn>
void run_blocks(std::size_t n_blocks, BlockFn&& fn) {
    std::size_t workers = std::min(worker_count(), n_blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b)
            fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        threads.emplace_back([&] {
            for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1))
                fn(b);
        });
    for (auto& t : threads)
        t.join();
}

} // namespace

DegreeHistogram degree_histogram(const Graph& g) {
    return degree_histogram(g, g.directed() ? DegreeMode::Out : DegreeMode::Total);
}

DegreeHistogram degree_histogram(const Graph& g, DegreeMode mode) {
    DegreeHistogram h;
    h.n = g.node_count();
    h.mode = mode;
    for (node_id v = 0; v < g.node_count(); ++v)
        ++h.entries[degree(g, v, mode)];
    return h;
}

std::vector<CcdfPoint> ccdf(const DegreeHistogram& h) {
    if (h.n == 0)
        throw std::invalid_argument("ccdf of empty histogram");
    std::vector<CcdfPoint> points;
    points.reserve(h.entries.size());
    std::uint64_t at_least = 0;
    for (auto it = h.entries.rbegin(); it != h.entries.rend(); ++it) {
        at_least += it->second;
        points.push_back({it->first, static_cast<double>(at_least) / static_cast<double>(h.n)});
    }
    std::reverse(points.begin(), points.end());
    return points;
}

namespace {

// Hurwitz zeta sum_{j>=0} (a+j)^-s for s > 1: direct head plus
// Euler-Maclaurin tail.
double hurwitz_zeta(double s, double a) {
    constexpr int kHead = 64;
    double sum = 0.0;
    for (int j = 0; j < kHead; ++j)
        sum += std::pow(a + j, -s);
    const double b = a + kHead;
    sum += std::pow(b, 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(b, -s);
    sum += s * std::pow(b, -s - 1.0) / 12.0;
    sum -= s * (s + 1.0) * (s + 2.0) * std::pow(b, -s - 3.0) / 720.0;
    return sum;
}

struct Tail {
    std::vector<std::size_t> degrees; // distinct, ascending, all >= xmin >= 1
    std::vector<std::uint64_t> counts;
    std::uint64_t n = 0;
    double sum_ln_k = 0.0; // sum over nodes of ln(degree)
};

Tail make_tail(const DegreeHistogram& h, std::size_t xmin) {
    Tail t;
    for (const auto& [k, c] : h.entries) {
        if (k < xmin || k < 1 || c == 0)
            continue;
        t.degrees.push_back(k);
        t.counts.push_back(c);
        t.n += c;
        t.sum_ln_k += static_cast<double>(c) * std::log(static_cast<double>(k));
    }
    return t;
}

// Discrete MLE: maximize -n ln zeta(g, xmin) - g * sum(ln k). The likelihood
// is concave in g, so a ternary search suffices.
double mle_gamma(const Tail& tail, std::size_t xmin) {
    const double a = static_cast<double>(xmin);
    auto log_lik = [&](double g) {
        return -static_cast<double>(tail.n) * std::log(hurwitz_zeta(g, a)) - g * tail.sum_ln_k;
    };
    double lo = 1.000001, hi = 25.0;
    for (int iter = 0; iter < 120; ++iter) {
        double m1 = lo + (hi - lo) / 3.0;
        double m2 = hi - (hi - lo) / 3.0;
        if (log_lik(m1) < log_lik(m2))
            lo = m1;
        else
            hi = m2;
    }
    return (lo + hi) / 2.0;
}

// KS distance between the empirical tail CCDF and the zeta-normalized model
// CCDF, evaluated at the observed degrees.
double ks_distance(const Tail& tail, double gamma, std::size_t xmin) {
    if (!(gamma > 1.000001))
        return 1.0; // model not normalizable; worst diagnostic
    const double z0 = hurwitz_zeta(gamma, static_cast<double>(xmin));
    double worst = 0.0;
    std::uint64_t at_least = tail.n;
    for (std::size_t i = 0; i < tail.degrees.size(); ++i) {
        double emp = static_cast<double>(at_least) / static_cast<double>(tail.n);
        double model = hurwitz_zeta(gamma, static_cast<double>(tail.degrees[i])) / z0;
        worst = std::max(worst, std::abs(emp - model));
        at_least -= tail.counts[i];
    }
    return std::min(worst, 1.0);
}

double regression_gamma(const DegreeHistogram& h, std::size_t xmin) {
    // log-log CCDF points at the observed degrees >= xmin; slope ~ -(gamma-1).
    // The normalizer shifts all y equally, so it cancels out of the slope.
    auto points = ccdf(h);
    std::vector<double> xs, ys;
    for (const auto& p : points) {
        if (p.k < xmin || p.k < 1)
            continue;
        xs.push_back(std::log(static_cast<double>(p.k)));
        ys.push_back(std::log(p.fraction));
    }
    double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    double slope = sxy / sxx;
    return 1.0 - slope;
}

PowerLawFit fit_at(const DegreeHistogram& h, FitMethod method, std::size_t xmin) {
    Tail tail = make_tail(h, xmin);
    if (tail.n == 0)
        throw fit_error("empty tail");
    if (tail.degrees.size() < 2)
        throw fit_error("zero variance");
    PowerLawFit fit;
    fit.method = method;
    fit.xmin = xmin;
    fit.n_tail = tail.n;
    fit.gamma = method == FitMethod::Mle ? mle_gamma(tail, xmin) : regression_gamma(h, xmin);
    fit.ks_stat = ks_distance(tail, fit.gamma, xmin);
    return fit;
}

} // namespace

PowerLawFit fit_power_law(const DegreeHistogram& h, FitMethod method, XminPolicy xmin_policy) {
    if (xmin_policy.fixed_xmin)
        return fit_at(h, method, std::max<std::size_t>(*xmin_policy.fixed_xmin, 1));

    // Scan every observed degree as an xmin candidate, keep the minimum-KS
    // fit; ties go to the smallest xmin.
    std::optional<PowerLawFit> best;
    for (const auto& [k, c] : h.entries) {
        if (k < 1 || c == 0)
            continue;
        PowerLawFit fit;
        try {
            fit = fit_at(h, method, k);
        } catch (const fit_error&) {
            continue; // tail too short from here on
        }
        if (!best || fit.ks_stat < best->ks_stat)
            best = fit;
    }
    if (!best)
        throw fit_error(h.entries.empty() ? "empty tail" : "zero variance");
    return *best;
}

double clustering_coefficient(const Graph& input) {
    if (input.node_count() == 0)
        throw std::invalid_argument("clustering coefficient of empty graph");
    Graph sym;
    const Graph* g = &input;
    if (input.directed()) {
        sym = undirected_view(input);
        g = &sym;
    }
    double total = 0.0;
    for (node_id u = 0; u < g->node_count(); ++u) {
        auto nu = g->neighbors(u);
        std::size_t d = nu.size();
        if (d < 2)
            continue;
        // sum over neighbors v of |N(u) & N(v)| counts each triangle edge
        // among N(u) twice, which is exactly 2 * triangles(u).
        std::uint64_t twice_triangles = 0;
        for (node_id v : nu) {
            auto nv = g->neighbors(v);
            auto a = nu.begin();
            auto b = nv.begin();
            while (a != nu.end() && b != nv.end()) {
                if (*a < *b)
                    ++a;
                else if (*b < *a)
                    ++b;
                else {
                    ++twice_triangles;
                    ++a;
                    ++b;
                }
            }
        }
        total += static_cast<double>(twice_triangles) /
                 (static_cast<double>(d) * static_cast<double>(d - 1));
    }
    return total / static_cast<double>(g->node_count());
}

double closeness_centrality(const Graph& g, node_id v) {
    auto dist = bfs_distances(g, v, Orientation::Out);
    std::uint64_t sum = 0;
    std::size_t reachable = 0;
    for (node_id d : dist) {
        if (d == kUnreachable)
            continue;
        ++reachable;
        sum += d;
    }
    if (reachable <= 1)
        return 0.0;
    return static_cast<double>(reachable - 1) / static_cast<double>(sum);
}

HopPlot hop_plot(const Graph& input, double q, HopPlotMode mode) {
    if (!(q > 0.0 && q <= 1.0))
        throw std::invalid_argument("q must be in (0,1]");
    if (input.node_count() < 2)
        throw std::invalid_argument("hop plot needs at least 2 nodes");

    Graph sym;
    const Graph* g = &input;
    if (input.directed()) {
        sym = undirected_view(input);
        g = &sym;
    }
    const std::size_t n = g->node_count();

    std::vector<node_id> sources;
    bool exact = !mode.sources || *mode.sources >= n;
    if (exact) {
        sources.resize(n);
        std::iota(sources.begin(), sources.end(), node_id{0});
    } else {
        // Seeded partial Fisher-Yates: s distinct uniform sources.
        std::vector<node_id> ids(n);
        std::iota(ids.begin(), ids.end(), node_id{0});
        Rng rng(mode.seed);
        const std::size_t s = *mode.sources;
        for (std::size_t i = 0; i < s; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
            std::swap(ids[i], ids[j]);
        }
        sources.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(s));
    }

    const std::size_t n_blocks = std::min<std::size_t>(64, sources.size());
    std::vector<std::vector<std::uint64_t>> partials(n_blocks);
    run_blocks(n_blocks, [&](std::size_t block) {
        auto& counts = partials[block];
        std::vector<node_id> dist;
        for (std::size_t i = block; i < sources.size(); i += n_blocks) {
            dist = bfs_distances(*g, sources[i], Orientation::Undirected);
            for (node_id d : dist) {
                if (d == kUnreachable || d == 0)
                    continue;
                if (counts.size() < d)
                    counts.resize(d, 0);
                ++counts[d - 1];
            }
        }
    });

    std::vector<std::uint64_t> at_exactly;
    for (const auto& partial : partials) {
        if (at_exactly.size() < partial.size())
            at_exactly.resize(partial.size(), 0);
        for (std::size_t h = 0; h < partial.size(); ++h)
            at_exactly[h] += partial[h];
    }

    // Ordered-pair counts from BFS; scale sampled runs up to the full node
    // set, then halve for the unordered reporting convention.
    const double scale =
        (static_cast<double>(n) / static_cast<double>(sources.size())) * 0.5;

    HopPlot hp;
    hp.q = q;
    hp.h_max = at_exactly.size();
    if (hp.h_max == 0)
        throw std::domain_error("no reachable pairs");
    hp.g.resize(hp.h_max);
    double running = 0.0;
    for (std::size_t h = 0; h < hp.h_max; ++h) {
        running += static_cast<double>(at_exactly[h]) * scale;
        hp.g[h] = running;
    }
    hp.total_pairs = hp.g.back();

    const double target = q * hp.total_pairs;
    std::size_t h_hi = 1;
    while (hp.g_at(h_hi) < target)
        ++h_hi;
    const double below = hp.g_at(h_hi - 1);
    hp.effective_diameter =
        static_cast<double>(h_hi - 1) + (target - below) / (hp.g_at(h_hi) - below);
    return hp;
}

void write_degree_pdf_csv(std::ostream& out, const DegreeHistogram& h) {
    out << "k,pk\n";
    for (const auto& [k, c] : h.entries)
        out << k << ',' << num(static_cast<double>(c) / static_cast<double>(h.n)) << '\n';
}

void write_degree_ccdf_csv(std::ostream& out, const DegreeHistogram& h) {
    out << "k,ccdf\n";
    for (const auto& p : ccdf(h))
        out << p.k << ',' << num(p.fraction) << '\n';
}

void write_hop_plot_csv(std::ostream& out, const HopPlot& hp) {
    out << "h,g_h,fraction\n";
    for (std::size_t h = 1; h <= hp.h_max; ++h)
        out << h << ',' << num(hp.g_at(h)) << ',' << num(hp.g_at(h) / hp.total_pairs) << '\n';
}

std::string fit_method_name(FitMethod m) {
    return m == FitMethod::Mle ? "mle" : "ccdf-regression";
}

std::string fit_report_json(const PowerLawFit& fit) {
    nlohmann::ordered_json j;
    j["gamma"] = fit.gamma;
    j["xmin"] = fit.xmin;
    j["ks"] = fit.ks_stat;
    j["method"] = fit_method_name(fit.method);
    j["n_tail"] = fit.n_tail;
    return j.dump();
}

std::string fit_report_json_error(const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = message;
    return j.dump();
}

} // namespace netmorph
