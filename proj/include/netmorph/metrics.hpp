#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "netmorph/graph.hpp"

namespace netmorph {

class fit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DegreeHistogram {
    std::map<std::size_t, std::uint64_t> entries; // degree -> node count
    std::size_t n = 0;                            // total nodes
    DegreeMode mode = DegreeMode::Total;
};

// Out-degree by default for directed graphs, total otherwise.
DegreeHistogram degree_histogram(const Graph& g);
DegreeHistogram degree_histogram(const Graph& g, DegreeMode mode);

struct CcdfPoint {
    std::size_t k;
    double fraction; // share of nodes with degree >= k
};

// Non-increasing in k; first point is always 1. For P(k) ~ k^-gamma the
// tail behaves as k^-(gamma-1), which is what the regression fit slopes on.
std::vector<CcdfPoint> ccdf(const DegreeHistogram& h);

enum class FitMethod { Mle, CcdfRegression };

struct XminPolicy {
    static XminPolicy fixed(std::size_t k) { return {k}; }
    static XminPolicy ks_scan() { return {std::nullopt}; }
    std::optional<std::size_t> fixed_xmin; // nullopt -> scan for min-KS xmin
};

struct PowerLawFit {
    double gamma = 0.0;
    std::size_t xmin = 1;
    double ks_stat = 0.0;
    FitMethod method = FitMethod::Mle;
    std::size_t n_tail = 0;
};

// Discrete power-law exponent on the tail k >= xmin. Zero-degree nodes are
// excluded. Mle maximizes the zeta-normalized likelihood; CcdfRegression
// fits a least-squares line to the log-log CCDF and returns 1 - slope.
// Throws fit_error on an empty or zero-variance tail.
PowerLawFit fit_power_law(const DegreeHistogram& h, FitMethod method, XminPolicy xmin_policy);

// Average of the local coefficient 2*tri(v)/(d(d-1)); nodes with degree < 2
// contribute 0. Directed input is symmetrized first.
double clustering_coefficient(const Graph& g);

// (r-1)/sum(dist) over the node's reachable set of size r; 0 when isolated.
// Directed graphs use out-reachability.
double closeness_centrality(const Graph& g, node_id v);

struct HopPlotMode {
    static HopPlotMode exact() { return {}; }
    static HopPlotMode sample(std::size_t sources, std::uint64_t seed) {
        return {sources, seed};
    }
    std::optional<std::size_t> sources; // nullopt -> BFS from every node
    std::uint64_t seed = 0;
};

// Default source budget for sampled hop plots on large graphs.
constexpr std::size_t kDefaultHopPlotSources = 256;

struct HopPlot {
    // g[h-1] = connected unordered pairs at distance <= h, h = 1..h_max.
    // Sampled mode scales per-source counts by node_count/sources, so the
    // entries are fractional; exact mode entries are integral.
    std::vector<double> g;
    std::size_t h_max = 0;
    double effective_diameter = 0.0;
    double q = 0.9;
    double total_pairs = 0.0; // g[h_max-1]

    double g_at(std::size_t h) const { return h == 0 ? 0.0 : g[h - 1]; }
};

// Cumulative reachable-pair counts and the interpolated hop count at which
// fraction q of connected pairs can reach each other. Directed graphs are
// symmetrized first; pair counts use the unordered convention.
HopPlot hop_plot(const Graph& g, double q, HopPlotMode mode = HopPlotMode::exact());

// CSV emitters. Headers are fixed: "k,pk" / "k,ccdf" / "h,g_h,fraction".
void write_degree_pdf_csv(std::ostream& out, const DegreeHistogram& h);
void write_degree_ccdf_csv(std::ostream& out, const DegreeHistogram& h);
void write_hop_plot_csv(std::ostream& out, const HopPlot& hp);

std::string fit_method_name(FitMethod m);
std::string fit_report_json(const PowerLawFit& fit);
std::string fit_report_json_error(const std::string& message);

// Worker count for per-source BFS fan-out: NETMORPH_THREADS when set,
// hardware concurrency otherwise. Results never depend on it.
std::size_t worker_count();

} // namespace netmorph
