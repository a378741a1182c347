// netmorph: generate model networks, ingest SNAP edge lists, and compute
// degree-distribution, diameter, and community-structure diagnostics.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "netmorph/community.hpp"
#include "netmorph/generators.hpp"
#include "netmorph/graph.hpp"
#include "netmorph/metrics.hpp"
#include "netmorph/report.hpp"

namespace nm = netmorph;
using nlohmann::ordered_json;

namespace {

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        auto d = std::chrono::steady_clock::now() - start_;
        return std::chrono::duration<double, std::milli>(d).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct CommonOptions {
    std::string input;
    bool directed = false;
    std::uint64_t seed = 0;
    double q = 0.9;
    std::string fit_method = "mle";
    std::string xmin = "scan"; // "scan" or an integer
    std::string hop_mode = "auto"; // auto|exact|sample
    std::size_t sources = nm::kDefaultHopPlotSources;
    std::string out_dir = ".";
};

nm::FitMethod parse_fit_method(const std::string& name) {
    if (name == "mle")
        return nm::FitMethod::Mle;
    if (name == "ccdf")
        return nm::FitMethod::CcdfRegression;
    throw CLI::ValidationError("--fit-method must be mle or ccdf");
}

nm::XminPolicy parse_xmin(const std::string& value) {
    if (value == "scan")
        return nm::XminPolicy::ks_scan();
    return nm::XminPolicy::fixed(std::stoull(value));
}

// Exact up to this size, sampled beyond; matches the stats defaults.
constexpr std::size_t kExactHopPlotLimit = 50000;

nm::HopPlotMode resolve_hop_mode(const CommonOptions& opt, std::size_t node_count) {
    if (opt.hop_mode == "exact")
        return nm::HopPlotMode::exact();
    if (opt.hop_mode == "sample")
        return nm::HopPlotMode::sample(opt.sources, opt.seed);
    if (node_count > kExactHopPlotLimit)
        return nm::HopPlotMode::sample(opt.sources, opt.seed);
    return nm::HopPlotMode::exact();
}

nm::LoadResult load_input(const CommonOptions& opt) {
    try {
        return nm::load_edge_list_file(opt.input, opt.directed);
    } catch (const nm::parse_error& e) {
        throw std::runtime_error(opt.input + ": " + e.what());
    }
}

void echo_input_config(nm::RunReport& report, const CommonOptions& opt) {
    report.config()["input"] = opt.input;
    report.config()["directed"] = opt.directed;
    report.config()["seed"] = opt.seed;
}

ordered_json load_summary(const nm::LoadReport& r) {
    ordered_json j = ordered_json::parse(nm::load_report_json(r));
    j["edge_rows"] = r.edge_rows; // raw row count; published edge counts often use it
    j["header_nodes"] = r.header_nodes < 0 ? ordered_json() : ordered_json(r.header_nodes);
    j["header_edges"] = r.header_edges < 0 ? ordered_json() : ordered_json(r.header_edges);
    return j;
}

std::string out_path(const CommonOptions& opt, const std::string& name) {
    return (std::filesystem::path(opt.out_dir) / name).string();
}

void ensure_out_dir(const CommonOptions& opt) {
    std::filesystem::create_directories(opt.out_dir);
}

int run_generate(const nm::GenSpec& spec, const std::string& out_file) {
    nm::RunReport report("generate");
    report.config()["model"] = nm::model_name(spec.model);
    report.config()["n"] = spec.n;
    report.config()["p"] = spec.p;
    report.config()["k"] = spec.k;
    report.config()["m"] = spec.m;
    report.config()["pt"] = spec.p_t;
    report.config()["seed"] = spec.seed;
    report.config()["out"] = out_file;

    Stopwatch timer;
    nm::GenResult result = nm::generate(spec);
    report.add_timing("generate", timer.ms());

    std::ostringstream body;
    nm::write_edge_list(result.graph, body);
    nm::atomic_write_file(out_file, body.str());

    report.results()["nodes"] = result.graph.node_count();
    report.results()["edges"] = result.graph.edge_count();
    report.results()["rewires_exhausted"] = result.stats.rewires_exhausted;
    report.results()["shortcuts_dropped"] = result.stats.shortcuts_dropped;
    std::cout << report.dump() << '\n';
    return 0;
}

int run_stats(const CommonOptions& opt) {
    nm::RunReport report("stats");
    echo_input_config(report, opt);
    report.config()["q"] = opt.q;
    report.config()["fit_method"] = opt.fit_method;
    report.config()["xmin"] = opt.xmin;
    report.config()["hop_mode"] = opt.hop_mode;
    report.config()["sources"] = opt.sources;

    Stopwatch load_timer;
    nm::LoadResult loaded = load_input(opt);
    report.add_timing("load", load_timer.ms());
    const nm::Graph& g = loaded.graph;
    report.results()["load"] = load_summary(loaded.report);

    if (g.node_count() == 0) {
        report.results()["note"] = "empty graph";
        std::cout << report.dump() << '\n';
        return 0;
    }

    {
        Stopwatch timer;
        nm::DegreeHistogram hist = nm::degree_histogram(g);
        try {
            nm::PowerLawFit fit = nm::fit_power_law(hist, parse_fit_method(opt.fit_method),
                                                    parse_xmin(opt.xmin));
            report.results()["power_law"] = ordered_json::parse(nm::fit_report_json(fit));
        } catch (const nm::fit_error& e) {
            report.results()["power_law"] = ordered_json::parse(nm::fit_report_json_error(e.what()));
        }
        report.add_timing("power_law", timer.ms());
    }

    if (g.node_count() >= 2) {
        Stopwatch timer;
        try {
            nm::HopPlot hp = nm::hop_plot(g, opt.q, resolve_hop_mode(opt, g.node_count()));
            report.results()["effective_diameter"] = hp.effective_diameter;
            report.results()["hop_plot_h_max"] = hp.h_max;
        } catch (const std::domain_error& e) {
            report.results()["effective_diameter"] = nullptr;
            report.results()["effective_diameter_error"] = e.what();
        }
        report.add_timing("hop_plot", timer.ms());
    } else {
        report.results()["effective_diameter"] = nullptr;
    }

    {
        Stopwatch timer;
        nm::Graph sym = nm::undirected_view(g);
        if (sym.edge_count() == 0) {
            report.results()["modularity"] = nullptr;
            report.results()["modularity_error"] = "modularity undefined";
        } else {
            nm::Partition part = nm::louvain(sym, opt.seed);
            double q_mod = nm::modularity(sym, part);
            nm::CommunitySizeDistribution sizes = nm::community_sizes(part);
            nm::ResolutionAdvisory adv = nm::resolution_advisory(sym, part);
            report.results()["modularity"] = q_mod;
            report.results()["communities"] = part.community_count();
            report.results()["advisory"] = ordered_json::parse(nm::advisory_json(adv));
            // sigma is withheld on a biased clustering, mirroring the "--"
            // entries for the resolution-limited datasets.
            if (adv.biased || !sizes.fit)
                report.results()["community_size_sigma"] = nullptr;
            else
                report.results()["community_size_sigma"] = sizes.fit->gamma;
            if (!sizes.fit && !sizes.fit_failure.empty())
                report.results()["community_size_fit_error"] = sizes.fit_failure;
        }
        report.add_timing("communities", timer.ms());
    }

    std::cout << report.dump() << '\n';
    return 0;
}

int run_degree_dist(const CommonOptions& opt) {
    nm::RunReport report("degree-dist");
    echo_input_config(report, opt);
    report.config()["fit_method"] = opt.fit_method;
    report.config()["xmin"] = opt.xmin;
    report.config()["out_dir"] = opt.out_dir;

    Stopwatch timer;
    nm::LoadResult loaded = load_input(opt);
    const nm::Graph& g = loaded.graph;
    report.results()["load"] = load_summary(loaded.report);
    if (g.node_count() == 0) {
        std::cerr << "degree-dist: empty graph has no degree distribution\n";
        return 1;
    }
    ensure_out_dir(opt);

    nm::DegreeHistogram hist = nm::degree_histogram(g);
    {
        std::ostringstream pdf;
        nm::write_degree_pdf_csv(pdf, hist);
        nm::atomic_write_file(out_path(opt, "pdf.csv"), pdf.str());
        std::ostringstream cc;
        nm::write_degree_ccdf_csv(cc, hist);
        nm::atomic_write_file(out_path(opt, "ccdf.csv"), cc.str());
    }
    std::string fit_json;
    try {
        nm::PowerLawFit fit =
            nm::fit_power_law(hist, parse_fit_method(opt.fit_method), parse_xmin(opt.xmin));
        fit_json = nm::fit_report_json(fit);
        report.results()["power_law"] = ordered_json::parse(fit_json);
    } catch (const nm::fit_error& e) {
        fit_json = nm::fit_report_json_error(e.what());
        report.results()["power_law"] = ordered_json::parse(fit_json);
    }
    nm::atomic_write_file(out_path(opt, "fit.json"), fit_json + "\n");
    report.add_timing("total", timer.ms());
    std::cout << report.dump() << '\n';
    return 0;
}

int run_hopplot(const CommonOptions& opt) {
    nm::RunReport report("hopplot");
    echo_input_config(report, opt);
    report.config()["q"] = opt.q;
    report.config()["hop_mode"] = opt.hop_mode;
    report.config()["sources"] = opt.sources;
    report.config()["out_dir"] = opt.out_dir;

    Stopwatch timer;
    nm::LoadResult loaded = load_input(opt);
    const nm::Graph& g = loaded.graph;
    report.results()["load"] = load_summary(loaded.report);
    if (g.node_count() < 2) {
        std::cerr << "hopplot: need at least 2 nodes\n";
        return 1;
    }
    nm::HopPlot hp = nm::hop_plot(g, opt.q, resolve_hop_mode(opt, g.node_count()));
    ensure_out_dir(opt);
    std::ostringstream csv;
    nm::write_hop_plot_csv(csv, hp);
    nm::atomic_write_file(out_path(opt, "hopplot.csv"), csv.str());

    report.results()["effective_diameter"] = hp.effective_diameter;
    report.results()["h_max"] = hp.h_max;
    report.results()["connected_pairs"] = hp.total_pairs;
    report.add_timing("total", timer.ms());
    std::cout << report.dump() << '\n';
    return 0;
}

int run_communities(const CommonOptions& opt, const std::string& algo, double min_gain,
                    std::size_t gn_max_edges) {
    nm::RunReport report("communities");
    echo_input_config(report, opt);
    report.config()["algo"] = algo;
    report.config()["min_gain"] = min_gain;
    report.config()["out_dir"] = opt.out_dir;

    Stopwatch timer;
    nm::LoadResult loaded = load_input(opt);
    report.results()["load"] = load_summary(loaded.report);
    nm::Graph g = nm::undirected_view(loaded.graph);
    if (g.edge_count() == 0) {
        std::cerr << "communities: modularity undefined\n";
        return 1;
    }

    nm::Partition part;
    if (algo == "louvain") {
        part = nm::louvain(g, opt.seed, min_gain);
    } else if (algo == "gn") {
        nm::GnResult gn = nm::girvan_newman(g, nm::GnTarget::MaxQ, 0, gn_max_edges);
        part = std::move(gn.partition);
        ensure_out_dir(opt);
        nm::atomic_write_file(out_path(opt, "dendrogram.json"), nm::dendrogram_json(gn) + "\n");
    } else {
        std::cerr << "communities: --algo must be louvain or gn\n";
        return 1;
    }

    nm::CommunitySizeDistribution sizes = nm::community_sizes(part);
    nm::ResolutionAdvisory adv = nm::resolution_advisory(g, part);

    ensure_out_dir(opt);
    {
        std::ostringstream csv;
        nm::write_partition_csv(csv, part, &loaded.ids);
        nm::atomic_write_file(out_path(opt, "partition.csv"), csv.str());
        std::ostringstream sizes_csv;
        nm::write_community_sizes_csv(sizes_csv, sizes);
        nm::atomic_write_file(out_path(opt, "sizes.csv"), sizes_csv.str());
        nm::atomic_write_file(out_path(opt, "advisory.json"), nm::advisory_json(adv) + "\n");
    }

    report.results()["modularity"] = nm::modularity(g, part);
    report.results()["communities"] = part.community_count();
    if (adv.biased || !sizes.fit)
        report.results()["community_size_sigma"] = nullptr;
    else
        report.results()["community_size_sigma"] = sizes.fit->gamma;
    report.results()["biased"] = adv.biased;
    report.add_timing("total", timer.ms());
    std::cout << report.dump() << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"netmorph: network model generation and topology diagnostics"};
    app.require_subcommand(1);

    // generate
    nm::GenSpec spec;
    std::string model_str = "er";
    std::string gen_out = "graph.txt";
    auto* gen = app.add_subcommand("generate", "Generate a model network as an edge list");
    gen->add_option("--model", model_str, "er|ws|nws|ba|hk")->required();
    gen->add_option("--n", spec.n, "node count")->required();
    gen->add_option("--p", spec.p, "edge/rewire/shortcut probability");
    gen->add_option("--k", spec.k, "ring-lattice neighbors per node (even)");
    gen->add_option("--m", spec.m, "edges per new node (ba/hk)");
    gen->add_option("--pt", spec.p_t, "triad-formation probability (hk)");
    gen->add_option("--seed", spec.seed, "RNG seed (default 0)");
    gen->add_option("--out", gen_out, "output edge-list path");

    auto add_common = [](CLI::App* cmd, CommonOptions& opt, bool with_fit, bool with_hop) {
        cmd->add_option("--input", opt.input, "SNAP edge-list file")->required();
        cmd->add_flag("--directed", opt.directed, "treat input as directed");
        cmd->add_option("--seed", opt.seed, "RNG seed (default 0)");
        cmd->add_option("--out-dir", opt.out_dir, "output directory");
        if (with_fit) {
            cmd->add_option("--fit-method", opt.fit_method, "mle|ccdf");
            cmd->add_option("--xmin", opt.xmin, "'scan' or a fixed minimum degree");
        }
        if (with_hop) {
            cmd->add_option("--q", opt.q, "effective-diameter quantile (default 0.9)");
            cmd->add_option("--hop-mode", opt.hop_mode, "auto|exact|sample");
            cmd->add_option("--sources", opt.sources, "BFS sources in sample mode");
        }
    };

    CommonOptions stats_opt;
    auto* stats = app.add_subcommand("stats", "Full per-dataset summary");
    add_common(stats, stats_opt, true, true);

    CommonOptions dd_opt;
    auto* dd = app.add_subcommand("degree-dist", "Degree PDF/CCDF series and power-law fit");
    add_common(dd, dd_opt, true, false);

    CommonOptions hop_opt;
    auto* hop = app.add_subcommand("hopplot", "Reachable-pairs hop plot and effective diameter");
    add_common(hop, hop_opt, false, true);

    CommonOptions comm_opt;
    std::string algo = "louvain";
    double min_gain = 1e-7;
    std::size_t gn_max_edges = nm::kGirvanNewmanEdgeLimit;
    auto* comm = app.add_subcommand("communities", "Community detection and size analysis");
    add_common(comm, comm_opt, false, false);
    comm->add_option("--algo", algo, "louvain|gn");
    comm->add_option("--min-gain", min_gain, "louvain convergence threshold");
    comm->add_option("--gn-max-edges", gn_max_edges, "override the girvan-newman size guard");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            spec.model = nm::parse_model(model_str);
            return run_generate(spec, gen_out);
        }
        if (*stats)
            return run_stats(stats_opt);
        if (*dd)
            return run_degree_dist(dd_opt);
        if (*hop)
            return run_hopplot(hop_opt);
        if (*comm)
            return run_communities(comm_opt, algo, min_gain, gn_max_edges);
    } catch (const nm::parse_error& e) {
        std::cerr << "netmorph: parse error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "netmorph: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
