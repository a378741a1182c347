#include "netmorph/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "netmorph/rng.hpp"

namespace netmorph {

namespace {

[[noreturn]] void bad_spec(const std::string& what) {
    throw std::invalid_argument("invalid GenSpec: " + what);
}

void check_prob(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        bad_spec(std::string(name) + " must be in [0,1]");
}

// Adjacency with O(1) membership for the lattice-based generators. Set
// iteration order is never consulted; edges are re-sorted on graph build.
struct EdgeSet {
    explicit EdgeSet(std::size_t n) : adj(n) {}

    bool has(node_id u, node_id v) const { return adj[u].contains(v); }
    std::size_t degree(node_id u) const { return adj[u].size(); }

    void add(node_id u, node_id v) {
        adj[u].insert(v);
        adj[v].insert(u);
        edges.emplace_back(u, v);
    }
    void remove(node_id u, node_id v) {
        adj[u].erase(v);
        adj[v].erase(u);
        std::erase_if(edges, [&](const edge& e) {
            return (e.first == u && e.second == v) || (e.first == v && e.second == u);
        });
    }

    std::vector<std::unordered_set<node_id>> adj;
    std::vector<edge> edges;
};

// Ring lattice: node i linked to its k/2 nearest neighbors on each side.
// Edge order is node-major, offset-minor; the WS rewiring pass relies on it.
void build_ring_lattice(EdgeSet& set, std::size_t n, std::size_t k) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 1; j <= k / 2; ++j)
            set.add(static_cast<node_id>(i), static_cast<node_id>((i + j) % n));
}

GenResult finish(const GenSpec& spec, std::vector<edge> edges, GenStats stats = {}) {
    GenResult result;
    result.graph = Graph::from_edges(spec.n, std::move(edges), /*directed=*/false);
    result.stats = stats;
    return result;
}

} // namespace

void GenSpec::validate() const {
    if (n == 0)
        bad_spec("n must be positive");
    switch (model) {
    case Model::ER:
        check_prob(p, "p");
        break;
    case Model::WS:
    case Model::NWS:
        check_prob(p, "p");
        if (k < 2 || k % 2 != 0)
            bad_spec("k must be even and >= 2");
        if (k >= n)
            bad_spec("k must be < n");
        break;
    case Model::HK:
        check_prob(p_t, "p_t");
        [[fallthrough]];
    case Model::BA:
        if (m < 1)
            bad_spec("m must be >= 1");
        if (m >= n)
            bad_spec("m must be < n");
        break;
    }
}

Model parse_model(const std::string& name) {
    if (name == "er") return Model::ER;
    if (name == "ws") return Model::WS;
    if (name == "nws") return Model::NWS;
    if (name == "ba") return Model::BA;
    if (name == "hk") return Model::HK;
    throw std::invalid_argument("unknown model '" + name + "'");
}

std::string model_name(Model m) {
    switch (m) {
    case Model::ER: return "er";
    case Model::WS: return "ws";
    case Model::NWS: return "nws";
    case Model::BA: return "ba";
    case Model::HK: return "hk";
    }
    return "?";
}

GenResult gen_erdos_renyi(const GenSpec& spec) {
    spec.validate();
    if (spec.model != Model::ER)
        bad_spec("model must be er");
    Rng rng(spec.seed);
    std::vector<edge> edges;
    for (std::size_t i = 0; i + 1 < spec.n; ++i)
        for (std::size_t j = i + 1; j < spec.n; ++j)
            if (rng.bernoulli(spec.p))
                edges.emplace_back(static_cast<node_id>(i), static_cast<node_id>(j));
    return finish(spec, std::move(edges));
}

GenResult gen_watts_strogatz(const GenSpec& spec) {
    spec.validate();
    if (spec.model != Model::WS)
        bad_spec("model must be ws");
    Rng rng(spec.seed);
    EdgeSet set(spec.n);
    build_ring_lattice(set, spec.n, spec.k);
    GenStats stats;
    // Visit the lattice edges once, in construction order; a rewire keeps the
    // counter-clockwise endpoint and re-points the other end.
    std::vector<edge> lattice = set.edges;
    for (const auto& [u, v] : lattice) {
        if (!rng.bernoulli(spec.p))
            continue;
        if (set.degree(u) == spec.n - 1) { // no valid target left
            ++stats.rewires_exhausted;
            continue;
        }
        node_id t;
        do {
            t = static_cast<node_id>(rng.uniform_index(spec.n));
        } while (t == u || set.has(u, t));
        set.remove(u, v);
        set.add(u, t);
    }
    return finish(spec, std::move(set.edges), stats);
}

GenResult gen_newman_watts_strogatz(const GenSpec& spec) {
    spec.validate();
    if (spec.model != Model::NWS)
        bad_spec("model must be nws");
    Rng rng(spec.seed);
    EdgeSet set(spec.n);
    build_ring_lattice(set, spec.n, spec.k);
    GenStats stats;
    const std::size_t lattice_edges = set.edges.size();
    for (std::size_t e = 0; e < lattice_edges; ++e) {
        if (!rng.bernoulli(spec.p))
            continue;
        // One candidate pair per shortcut; an already-adjacent or degenerate
        // draw is dropped, not retried.
        node_id a = static_cast<node_id>(rng.uniform_index(spec.n));
        node_id b = static_cast<node_id>(rng.uniform_index(spec.n));
        if (a == b || set.has(a, b)) {
            ++stats.shortcuts_dropped;
            continue;
        }
        set.add(a, b);
    }
    return finish(spec, std::move(set.edges), stats);
}

namespace {

// Growth by preferential attachment over a repeated-endpoint list: every
// accepted edge contributes both endpoints, so a uniform draw from the list
// is an exact degree-proportional draw.
struct PreferentialState {
    std::vector<node_id> endpoints;
    std::vector<std::vector<node_id>> adj; // insertion-ordered, HK triad steps only
    std::vector<edge> edges;

    explicit PreferentialState(std::size_t n) : adj(n) {}

    void add_edge(node_id u, node_id v) {
        endpoints.push_back(u);
        endpoints.push_back(v);
        adj[u].push_back(v);
        adj[v].push_back(u);
        edges.emplace_back(u, v);
    }

    void seed_clique(std::size_t m) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j <= m; ++j)
                add_edge(static_cast<node_id>(i), static_cast<node_id>(j));
    }

    node_id draw_target(Rng& rng, const std::vector<node_id>& selected) {
        node_id t;
        do {
            t = endpoints[rng.uniform_index(endpoints.size())];
        } while (std::find(selected.begin(), selected.end(), t) != selected.end());
        return t;
    }
};

GenResult run_barabasi_albert(const GenSpec& spec, double triad_prob) {
    Rng rng(spec.seed);
    PreferentialState state(spec.n);
    state.seed_clique(spec.m);
    std::vector<node_id> selected;
    for (std::size_t v = spec.m + 1; v < spec.n; ++v) {
        selected.clear();
        node_id last_pa = kUnreachable;
        for (std::size_t e = 0; e < spec.m; ++e) {
            bool attached = false;
            if (e > 0 && triad_prob > 0.0 && rng.bernoulli(triad_prob)) {
                // Triad step: close a triangle through the last preferential
                // target, when it still has an unused neighbor.
                std::vector<node_id> candidates;
                for (node_id w : state.adj[last_pa])
                    if (w != v &&
                        std::find(selected.begin(), selected.end(), w) == selected.end())
                        candidates.push_back(w);
                if (!candidates.empty()) {
                    node_id t = candidates[rng.uniform_index(candidates.size())];
                    selected.push_back(t);
                    attached = true;
                }
            }
            if (!attached) {
                node_id t = state.draw_target(rng, selected);
                selected.push_back(t);
                last_pa = t;
            }
        }
        for (node_id t : selected)
            state.add_edge(static_cast<node_id>(v), t);
    }
    return finish(spec, std::move(state.edges));
}

} // namespace

GenResult gen_barabasi_albert(const GenSpec& spec) {
    spec.validate();
    if (spec.model != Model::BA)
        bad_spec("model must be ba");
    return run_barabasi_albert(spec, 0.0);
}

GenResult gen_holme_kim(const GenSpec& spec) {
    spec.validate();
    if (spec.model != Model::HK)
        bad_spec("model must be hk");
    // p_t = 0 degenerates to plain preferential attachment.
    return run_barabasi_albert(spec, spec.p_t);
}

GenResult generate(const GenSpec& spec) {
    switch (spec.model) {
    case Model::ER: return gen_erdos_renyi(spec);
    case Model::WS: return gen_watts_strogatz(spec);
    case Model::NWS: return gen_newman_watts_strogatz(spec);
    case Model::BA: return gen_barabasi_albert(spec);
    case Model::HK: return gen_holme_kim(spec);
    }
    throw std::invalid_argument("invalid model");
}

} // namespace netmorph
