#include "netmorph/community.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <queue>
#include <thread>

#include <json.hpp>

#include "netmorph/rng.hpp"

namespace netmorph {

Partition::Partition(const Graph& g, const std::vector<node_id>& labels) {
    if (g.directed())
        throw std::invalid_argument("partition caches require an undirected graph");
    if (labels.size() != g.node_count())
        throw std::invalid_argument("assignment does not cover all nodes");

    // Densify labels by first appearance in node order.
    assignment_.resize(labels.size());
    std::unordered_map<node_id, node_id> remap;
    for (std::size_t v = 0; v < labels.size(); ++v) {
        auto it = remap.try_emplace(labels[v], static_cast<node_id>(remap.size())).first;
        assignment_[v] = it->second;
    }
    intra_edges_.assign(remap.size(), 0);
    degree_sums_.assign(remap.size(), 0);
    for (node_id u = 0; u < g.node_count(); ++u) {
        degree_sums_[assignment_[u]] += g.neighbors(u).size();
        for (node_id v : g.neighbors(u))
            if (u < v && assignment_[u] == assignment_[v])
                ++intra_edges_[assignment_[u]];
    }
}

std::vector<std::size_t> Partition::community_sizes_by_id() const {
    std::vector<std::size_t> sizes(community_count(), 0);
    for (node_id c : assignment_)
        ++sizes[c];
    return sizes;
}

double modularity(const Graph& g, const Partition& p) {
    if (g.directed())
        throw std::invalid_argument("modularity requires an undirected graph");
    if (g.edge_count() == 0)
        throw std::domain_error("modularity undefined");
    if (p.assignment().size() != g.node_count())
        throw std::invalid_argument("assignment does not cover all nodes");
    const double m = static_cast<double>(g.edge_count());
    double q = 0.0;
    for (node_id s = 0; s < p.community_count(); ++s) {
        const double ls = static_cast<double>(p.intra_edges(s));
        const double ds = static_cast<double>(p.degree_sum(s));
        q += ls / m - (ds / (2.0 * m)) * (ds / (2.0 * m));
    }
    return q;
}

EdgeBetweenness edge_betweenness(const Graph& g) {
    if (g.directed())
        throw std::invalid_argument("edge betweenness requires an undirected graph");
    const std::size_t n = g.node_count();
    EdgeBetweenness result;
    if (g.edge_count() == 0)
        return result;

    // Edge index for flat accumulators.
    std::vector<edge> edges = g.edges();
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    index.reserve(edges.size());
    for (std::uint32_t i = 0; i < edges.size(); ++i)
        index.emplace(EdgeBetweenness::key(edges[i].first, edges[i].second), i);

    // Brandes accumulation from every source; per-source work is independent
    // and merged over a fixed block count so sums never depend on the worker
    // count. Walking neighbors one BFS level up replaces predecessor lists.
    const std::size_t n_blocks = std::min<std::size_t>(16, n);
    std::vector<std::vector<double>> partials(n_blocks);

    auto accumulate_source = [&](node_id s, std::vector<double>& scores) {
        std::vector<node_id> order;
        order.reserve(n);
        std::vector<std::uint64_t> sigma(n, 0);
        std::vector<node_id> dist(n, kUnreachable);
        std::vector<double> delta(n, 0.0);
        sigma[s] = 1;
        dist[s] = 0;
        std::queue<node_id> queue;
        queue.push(s);
        while (!queue.empty()) {
            node_id v = queue.front();
            queue.pop();
            order.push_back(v);
            for (node_id w : g.neighbors(v)) {
                if (dist[w] == kUnreachable) {
                    dist[w] = dist[v] + 1;
                    queue.push(w);
                }
                if (dist[w] == dist[v] + 1)
                    sigma[w] += sigma[v];
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            node_id w = *it;
            for (node_id v : g.neighbors(w)) {
                if (dist[v] + 1 != dist[w])
                    continue;
                double c = static_cast<double>(sigma[v]) / static_cast<double>(sigma[w]) *
                           (1.0 + delta[w]);
                delta[v] += c;
                scores[index.at(EdgeBetweenness::key(v, w))] += c;
            }
        }
    };

    std::vector<node_id> sources(n);
    std::iota(sources.begin(), sources.end(), node_id{0});
    {
        std::atomic<std::size_t> next{0};
        auto run_block = [&](std::size_t block) {
            auto& scores = partials[block];
            scores.assign(edges.size(), 0.0);
            for (std::size_t i = block; i < sources.size(); i += n_blocks)
                accumulate_source(sources[i], scores);
        };
        std::size_t workers = std::min(worker_count(), n_blocks);
        if (workers <= 1) {
            for (std::size_t b = 0; b < n_blocks; ++b)
                run_block(b);
        } else {
            std::vector<std::thread> threads;
            threads.reserve(workers);
            for (std::size_t w = 0; w < workers; ++w)
                threads.emplace_back([&] {
                    for (std::size_t b = next.fetch_add(1); b < n_blocks;
                         b = next.fetch_add(1))
                        run_block(b);
                });
            for (auto& t : threads)
                t.join();
        }
    }

    std::vector<double> total(edges.size(), 0.0);
    for (const auto& partial : partials)
        for (std::size_t i = 0; i < edges.size(); ++i)
            total[i] += partial[i];

    result.scores.reserve(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i)
        result.scores.emplace(EdgeBetweenness::key(edges[i].first, edges[i].second),
                              total[i] / 2.0);
    return result;
}

namespace {

std::vector<node_id> component_labels(const Graph& g) {
    std::vector<node_id> label(g.node_count(), kUnreachable);
    node_id next = 0;
    for (node_id s = 0; s < g.node_count(); ++s) {
        if (label[s] != kUnreachable)
            continue;
        label[s] = next;
        std::queue<node_id> queue;
        queue.push(s);
        while (!queue.empty()) {
            node_id u = queue.front();
            queue.pop();
            for (node_id v : g.neighbors(u))
                if (label[v] == kUnreachable) {
                    label[v] = next;
                    queue.push(v);
                }
        }
        ++next;
    }
    return label;
}

} // namespace

GnResult girvan_newman(const Graph& g, GnTarget target, std::size_t k, std::size_t max_edges) {
    if (g.directed())
        throw std::invalid_argument("girvan-newman requires an undirected graph");
    if (g.edge_count() == 0)
        throw std::domain_error("modularity undefined");
    if (target == GnTarget::KCommunities && k > g.node_count())
        throw std::invalid_argument("k exceeds node count");
    if (g.edge_count() > max_edges)
        throw std::invalid_argument("graph exceeds the girvan-newman edge limit (" +
                                    std::to_string(max_edges) + "); raise it to proceed");

    GnResult result;
    Partition best(g, component_labels(g));
    double best_q = modularity(g, best);
    std::size_t components = best.community_count();
    if (target == GnTarget::KCommunities && components >= k) {
        result.partition = std::move(best);
        return result;
    }

    std::vector<edge> current = g.edges();
    Graph working = g;
    while (!current.empty()) {
        EdgeBetweenness eb = edge_betweenness(working);
        // Highest score wins; iteration over the lexicographically sorted
        // edge list makes ties deterministic.
        edge candidate = current.front();
        double candidate_score = -1.0;
        for (const auto& e : current) {
            double score = eb.at(e.first, e.second);
            if (score > candidate_score) {
                candidate_score = score;
                candidate = e;
            }
        }
        std::erase(current, candidate);
        working = Graph::from_edges(g.node_count(), current, /*directed=*/false);

        Partition part(g, component_labels(working));
        double q = modularity(g, part);
        result.dendrogram.push_back({candidate, part.community_count(), q});

        if (part.community_count() > components) {
            components = part.community_count();
            if (q > best_q) {
                best_q = q;
                best = part;
            }
            if (target == GnTarget::KCommunities && components >= k) {
                result.partition = std::move(part);
                return result;
            }
        }
    }
    result.partition = std::move(best);
    return result;
}

namespace {

// Weighted multigraph for Louvain levels. Self-loop weight follows the
// doubled convention (2 * internal weight), so strength sums to 2m and the
// aggregated modularity matches the node-level one exactly.
struct LevelGraph {
    std::vector<std::vector<std::pair<node_id, double>>> adj; // no self entries
    std::vector<double> self_weight;
    std::vector<double> strength;
    double total = 0.0; // 2m

    std::size_t size() const { return adj.size(); }
};

LevelGraph level_from_graph(const Graph& g) {
    LevelGraph lg;
    lg.adj.resize(g.node_count());
    lg.self_weight.assign(g.node_count(), 0.0);
    lg.strength.assign(g.node_count(), 0.0);
    for (node_id u = 0; u < g.node_count(); ++u) {
        for (node_id v : g.neighbors(u))
            lg.adj[u].emplace_back(v, 1.0);
        lg.strength[u] = static_cast<double>(g.neighbors(u).size());
        lg.total += lg.strength[u];
    }
    return lg;
}

// One complete local-moving phase; returns the labels and whether any node
// moved. Sweep order is reshuffled from rng every pass.
std::pair<std::vector<node_id>, bool> louvain_phase(const LevelGraph& lg, Rng& rng,
                                                    double min_gain) {
    const std::size_t n = lg.size();
    std::vector<node_id> comm(n);
    std::iota(comm.begin(), comm.end(), node_id{0});
    std::vector<double> comm_tot = lg.strength;

    std::vector<node_id> order(n);
    std::iota(order.begin(), order.end(), node_id{0});

    bool any_move = false;
    while (true) {
        rng.shuffle(order);
        double pass_gain = 0.0;
        bool moved = false;
        for (node_id u : order) {
            const node_id c = comm[u];
            // Edge weight from u to each adjacent community, ascending id so
            // gain ties resolve toward the smallest.
            std::vector<std::pair<node_id, double>> weights;
            weights.reserve(lg.adj[u].size());
            for (const auto& [v, w] : lg.adj[u])
                weights.emplace_back(comm[v], w);
            std::sort(weights.begin(), weights.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });

            comm_tot[c] -= lg.strength[u];

            // Gain of joining community D from the detached state, in Q units:
            // (2/W) * (k_uD - strength_u * tot_D / W).
            auto gain = [&](node_id d, double k_ud) {
                return 2.0 / lg.total *
                       (k_ud - lg.strength[u] * comm_tot[d] / lg.total);
            };

            double k_to_c = 0.0;
            for (const auto& [d, w] : weights)
                if (d == c)
                    k_to_c += w;
            double stay_gain = gain(c, k_to_c);

            node_id best = c;
            double best_gain = stay_gain;
            for (std::size_t i = 0; i < weights.size();) {
                node_id d = weights[i].first;
                double k_ud = 0.0;
                for (; i < weights.size() && weights[i].first == d; ++i)
                    k_ud += weights[i].second;
                if (d == c)
                    continue;
                double candidate = gain(d, k_ud);
                if (candidate > best_gain) {
                    best_gain = candidate;
                    best = d;
                }
            }

            comm[u] = best;
            comm_tot[best] += lg.strength[u];
            if (best != c) {
                moved = true;
                any_move = true;
                pass_gain += best_gain - stay_gain;
            }
        }
        if (!moved || pass_gain < min_gain)
            break;
    }
    return {comm, any_move};
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<node_id>& comm,
                     std::size_t n_comms) {
    LevelGraph next;
    next.adj.resize(n_comms);
    next.self_weight.assign(n_comms, 0.0);
    next.strength.assign(n_comms, 0.0);
    next.total = lg.total;
    std::vector<std::unordered_map<node_id, double>> merged(n_comms);
    for (node_id u = 0; u < lg.size(); ++u) {
        const node_id cu = comm[u];
        next.self_weight[cu] += lg.self_weight[u];
        for (const auto& [v, w] : lg.adj[u]) {
            const node_id cv = comm[v];
            if (cu == cv)
                next.self_weight[cu] += w; // both directions land here -> 2x
            else
                merged[cu][cv] += w;
        }
    }
    // Halve nothing: intra weights were accumulated from both endpoints,
    // which is exactly the doubled self-loop convention.
    for (node_id c = 0; c < n_comms; ++c) {
        next.adj[c].assign(merged[c].begin(), merged[c].end());
        std::sort(next.adj[c].begin(), next.adj[c].end());
        double s = next.self_weight[c];
        for (const auto& [v, w] : next.adj[c])
            s += w;
        next.strength[c] = s;
    }
    return next;
}

std::vector<node_id> densify(std::vector<node_id> labels) {
    std::unordered_map<node_id, node_id> remap;
    for (auto& l : labels) {
        auto it = remap.try_emplace(l, static_cast<node_id>(remap.size())).first;
        l = it->second;
    }
    return labels;
}

} // namespace

Partition louvain(const Graph& g, std::uint64_t seed, double min_gain) {
    if (g.directed())
        throw std::invalid_argument("louvain requires an undirected graph");
    if (g.edge_count() == 0)
        throw std::domain_error("modularity undefined");

    Rng rng(seed);
    LevelGraph level = level_from_graph(g);
    std::vector<node_id> node_to_comm(g.node_count());
    std::iota(node_to_comm.begin(), node_to_comm.end(), node_id{0});

    while (true) {
        auto [comm, moved] = louvain_phase(level, rng, min_gain);
        if (!moved)
            break;
        std::vector<node_id> dense = densify(std::move(comm));
        std::size_t n_comms = 0;
        for (node_id c : dense)
            n_comms = std::max<std::size_t>(n_comms, c + 1);
        for (auto& c : node_to_comm)
            c = dense[c];
        if (n_comms == level.size())
            break;
        level = aggregate(level, dense, n_comms);
    }
    return Partition(g, node_to_comm);
}

CommunitySizeDistribution community_sizes(const Partition& p) {
    CommunitySizeDistribution dist;
    for (std::size_t size : p.community_sizes_by_id())
        ++dist.size_counts[size];

    DegreeHistogram as_histogram;
    as_histogram.entries = dist.size_counts;
    as_histogram.n = p.community_count();
    if (dist.size_counts.size() < 2) {
        dist.fit_failure = "fewer than 2 distinct sizes";
        return dist;
    }
    try {
        dist.fit = fit_power_law(as_histogram, FitMethod::Mle, XminPolicy::fixed(1));
    } catch (const fit_error& e) {
        dist.fit_failure = e.what();
    }
    return dist;
}

ResolutionAdvisory resolution_advisory(const Graph& g, const Partition& p) {
    ResolutionAdvisory adv;
    adv.min_intra_edges = std::sqrt(static_cast<double>(g.edge_count()) / 2.0);
    for (node_id c = 0; c < p.community_count(); ++c)
        if (static_cast<double>(p.intra_edges(c)) < adv.min_intra_edges)
            adv.flagged_communities.push_back(c);
    auto sizes = p.community_sizes_by_id();
    std::size_t largest = sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
    adv.giant_share =
        p.assignment().empty()
            ? 0.0
            : static_cast<double>(largest) / static_cast<double>(p.assignment().size());
    adv.biased = adv.giant_share > 0.5;
    return adv;
}

void write_partition_csv(std::ostream& out, const Partition& p, const NodeIdMap* ids) {
    out << "node,community\n";
    for (node_id v = 0; v < p.assignment().size(); ++v) {
        if (ids)
            out << ids->external(v);
        else
            out << v;
        out << ',' << p.community_of(v) << '\n';
    }
}

void write_community_sizes_csv(std::ostream& out, const CommunitySizeDistribution& d) {
    out << "size,count\n";
    for (const auto& [size, count] : d.size_counts)
        out << size << ',' << count << '\n';
}

std::string advisory_json(const ResolutionAdvisory& a) {
    nlohmann::ordered_json j;
    j["flagged_communities"] = a.flagged_communities;
    j["biased"] = a.biased;
    j["thresholds"] = {{"min_intra_edges", a.min_intra_edges},
                       {"giant_share_limit", 0.5}};
    j["giant_share"] = a.giant_share;
    return j.dump();
}

std::string dendrogram_json(const GnResult& r) {
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& step : r.dendrogram) {
        nlohmann::ordered_json item;
        item["removed_edge"] = {step.removed.first, step.removed.second};
        item["num_components"] = step.num_components;
        item["Q"] = step.q;
        list.push_back(item);
    }
    return list.dump();
}

} // namespace netmorph
