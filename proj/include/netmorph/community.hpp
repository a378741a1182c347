#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "netmorph/graph.hpp"
#include "netmorph/metrics.hpp"

namespace netmorph {

// Node -> community assignment with the per-community sums modularity needs:
// l_s intra-community edges, d_s total member degree. Community ids are
// dense, numbered by first appearance in node order.
class Partition {
public:
    Partition() = default;
    // Canonicalizes arbitrary labels and computes the caches from g.
    Partition(const Graph& g, const std::vector<node_id>& labels);

    std::size_t community_count() const { return intra_edges_.size(); }
    node_id community_of(node_id v) const { return assignment_[v]; }
    const std::vector<node_id>& assignment() const { return assignment_; }
    std::uint64_t intra_edges(node_id community) const { return intra_edges_[community]; }
    std::uint64_t degree_sum(node_id community) const { return degree_sums_[community]; }
    std::vector<std::size_t> community_sizes_by_id() const;

private:
    std::vector<node_id> assignment_;
    std::vector<std::uint64_t> intra_edges_;
    std::vector<std::uint64_t> degree_sums_;
};

// Q = sum_s [ l_s/|E| - (d_s/(2|E|))^2 ]. Undirected graphs with at least
// one edge only; throws std::domain_error("modularity undefined") otherwise.
double modularity(const Graph& g, const Partition& p);

struct EdgeBetweenness {
    std::unordered_map<std::uint64_t, double> scores; // packed (min,max) -> B(e)

    static std::uint64_t key(node_id u, node_id v) {
        if (u > v)
            std::swap(u, v);
        return (static_cast<std::uint64_t>(u) << 32) | v;
    }
    double at(node_id u, node_id v) const { return scores.at(key(u, v)); }
};

// For each edge, the sum over unordered reachable node pairs of the fraction
// of shortest paths through it (Brandes-style accumulation, halved to the
// unordered-pair convention).
EdgeBetweenness edge_betweenness(const Graph& g);

enum class GnTarget { MaxQ, KCommunities };

struct GnStep {
    edge removed;
    std::size_t num_components;
    double q;
};

struct GnResult {
    Partition partition;
    std::vector<GnStep> dendrogram; // one entry per removal
};

// Divisive clustering: repeatedly remove the highest-betweenness edge
// (recomputed after every removal, ties to the lexicographically smallest
// edge) and track component partitions. Quadratic-ish in edges; refuse
// graphs above max_edges unless the caller raises the limit.
constexpr std::size_t kGirvanNewmanEdgeLimit = 20000;
GnResult girvan_newman(const Graph& g, GnTarget target, std::size_t k = 0,
                       std::size_t max_edges = kGirvanNewmanEdgeLimit);

// Greedy two-phase modularity maximization. Sweep order is a fresh seeded
// shuffle per pass; gain ties break toward the smallest community id.
Partition louvain(const Graph& g, std::uint64_t seed, double min_gain = 1e-7);

struct CommunitySizeDistribution {
    std::map<std::size_t, std::uint64_t> size_counts; // size -> #communities
    std::optional<PowerLawFit> fit;                   // absent when degenerate
    std::string fit_failure;                          // reason when absent
};

// Size histogram plus a power-law fit of P(size) via the metrics fitter
// (MLE, xmin = 1).
CommunitySizeDistribution community_sizes(const Partition& p);

struct ResolutionAdvisory {
    std::vector<node_id> flagged_communities; // l_s below sqrt(|E|/2)
    bool biased = false;                      // largest community > 50% of nodes
    double min_intra_edges = 0.0;             // the sqrt(|E|/2) threshold
    double giant_share = 0.0;                 // largest community / n
};

// Resolution-limit screening: small communities that modularity optimization
// cannot resolve, and partitions dominated by one giant community.
ResolutionAdvisory resolution_advisory(const Graph& g, const Partition& p);

// CSV of "node,community" using external ids when a map is supplied.
void write_partition_csv(std::ostream& out, const Partition& p, const NodeIdMap* ids = nullptr);
void write_community_sizes_csv(std::ostream& out, const CommunitySizeDistribution& d);
std::string advisory_json(const ResolutionAdvisory& a);
std::string dendrogram_json(const GnResult& r);

} // namespace netmorph
