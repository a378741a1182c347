#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netmorph {

using node_id = std::uint32_t;
using edge = std::pair<node_id, node_id>;

constexpr node_id kUnreachable = std::numeric_limits<node_id>::max();

// Raised by load_edge_list on a malformed input line.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

enum class DegreeMode { Out, In, Total };
enum class Orientation { Out, Undirected };

// Immutable simple graph over dense node ids 0..n-1, CSR adjacency with
// sorted neighbor lists. Undirected edges are stored once per endpoint so
// both ends see them; edge_count() counts unordered pairs in that case.
// Safe to share across threads once built.
class Graph {
public:
    Graph() = default;

    struct BuildStats {
        std::uint64_t self_loops_dropped = 0;
        std::uint64_t duplicates_dropped = 0;
    };

    // Drops self-loops and collapses parallel edges (reciprocal pairs count
    // as parallel when undirected). Node ids must be < node_count.
    static Graph from_edges(std::size_t node_count, std::vector<edge> edges, bool directed,
                            BuildStats* stats = nullptr);

    std::size_t node_count() const { return out_offsets_.empty() ? 0 : out_offsets_.size() - 1; }
    std::size_t edge_count() const { return edge_count_; }
    bool directed() const { return directed_; }

    std::span<const node_id> neighbors(node_id v) const {
        return {out_targets_.data() + out_offsets_[v], out_targets_.data() + out_offsets_[v + 1]};
    }
    // Directed graphs only; equals neighbors() when undirected.
    std::span<const node_id> in_neighbors(node_id v) const {
        if (!directed_)
            return neighbors(v);
        return {in_targets_.data() + in_offsets_[v], in_targets_.data() + in_offsets_[v + 1]};
    }

    bool has_edge(node_id u, node_id v) const;

    // Unordered (u < v) pairs for undirected graphs, ordered pairs otherwise,
    // in lexicographic order.
    std::vector<edge> edges() const;

    bool operator==(const Graph& other) const = default;

private:
    bool directed_ = false;
    std::size_t edge_count_ = 0;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<node_id> out_targets_;
    std::vector<std::size_t> in_offsets_;
    std::vector<node_id> in_targets_;
};

// External id <-> dense internal index, in first-seen input order.
class NodeIdMap {
public:
    node_id intern(std::int64_t external);
    std::size_t size() const { return to_external_.size(); }
    std::int64_t external(node_id internal) const { return to_external_[internal]; }
    const node_id* find(std::int64_t external) const;

private:
    std::unordered_map<std::int64_t, node_id> to_internal_;
    std::vector<std::int64_t> to_external_;
};

struct LoadReport {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::uint64_t dropped_self_loops = 0;
    std::uint64_t dropped_duplicates = 0;
    // Extras for cross-checking, not part of the pinned report schema.
    std::size_t edge_rows = 0;          // non-comment lines parsed
    std::int64_t header_nodes = -1;     // from "# Nodes: ..." comment, -1 if absent
    std::int64_t header_edges = -1;
};

struct LoadResult {
    Graph graph;
    NodeIdMap ids;
    LoadReport report;
};

// SNAP edge-list text: '#' comment lines, two integer columns per line,
// LF or CRLF. Header node/edge counts are recorded but never trusted.
// Blank lines are skipped. Empty input yields an empty graph.
LoadResult load_edge_list(std::istream& in, bool directed);
LoadResult load_edge_list_file(const std::string& path, bool directed);

std::size_t degree(const Graph& g, node_id v, DegreeMode mode = DegreeMode::Total);

// Symmetrized simple view: an undirected edge exists iff at least one
// orientation existed. Identity on undirected input.
Graph undirected_view(const Graph& g);

// Hop counts from source; kUnreachable marks unreached nodes.
std::vector<node_id> bfs_distances(const Graph& g, node_id source,
                                   Orientation orientation = Orientation::Undirected);

// Canonical serialization: sorted "u v" lines, LF, no comments.
void write_edge_list(const Graph& g, std::ostream& out);

std::string load_report_json(const LoadReport& r);

} // namespace netmorph
