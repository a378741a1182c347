#include "netmorph/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string_view>

namespace netmorph {

Graph Graph::from_edges(std::size_t node_count, std::vector<edge> edges, bool directed,
                        BuildStats* stats) {
    BuildStats local;
    std::erase_if(edges, [&](const edge& e) {
        if (e.first == e.second) {
            ++local.self_loops_dropped;
            return true;
        }
        return false;
    });
    if (!directed) {
        for (auto& [u, v] : edges)
            if (u > v)
                std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    auto last = std::unique(edges.begin(), edges.end());
    local.duplicates_dropped = static_cast<std::uint64_t>(edges.end() - last);
    edges.erase(last, edges.end());
    if (stats)
        *stats = local;

    Graph g;
    g.directed_ = directed;
    g.edge_count_ = edges.size();

    std::vector<std::size_t> out_deg(node_count, 0), in_deg;
    for (const auto& [u, v] : edges) {
        ++out_deg[u];
        if (!directed)
            ++out_deg[v];
    }
    if (directed) {
        in_deg.assign(node_count, 0);
        for (const auto& [u, v] : edges) {
            (void)u;
            ++in_deg[v];
        }
    }

    g.out_offsets_.assign(node_count + 1, 0);
    for (std::size_t i = 0; i < node_count; ++i)
        g.out_offsets_[i + 1] = g.out_offsets_[i] + out_deg[i];
    g.out_targets_.resize(g.out_offsets_[node_count]);
    {
        std::vector<std::size_t> cursor(g.out_offsets_.begin(), g.out_offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            g.out_targets_[cursor[u]++] = v;
            if (!directed)
                g.out_targets_[cursor[v]++] = u;
        }
    }
    if (directed) {
        g.in_offsets_.assign(node_count + 1, 0);
        for (std::size_t i = 0; i < node_count; ++i)
            g.in_offsets_[i + 1] = g.in_offsets_[i] + in_deg[i];
        g.in_targets_.resize(g.in_offsets_[node_count]);
        std::vector<std::size_t> cursor(g.in_offsets_.begin(), g.in_offsets_.end() - 1);
        for (const auto& [u, v] : edges)
            g.in_targets_[cursor[v]++] = u;
    }
    // Sources were sorted, so per-node target lists are already sorted except
    // for the undirected back-references; sort every bucket to be safe.
    for (std::size_t v = 0; v < node_count; ++v) {
        std::sort(g.out_targets_.begin() + static_cast<std::ptrdiff_t>(g.out_offsets_[v]),
                  g.out_targets_.begin() + static_cast<std::ptrdiff_t>(g.out_offsets_[v + 1]));
        if (directed)
            std::sort(g.in_targets_.begin() + static_cast<std::ptrdiff_t>(g.in_offsets_[v]),
                      g.in_targets_.begin() + static_cast<std::ptrdiff_t>(g.in_offsets_[v + 1]));
    }
    return g;
}

bool Graph::has_edge(node_id u, node_id v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<edge> Graph::edges() const {
    std::vector<edge> result;
    result.reserve(edge_count_);
    for (node_id u = 0; u < node_count(); ++u)
        for (node_id v : neighbors(u))
            if (directed_ || u < v)
                result.emplace_back(u, v);
    return result;
}

node_id NodeIdMap::intern(std::int64_t external) {
    auto [it, inserted] = to_internal_.try_emplace(external, static_cast<node_id>(to_external_.size()));
    if (inserted)
        to_external_.push_back(external);
    return it->second;
}

const node_id* NodeIdMap::find(std::int64_t external) const {
    auto it = to_internal_.find(external);
    return it == to_internal_.end() ? nullptr : &it->second;
}

namespace {

bool parse_int(std::string_view token, std::int64_t& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

// Pulls "Nodes: N" / "Edges: M" out of SNAP header comments.
void scan_header_comment(std::string_view line, LoadReport& report) {
    auto grab = [&](std::string_view key, std::int64_t& slot) {
        auto pos = line.find(key);
        if (pos == std::string_view::npos)
            return;
        pos += key.size();
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t'))
            ++pos;
        std::size_t end = pos;
        while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end])))
            ++end;
        std::int64_t value = 0;
        if (end > pos && parse_int(line.substr(pos, end - pos), value))
            slot = value;
    };
    grab("Nodes:", report.header_nodes);
    grab("Edges:", report.header_edges);
}

} // namespace

LoadResult load_edge_list(std::istream& in, bool directed) {
    LoadResult result;
    std::vector<edge> edges;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::string_view view(line);
        std::size_t start = view.find_first_not_of(" \t");
        if (start == std::string_view::npos)
            continue;
        if (view[start] == '#') {
            scan_header_comment(view, result.report);
            continue;
        }
        std::int64_t ids[2];
        std::size_t tokens = 0;
        std::size_t pos = start;
        while (pos < view.size()) {
            std::size_t end = view.find_first_of(" \t", pos);
            if (end == std::string_view::npos)
                end = view.size();
            if (tokens == 2)
                throw parse_error(line_no, "expected two integer tokens, found more");
            if (!parse_int(view.substr(pos, end - pos), ids[tokens]))
                throw parse_error(line_no, "not an integer: '" +
                                               std::string(view.substr(pos, end - pos)) + "'");
            ++tokens;
            pos = view.find_first_not_of(" \t", end);
            if (pos == std::string_view::npos)
                break;
        }
        if (tokens != 2)
            throw parse_error(line_no, "expected two integer tokens, found " +
                                           std::to_string(tokens));
        ++result.report.edge_rows;
        node_id u = result.ids.intern(ids[0]);
        node_id v = result.ids.intern(ids[1]);
        edges.emplace_back(u, v);
    }
    Graph::BuildStats stats;
    result.graph = Graph::from_edges(result.ids.size(), std::move(edges), directed, &stats);
    result.report.nodes = result.graph.node_count();
    result.report.edges = result.graph.edge_count();
    result.report.dropped_self_loops = stats.self_loops_dropped;
    result.report.dropped_duplicates = stats.duplicates_dropped;
    return result;
}

LoadResult load_edge_list_file(const std::string& path, bool directed) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return load_edge_list(in, directed);
}

std::size_t degree(const Graph& g, node_id v, DegreeMode mode) {
    if (v >= g.node_count())
        throw std::invalid_argument("node " + std::to_string(v) + " out of range");
    if (!g.directed())
        return g.neighbors(v).size();
    switch (mode) {
    case DegreeMode::Out:
        return g.neighbors(v).size();
    case DegreeMode::In:
        return g.in_neighbors(v).size();
    case DegreeMode::Total:
        return g.neighbors(v).size() + g.in_neighbors(v).size();
    }
    return 0;
}

Graph undirected_view(const Graph& g) {
    if (!g.directed())
        return g;
    std::vector<edge> edges = g.edges();
    return Graph::from_edges(g.node_count(), std::move(edges), /*directed=*/false);
}

std::vector<node_id> bfs_distances(const Graph& g, node_id source, Orientation orientation) {
    if (source >= g.node_count())
        throw std::invalid_argument("source " + std::to_string(source) + " out of range");
    std::vector<node_id> dist(g.node_count(), kUnreachable);
    dist[source] = 0;
    std::queue<node_id> queue;
    queue.push(source);
    const bool both = orientation == Orientation::Undirected && g.directed();
    while (!queue.empty()) {
        node_id u = queue.front();
        queue.pop();
        auto visit = [&](node_id w) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push(w);
            }
        };
        for (node_id w : g.neighbors(u))
            visit(w);
        if (both)
            for (node_id w : g.in_neighbors(u))
                visit(w);
    }
    return dist;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& [u, v] : g.edges())
        out << u << ' ' << v << '\n';
}

std::string load_report_json(const LoadReport& r) {
    std::ostringstream out;
    out << "{\"nodes\": " << r.nodes << ", \"edges\": " << r.edges
        << ", \"dropped_self_loops\": " << r.dropped_self_loops
        << ", \"dropped_duplicates\": " << r.dropped_duplicates << "}";
    return out.str();
}

} // namespace netmorph
