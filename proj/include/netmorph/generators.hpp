#pragma once

#include <cstdint>
#include <string>

#include "netmorph/graph.hpp"

namespace netmorph {

enum class Model { ER, WS, NWS, BA, HK };

// Parameters for one synthetic graph. Only the fields of the chosen model
// are consulted; validate() rejects out-of-range values.
struct GenSpec {
    Model model = Model::ER;
    std::size_t n = 0;
    double p = 0.0;        // ER edge prob; WS rewire / NWS shortcut prob
    std::size_t k = 0;     // WS/NWS ring-lattice neighbors per node (total, even)
    std::size_t m = 0;     // BA/HK edges per new node
    double p_t = 0.0;      // HK triad-formation prob
    std::uint64_t seed = 0;

    void validate() const; // throws std::invalid_argument
};

struct GenStats {
    std::uint64_t rewires_exhausted = 0;  // WS: rewiring kept original edge
    std::uint64_t shortcuts_dropped = 0;  // NWS: candidate pair already adjacent
};

struct GenResult {
    Graph graph;
    GenStats stats;
};

Model parse_model(const std::string& name); // "er", "ws", "nws", "ba", "hk"
std::string model_name(Model m);

// All generators produce simple undirected graphs and are deterministic in
// GenSpec.seed (see Rng for the portability contract).
GenResult gen_erdos_renyi(const GenSpec& spec);
GenResult gen_watts_strogatz(const GenSpec& spec);
GenResult gen_newman_watts_strogatz(const GenSpec& spec);
GenResult gen_barabasi_albert(const GenSpec& spec);
GenResult gen_holme_kim(const GenSpec& spec);

GenResult generate(const GenSpec& spec);

} // namespace netmorph
