#pragma once

#include <functional>
#include <optional>
#include <stdexcept>

#include "arbormax/graph.hpp"
#include "arbormax/oracle.hpp"

namespace arbormax {

// Raised when an exact run would exceed its configured caps. The exact
// solver refuses rather than approximating.
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExactOptions {
    int max_vertices = 20;
    // Enumeration cap; unset means the ARBORMAX_CAP environment variable
    // when present, else 5e6 candidate sets.
    std::optional<long long> max_sets;
    bool memoize = false;

    long long effective_cap() const;
};

struct ExactResult {
    OutTree tree;          // a BFS spanning out-tree of the best vertex set
    double value = 0.0;
    int height = 0;        // minimal over optima found, then first-emitted
    long long candidates = 0;
    std::optional<int> undirected_center;  // filled by exact_csm
    std::optional<int> undirected_radius;
};

// Every vertex set containing v whose members are reachable from v inside
// the induced subgraph, emitted exactly once, up to max_size vertices.
void enumerate_connected_sets(const Digraph& g, Vertex v, int max_size,
                              const std::function<void(const VertexSet&)>& emit,
                              const ExactOptions& opts = {});

// Brute-force optimum for the rooted directed problem: best f over sets
// spanning an out-tree rooted at v with at most k edges. height_cap
// additionally requires a spanning out-tree of height <= cap (checked by
// BFS layers, which is exact since BFS depths are minimal).
ExactResult exact_drcsm(const Digraph& g, const ValueOracle& o, int k, Vertex root,
                        std::optional<int> height_cap = {}, const ExactOptions& opts = {});

// Unrooted variants: max over all roots; undirected via bidirection.
ExactResult exact_dcsm(const Digraph& g, const ValueOracle& o, int k,
                       const ExactOptions& opts = {});
ExactResult exact_csm(int n, const std::vector<Edge>& undirected_edges, const ValueOracle& o,
                      int k, const ExactOptions& opts = {});

}  // namespace arbormax
