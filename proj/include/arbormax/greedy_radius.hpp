#pragma once

#include <functional>
#include <string>

#include "arbormax/exact.hpp"
#include "arbormax/graph.hpp"
#include "arbormax/oracle.hpp"
#include "arbormax/rec_approx.hpp"

namespace arbormax {

// Pluggable (alpha, beta)-approximation subroutine for the rooted problem.
// run() must return an out-tree rooted at the requested root; when beta is
// declared the harness checks m(output) <= beta(k) * k on every call.
struct Subroutine {
    std::string name;
    std::function<OutTree(const Digraph&, const ValueOracle&, long long k, Vertex root)> run;
    std::function<double(long long)> alpha;  // optional, reporting only
    std::function<double(long long)> beta;   // optional, checked when present
};

Subroutine exact_subroutine(const ExactOptions& opts = {});
Subroutine recapprox_subroutine(int d, const RecOptions& opts = {});

struct GreedyOptions {
    bool faithful = false;        // disable the zero-gain early stop
    bool check_contracts = true;  // enforce declared beta on subroutine output
    // Stale-gain cache: carry each root's last gain across iterations and
    // re-evaluate only while a stale entry tops a fresh one. Selection
    // matches the full sweep whenever stale gains are valid upper bounds
    // (exact subroutine); heuristic otherwise. Excluded from conformance
    // tests because it changes the subroutine call count.
    bool lazy = false;
};

struct GreedyResult {
    OutTree tree;
    AlgoTrace trace;
};

// Radius-sensitive greedy: stitches together subroutine-built subtrees whose
// roots lie within distance r-1 of v, over floor(2k/r) iterations. With an
// (alpha, beta) subroutine the tested guarantees are f(S) >= alpha(r)/2 * OPT
// restricted to height <= r, and m(S) <= 4 beta(r) k.
GreedyResult greedy_radius(const Digraph& g, const ValueOracle& o, long long k, Vertex v,
                           long long r, const Subroutine& sub, const GreedyOptions& opts = {});

}  // namespace arbormax
