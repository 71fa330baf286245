#pragma once

#include <optional>
#include <vector>

#include "arbormax/greedy_radius.hpp"
#include "arbormax/rational.hpp"

namespace arbormax {

struct SolveParams {
    enum class Sub { RecApproxD, Exact };
    Sub subroutine = Sub::RecApproxD;
    int d = 1;  // recursion depth of the recapprox-d subroutine
    std::optional<Vertex> fixed_root;
    std::optional<int> fixed_radius;
    bool faithful = false;
    ExactOptions exact_opts;
};

struct GuessRecord {
    Vertex root = -1;
    int radius = 0;
    double value = 0.0;
    long long queries = 0;
    int edges = 0;
};

struct ReductionResult {
    OutTree tree;
    double value = 0.0;
    Vertex guess_root = -1;  // winning guess
    int guess_radius = 0;
    std::vector<GuessRecord> guesses;
    long long total_queries = 0;
};

// Feasible solver for the unrooted directed problem: enumerate (v, r), run
// greedy_radius, extract the best size-<=k out-subtree of its output via
// partition_by_size at s = k/2, keep the best guess. Output always has
// m <= k.
ReductionResult solve_dcsm(const Digraph& g, const ValueOracle& o, int k,
                           const SolveParams& params = {});

// Undirected variant: bidirect first; radius guesses range over
// [1, ceil(k/2)]. The winning out-tree projects to an undirected tree with
// the same vertices and edges.
ReductionResult solve_csm(int n, const std::vector<Edge>& undirected_edges,
                          const ValueOracle& o, int k, const SolveParams& params = {});

// Rooted bicriteria solver with (1 + delta) size violation: prune to the
// radius-k ball around the root, run greedy_radius per radius guess,
// partition at s = delta*k/2, reconnect the best part to the root by a
// shortest path. Output always has m <= (1 + delta) k.
ReductionResult solve_drcsm_bicriteria(const Digraph& g, const ValueOracle& o, int k,
                                       Vertex root, const Rational& delta,
                                       const SolveParams& params = {});

struct Theorem1Result {
    ReductionResult result;
    int d = 1;
    double epsilon = 1.0;
};

// End-to-end epsilon-parameterized runs: d = ceil(1/epsilon) with the
// recapprox-d subroutine.
Theorem1Result compose_theorem1_dcsm(const Digraph& g, const ValueOracle& o, int k,
                                     double epsilon, SolveParams params = {});
Theorem1Result compose_theorem1_csm(int n, const std::vector<Edge>& undirected_edges,
                                    const ValueOracle& o, int k, double epsilon,
                                    SolveParams params = {});

int depth_for_epsilon(double epsilon);
// 1 / (16 (d+1)^3 r^(1/d)); radius-0 optima are scored with r = 1.
double sharp_factor(int d, int r);
// epsilon^3 / (16 (1+2 epsilon)^3 r^epsilon)
double epsilon_factor(double epsilon, int r);

Digraph prune_to_ball(const Digraph& g, Vertex root, int radius);

}  // namespace arbormax
