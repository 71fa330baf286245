#include "arbormax/reductions.hpp"

#include <algorithm>
#include <cmath>

#include "arbormax/tree_partition.hpp"

namespace arbormax {

namespace {

Subroutine make_subroutine(const SolveParams& params) {
    if (params.subroutine == SolveParams::Sub::Exact) return exact_subroutine(params.exact_opts);
    return recapprox_subroutine(params.d, RecOptions{params.faithful});
}

std::vector<int> radius_guesses(const SolveParams& params, int max_radius) {
    if (params.fixed_radius) {
        if (*params.fixed_radius < 1 || *params.fixed_radius > max_radius)
            throw std::invalid_argument("solve: fixed radius out of range");
        return {*params.fixed_radius};
    }
    std::vector<int> rs(max_radius);
    for (int r = 1; r <= max_radius; ++r) rs[r - 1] = r;
    return rs;
}

std::vector<Vertex> root_guesses(const SolveParams& params, int n) {
    if (params.fixed_root) {
        if (*params.fixed_root < 0 || *params.fixed_root >= n)
            throw std::invalid_argument("solve: fixed root out of range");
        return {*params.fixed_root};
    }
    std::vector<Vertex> vs(n);
    for (Vertex v = 0; v < n; ++v) vs[v] = v;
    return vs;
}

struct BestTracker {
    std::optional<OutTree> tree;
    double value = 0.0;
    Vertex root = -1;
    int radius = 0;

    void offer(OutTree cand, double val, Vertex v, int r) {
        if (!tree || val > value) {
            tree = std::move(cand);
            value = val;
            root = v;
            radius = r;
        }
    }
};

ReductionResult finish(BestTracker&& best, std::vector<GuessRecord>&& guesses,
                       long long total_queries) {
    if (!best.tree) throw std::logic_error("solve: no guess produced a candidate");
    return ReductionResult{std::move(*best.tree), best.value, best.root, best.radius,
                           std::move(guesses), total_queries};
}

}  // namespace

Digraph prune_to_ball(const Digraph& g, Vertex root, int radius) {
    auto ball = vertices_within(g, root, radius);
    std::vector<char> keep(g.vertex_count(), 0);
    for (Vertex v : ball) keep[v] = 1;
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges())
        if (keep[u] && keep[v]) edges.push_back({u, v});
    return Digraph(g.vertex_count(), edges);
}

ReductionResult solve_dcsm(const Digraph& g, const ValueOracle& o, int k,
                           const SolveParams& params) {
    if (k < 1) throw std::invalid_argument("solve_dcsm: k must be at least 1");
    Subroutine sub = make_subroutine(params);
    GreedyOptions gopts{params.faithful, true};
    BestTracker best;
    std::vector<GuessRecord> guesses;
    long long before = o.queries();

    for (Vertex v : root_guesses(params, g.vertex_count())) {
        for (int r : radius_guesses(params, k)) {
            long long q0 = o.queries();
            GreedyResult gr = greedy_radius(g, o, k, v, r, sub, gopts);
            OutTree candidate = [&] {
                if (gr.tree.edge_count() <= k) return std::move(gr.tree);
                Partition parts = partition_by_size(gr.tree, Rational(k, 2));
                return best_part(parts, o);
            }();
            double val = o.value(candidate.vertices());
            guesses.push_back({v, r, val, o.queries() - q0, candidate.edge_count()});
            best.offer(std::move(candidate), val, v, r);
        }
    }
    return finish(std::move(best), std::move(guesses), o.queries() - before);
}

ReductionResult solve_csm(int n, const std::vector<Edge>& undirected_edges,
                          const ValueOracle& o, int k, const SolveParams& params) {
    if (k < 1) throw std::invalid_argument("solve_csm: k must be at least 1");
    Digraph g = bidirect(n, undirected_edges);
    Subroutine sub = make_subroutine(params);
    GreedyOptions gopts{params.faithful, true};
    BestTracker best;
    std::vector<GuessRecord> guesses;
    long long before = o.queries();

    const int max_radius = (k + 1) / 2;  // undirected tree radius is at most ceil(k/2)
    for (Vertex v : root_guesses(params, n)) {
        for (int r : radius_guesses(params, max_radius)) {
            long long q0 = o.queries();
            GreedyResult gr = greedy_radius(g, o, k, v, r, sub, gopts);
            OutTree candidate = [&] {
                if (gr.tree.edge_count() <= k) return std::move(gr.tree);
                Partition parts = partition_by_size(gr.tree, Rational(k, 2));
                return best_part(parts, o);
            }();
            double val = o.value(candidate.vertices());
            guesses.push_back({v, r, val, o.queries() - q0, candidate.edge_count()});
            best.offer(std::move(candidate), val, v, r);
        }
    }
    return finish(std::move(best), std::move(guesses), o.queries() - before);
}

ReductionResult solve_drcsm_bicriteria(const Digraph& g, const ValueOracle& o, int k,
                                       Vertex root, const Rational& delta,
                                       const SolveParams& params) {
    if (k < 1) throw std::invalid_argument("solve_drcsm: k must be at least 1");
    if (root < 0 || root >= g.vertex_count())
        throw std::invalid_argument("solve_drcsm: root out of range");
    if (delta.cmp(Rational(1, k)) < 0 || delta.cmp(1) > 0)
        throw std::invalid_argument("solve_drcsm: delta must lie in [1/k, 1]");

    Digraph pruned = prune_to_ball(g, root, k);
    Subroutine sub = make_subroutine(params);
    GreedyOptions gopts{params.faithful, true};
    Rational s = delta * Rational(k, 2);
    Rational delta_k = delta * Rational(k);
    BestTracker best;
    std::vector<GuessRecord> guesses;
    long long before = o.queries();

    for (int r : radius_guesses(params, k)) {
        long long q0 = o.queries();
        GreedyResult gr = greedy_radius(pruned, o, k, root, r, sub, gopts);
        OutTree candidate = [&] {
            if (delta_k.cmp(gr.tree.edge_count()) >= 0) return std::move(gr.tree);
            Partition parts = partition_by_size(gr.tree, s);
            const OutTree& part = best_part(parts, o);
            auto edges = path_edges(shortest_path(pruned, root, part.root()));
            auto part_edges = part.edges_preorder();
            edges.insert(edges.end(), part_edges.begin(), part_edges.end());
            return graft(OutTree(root), edges);
        }();
        double val = o.value(candidate.vertices());
        guesses.push_back({root, r, val, o.queries() - q0, candidate.edge_count()});
        best.offer(std::move(candidate), val, root, r);
    }
    return finish(std::move(best), std::move(guesses), o.queries() - before);
}

int depth_for_epsilon(double epsilon) {
    if (!(epsilon > 0.0) || epsilon > 1.0)
        throw std::invalid_argument("epsilon must lie in (0, 1]");
    return static_cast<int>(std::ceil(1.0 / epsilon - 1e-12));
}

double sharp_factor(int d, int r) {
    double rr = std::max(r, 1);
    return 1.0 / (16.0 * std::pow(d + 1.0, 3) * std::pow(rr, 1.0 / d));
}

double epsilon_factor(double epsilon, int r) {
    double rr = std::max(r, 1);
    return std::pow(epsilon, 3) /
           (16.0 * std::pow(1.0 + 2.0 * epsilon, 3) * std::pow(rr, epsilon));
}

Theorem1Result compose_theorem1_dcsm(const Digraph& g, const ValueOracle& o, int k,
                                     double epsilon, SolveParams params) {
    params.d = depth_for_epsilon(epsilon);
    params.subroutine = SolveParams::Sub::RecApproxD;
    return {solve_dcsm(g, o, k, params), params.d, epsilon};
}

Theorem1Result compose_theorem1_csm(int n, const std::vector<Edge>& undirected_edges,
                                    const ValueOracle& o, int k, double epsilon,
                                    SolveParams params) {
    params.d = depth_for_epsilon(epsilon);
    params.subroutine = SolveParams::Sub::RecApproxD;
    return {solve_csm(n, undirected_edges, o, k, params), params.d, epsilon};
}

}  // namespace arbormax
