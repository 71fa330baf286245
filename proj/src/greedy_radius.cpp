#include "arbormax/greedy_radius.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arbormax {

Subroutine exact_subroutine(const ExactOptions& opts) {
    Subroutine sub;
    sub.name = "exact";
    sub.run = [opts](const Digraph& g, const ValueOracle& f, long long k, Vertex root) {
        return exact_drcsm(g, f, static_cast<int>(k), root, std::nullopt, opts).tree;
    };
    sub.alpha = [](long long) { return 1.0; };
    sub.beta = [](long long) { return 1.0; };
    return sub;
}

Subroutine recapprox_subroutine(int d, const RecOptions& opts) {
    Subroutine sub;
    sub.name = "recapprox-d" + std::to_string(d);
    sub.run = [d, opts](const Digraph& g, const ValueOracle& f, long long k, Vertex root) {
        return rec_approx_d(g, f, k, root, d, opts).tree;
    };
    sub.alpha = [d](long long) { return 1.0 / (d + 1); };
    sub.beta = [d](long long k) {
        return (d + 1.0) * (d + 1.0) * std::pow(static_cast<double>(k), 1.0 / d);
    };
    return sub;
}

GreedyResult greedy_radius(const Digraph& g, const ValueOracle& o, long long k, Vertex v,
                           long long r, const Subroutine& sub, const GreedyOptions& opts) {
    if (k < 1) throw std::invalid_argument("greedy_radius: k must be at least 1");
    if (r < 1 || r > k) throw std::invalid_argument("greedy_radius: radius must lie in [1, k]");
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("greedy_radius: root out of range");

    DistanceCache cache(g);
    auto W = cache.within(v, static_cast<int>(r - 1));
    const long long t = 2 * k / r;

    OutTree sol(v);
    AlgoTrace trace;
    long long before = o.queries();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> stale(W.size(), inf);  // lazy mode carries these over
    for (int i = 1; i <= t; ++i) {
        ResidualOracle residual(o, sol.vertices());
        auto evaluate = [&](Vertex w) {
            OutTree cand = sub.run(g, residual, r, w);
            ++trace.subroutine_calls;
            if (cand.root() != w)
                throw std::runtime_error("greedy_radius: subroutine returned a tree rooted at " +
                                         std::to_string(cand.root()) + ", expected " +
                                         std::to_string(w));
            if (opts.check_contracts && sub.beta &&
                cand.edge_count() > sub.beta(r) * static_cast<double>(r) + 1e-9)
                throw std::runtime_error(
                    "greedy_radius: subroutine output violates its declared size guarantee");
            double gain = residual.value(cand.vertices());
            return std::pair<OutTree, double>{std::move(cand), gain};
        };

        std::optional<OutTree> best_tree;
        Vertex best_w = -1;
        double best_gain = 0.0;
        if (!opts.lazy) {
            for (size_t idx = 0; idx < W.size(); ++idx) {
                auto [cand, gain] = evaluate(W[idx]);
                if (!best_tree || gain > best_gain) {  // W ascending: ties keep the lower id
                    best_tree = std::move(cand);
                    best_w = W[idx];
                    best_gain = gain;
                }
            }
        } else {
            // pop the stale maximum and refresh it until the top entry is
            // fresh; gains only shrink under growing conditioning sets
            std::vector<char> fresh(W.size(), 0);
            std::vector<OutTree> trees(W.size(), OutTree(v));
            for (;;) {
                size_t top = 0;
                for (size_t idx = 1; idx < W.size(); ++idx)
                    if (stale[idx] > stale[top]) top = idx;
                if (fresh[top]) {
                    best_tree = std::move(trees[top]);
                    best_w = W[top];
                    best_gain = stale[top];
                    break;
                }
                auto [cand, gain] = evaluate(W[top]);
                trees[top] = std::move(cand);
                stale[top] = gain;
                fresh[top] = 1;
            }
        }
        if (!opts.faithful && best_gain <= 0) {
            trace.early_stopped = true;
            break;
        }
        auto edges = path_edges(cache.path(v, best_w));
        auto sub_edges = best_tree->edges_preorder();
        edges.insert(edges.end(), sub_edges.begin(), sub_edges.end());
        sol = graft(sol, edges);
        trace.iterations.push_back(
            {i, best_w, best_tree->edge_count(), best_gain, t - i, r, r});
        trace.updates = i;
    }
    trace.queries = o.queries() - before;
    return {std::move(sol), std::move(trace)};
}

}  // namespace arbormax
