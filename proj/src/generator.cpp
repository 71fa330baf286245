#include "arbormax/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace arbormax {

namespace {

std::vector<Edge> model_edges(const GenSpec& spec, SplitMix64& rng) {
    const int n = spec.n;
    std::vector<Edge> edges;
    if (spec.model == "path") {
        for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    } else if (spec.model == "star") {
        for (int i = 1; i < n; ++i) edges.push_back({0, i});
    } else if (spec.model == "grid") {
        int rows = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
        while (n % rows != 0) --rows;
        int cols = n / rows;
        auto id = [cols](int r, int c) { return r * cols + c; };
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
                if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
            }
        }
    } else if (spec.model == "erdos") {
        if (spec.directed) {
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (u != v && rng.chance(spec.p)) edges.push_back({u, v});
        } else {
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng.chance(spec.p)) edges.push_back({u, v});
        }
    } else if (spec.model == "random-out-tree") {
        std::vector<int> label(n);
        std::iota(label.begin(), label.end(), 0);
        for (int i = n - 1; i > 0; --i)
            std::swap(label[i], label[rng.below(static_cast<uint64_t>(i) + 1)]);
        for (int i = 1; i < n; ++i) {
            int parent = static_cast<int>(rng.below(static_cast<uint64_t>(i)));
            edges.push_back({label[parent], label[i]});
        }
    } else {
        throw std::invalid_argument("gen_random: unknown model '" + spec.model + "'");
    }
    return edges;
}

}  // namespace

Instance gen_random(const GenSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("gen_random: n must be at least 1");
    if (spec.k < 1) throw std::invalid_argument("gen_random: k must be at least 1");
    if (spec.model == "erdos" && (spec.p < 0 || spec.p > 1))
        throw std::invalid_argument("gen_random: erdos probability must lie in [0, 1]");
    if (spec.root && (*spec.root < 0 || *spec.root >= spec.n))
        throw std::invalid_argument("gen_random: root out of range");

    SplitMix64 rng{spec.seed ^ 0xa0761d6478bd642fULL};
    Instance inst;
    inst.directed = spec.directed;
    inst.n = spec.n;
    inst.edges = model_edges(spec, rng);
    inst.k = spec.k;
    inst.root = spec.root;

    if (spec.objective == "coverage") {
        inst.objective = Instance::Objective::Coverage;
        inst.universe_size = spec.universe_size > 0 ? spec.universe_size : 2 * spec.n;
        inst.coverage_sets.resize(spec.n);
        for (int v = 0; v < spec.n; ++v) {
            std::set<int> elems;
            for (int i = 0; i < spec.elements_per_vertex; ++i)
                elems.insert(static_cast<int>(rng.below(inst.universe_size)));
            inst.coverage_sets[v].assign(elems.begin(), elems.end());
        }
    } else if (spec.objective == "additive") {
        inst.objective = Instance::Objective::Additive;
        inst.vertex_weights.resize(spec.n);
        for (int v = 0; v < spec.n; ++v)
            inst.vertex_weights[v] =
                static_cast<double>(rng.below(static_cast<uint64_t>(spec.max_weight) + 1));
    } else {
        throw std::invalid_argument("gen_random: unknown objective '" + spec.objective + "'");
    }
    return inst;
}

}  // namespace arbormax
