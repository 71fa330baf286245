#include "arbormax/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <deque>
#include <string>

namespace arbormax {

long long ExactOptions::effective_cap() const {
    if (max_sets) return *max_sets;
    if (const char* env = std::getenv("ARBORMAX_CAP")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 5'000'000;
}

namespace {

struct MaskSearch {
    const Digraph* g;
    std::vector<uint32_t> out_mask;
    int max_size = 0;
    long long cap = 0;
    long long count = 0;
    std::function<void(uint32_t)> visit;

    void run(Vertex v) { recurse(uint32_t{1} << v, 0); }

    void recurse(uint32_t set, uint32_t forbidden) {
        if (++count > cap)
            throw CapExceeded("exact solver: instance too large, candidate sets exceeded "
                              "cap of " +
                              std::to_string(cap) + " (override with ARBORMAX_CAP)");
        visit(set);
        if (std::popcount(set) >= max_size) return;
        uint32_t ext = 0;
        for (uint32_t rest = set; rest;) {
            int v = std::countr_zero(rest);
            rest &= rest - 1;
            ext |= out_mask[v];
        }
        ext &= ~set & ~forbidden;
        uint32_t banned = forbidden;
        while (ext) {
            uint32_t wbit = ext & (~ext + 1);
            ext ^= wbit;
            recurse(set | wbit, banned);
            banned |= wbit;
        }
    }
};

std::vector<uint32_t> neighbor_masks(const Digraph& g) {
    std::vector<uint32_t> masks(g.vertex_count(), 0);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        for (Vertex w : g.out_neighbors(v)) masks[v] |= uint32_t{1} << w;
    return masks;
}

VertexSet mask_to_set(uint32_t mask) {
    VertexSet s;
    while (mask) {
        s.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return s;
}

// BFS depths from root restricted to the mask; height via max layer.
// Enumerated sets are reachable by construction.
int bfs_height_in_mask(const Digraph& g, uint32_t mask, Vertex root,
                       std::vector<int>* depth_out = nullptr) {
    std::vector<int> depth(g.vertex_count(), -1);
    std::deque<Vertex> queue{root};
    depth[root] = 0;
    int height = 0;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        height = std::max(height, depth[u]);
        for (Vertex w : g.out_neighbors(u)) {
            if ((mask >> w & 1) && depth[w] < 0) {
                depth[w] = depth[u] + 1;
                queue.push_back(w);
            }
        }
    }
    if (depth_out) *depth_out = std::move(depth);
    return height;
}

// Spanning out-tree along BFS layers, parents chosen lowest-id first.
OutTree bfs_tree_in_mask(const Digraph& g, uint32_t mask, Vertex root) {
    std::vector<int> depth;
    int height = bfs_height_in_mask(g, mask, root, &depth);
    std::map<Vertex, Vertex> parent;
    for (int layer = 1; layer <= height; ++layer) {
        for (Vertex u = 0; u < g.vertex_count(); ++u) {
            if (!(mask >> u & 1) || depth[u] != layer - 1) continue;
            for (Vertex w : g.out_neighbors(u)) {
                if ((mask >> w & 1) && depth[w] == layer && !parent.count(w)) parent[w] = u;
            }
        }
    }
    return OutTree(root, std::move(parent));
}

void check_size(const Digraph& g, const ExactOptions& opts) {
    if (g.vertex_count() > opts.max_vertices)
        throw CapExceeded("exact solver: instance too large, n = " +
                          std::to_string(g.vertex_count()) + " exceeds vertex cap " +
                          std::to_string(opts.max_vertices));
    if (opts.max_vertices > 31)
        throw std::invalid_argument("exact solver: vertex cap beyond 31 unsupported");
}

}  // namespace

void enumerate_connected_sets(const Digraph& g, Vertex v, int max_size,
                              const std::function<void(const VertexSet&)>& emit,
                              const ExactOptions& opts) {
    check_size(g, opts);
    if (v < 0 || v >= g.vertex_count())
        throw std::invalid_argument("enumerate_connected_sets: root out of range");
    if (max_size < 1) throw std::invalid_argument("enumerate_connected_sets: max_size < 1");
    MaskSearch search{&g, neighbor_masks(g), std::min(max_size, g.vertex_count()),
                      opts.effective_cap(), 0,
                      [&](uint32_t mask) { emit(mask_to_set(mask)); }};
    search.run(v);
}

ExactResult exact_drcsm(const Digraph& g, const ValueOracle& o, int k, Vertex root,
                        std::optional<int> height_cap, const ExactOptions& opts) {
    check_size(g, opts);
    if (root < 0 || root >= g.vertex_count())
        throw std::invalid_argument("exact_drcsm: root out of range");
    if (k < 0) throw std::invalid_argument("exact_drcsm: negative size constraint");

    std::optional<MemoizedOracle> memo;
    const ValueOracle& f = opts.memoize ? (memo.emplace(o), *memo) : o;

    uint32_t best_mask = uint32_t{1} << root;
    double best_value = f.value(mask_to_set(best_mask));
    int best_height = 0;
    MaskSearch search{&g, neighbor_masks(g),
                      std::min(k + 1, g.vertex_count()), opts.effective_cap(), 0,
                      [&](uint32_t mask) {
                          int height = bfs_height_in_mask(g, mask, root);
                          if (height_cap && height > *height_cap) return;
                          double value = f.value(mask_to_set(mask));
                          if (value > best_value ||
                              (value == best_value && height < best_height)) {
                              best_value = value;
                              best_mask = mask;
                              best_height = height;
                          }
                      }};
    search.run(root);

    ExactResult res{bfs_tree_in_mask(g, best_mask, root), best_value, best_height,
                    search.count, std::nullopt, std::nullopt};
    return res;
}

ExactResult exact_dcsm(const Digraph& g, const ValueOracle& o, int k, const ExactOptions& opts) {
    check_size(g, opts);
    std::optional<ExactResult> best;
    long long total = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        ExactResult r = exact_drcsm(g, o, k, v, std::nullopt, opts);
        total += r.candidates;
        if (!best || r.value > best->value ||
            (r.value == best->value && r.height < best->height))
            best = std::move(r);
    }
    if (!best) throw std::invalid_argument("exact_dcsm: empty graph");
    best->candidates = total;
    return *best;
}

ExactResult exact_csm(int n, const std::vector<Edge>& undirected_edges, const ValueOracle& o,
                      int k, const ExactOptions& opts) {
    ExactResult best = exact_dcsm(bidirect(n, undirected_edges), o, k, opts);
    auto [center, radius] = undirected_center(best.tree);
    best.undirected_center = center;
    best.undirected_radius = radius;
    return best;
}

}  // namespace arbormax
