#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace arbormax {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // (u, v) means u -> v

// Static directed graph over vertex ids 0..n-1. Self-loops are dropped and
// duplicate edges collapse to one; construction rejects out-of-range
// endpoints. Immutable after construction, so concurrent reads are safe.
class Digraph {
public:
    Digraph(int n, const std::vector<Edge>& edges);

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Vertex>& out_neighbors(Vertex v) const { return out_.at(check(v)); }
    const std::vector<Vertex>& in_neighbors(Vertex v) const { return in_.at(check(v)); }
    bool has_edge(Vertex u, Vertex v) const;
    const std::vector<Edge>& edges() const { return edges_; }

private:
    Vertex check(Vertex v) const {
        if (v < 0 || v >= n_) throw std::invalid_argument("Digraph: vertex out of range");
        return v;
    }

    int n_;
    std::vector<std::vector<Vertex>> out_;  // sorted
    std::vector<std::vector<Vertex>> in_;   // sorted
    std::vector<Edge> edges_;               // sorted unique
};

// Builds the directed graph with (u,v) and (v,u) for every undirected {u,v}.
Digraph bidirect(int n, const std::vector<Edge>& undirected_edges);

// Rooted arborescence: every non-root vertex has exactly one parent and
// following parents reaches the root. Parts of a tree partition may share
// vertices at cut points, so this type is a value, not a graph view.
class OutTree {
public:
    explicit OutTree(Vertex root);
    OutTree(Vertex root, std::map<Vertex, Vertex> parent);  // child -> parent, validated

    // edges given as (parent, child) pairs in any order
    static OutTree from_edges(Vertex root, const std::vector<Edge>& edges);

    Vertex root() const { return root_; }
    bool contains(Vertex v) const { return v == root_ || parent_.count(v) > 0; }
    int edge_count() const { return static_cast<int>(parent_.size()); }
    const std::vector<Vertex>& vertices() const { return vertices_; }  // sorted
    const std::map<Vertex, Vertex>& parent_map() const { return parent_; }
    Vertex parent_of(Vertex v) const;

    std::map<Vertex, std::vector<Vertex>> children() const;  // sorted lists
    std::vector<Edge> edges_preorder() const;  // root-outward order, children ascending
    int height() const;
    int depth_of(Vertex v) const;
    bool is_subgraph_of(const Digraph& g) const;

private:
    void rebuild_vertices();
    void validate() const;

    Vertex root_;
    std::map<Vertex, Vertex> parent_;
    std::vector<Vertex> vertices_;
};

// Appends an ordered, root-outward edge list onto s. An edge (a, b) requires
// a to be present already; if b is present the edge is skipped but traversal
// of b's subtree continues. The result is always a valid out-tree rooted at
// root(s) with vertex set equal to the union.
OutTree graft(const OutTree& s, const std::vector<Edge>& addition);

// BFS distances in edge counts; unreachable vertices are absent.
std::map<Vertex, int> bfs_distances(const Digraph& g, Vertex source);

// All w with dist(v, w) <= h, sorted. Contains v for every h >= 0.
std::vector<Vertex> vertices_within(const Digraph& g, Vertex v, int h);

// Shortest path as a vertex sequence; ties broken by lowest-id predecessor.
// Throws if target is unreachable.
std::vector<Vertex> shortest_path(const Digraph& g, Vertex source, Vertex target);

// Center and radius of the tree's undirected projection; center ties break
// to the lowest vertex id.
std::pair<Vertex, int> undirected_center(const OutTree& t);

std::vector<Edge> path_edges(const std::vector<Vertex>& path);

// Memo of BFS results per source, for the guessing loops that query the same
// sources repeatedly. Not thread-safe; use one per solver run.
class DistanceCache {
public:
    explicit DistanceCache(const Digraph& g) : g_(&g) {}

    // dist vector indexed by vertex, -1 when unreachable
    const std::vector<int>& from(Vertex source);
    std::vector<Vertex> within(Vertex v, int h);
    std::vector<Vertex> path(Vertex source, Vertex target);

private:
    const Digraph* g_;
    std::unordered_map<Vertex, std::vector<int>> memo_;
};

}  // namespace arbormax
