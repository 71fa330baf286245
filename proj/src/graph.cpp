#include "arbormax/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace arbormax {

Digraph::Digraph(int n, const std::vector<Edge>& edges) : n_(n) {
    if (n < 0) throw std::invalid_argument("Digraph: negative vertex count");
    std::set<Edge> uniq;
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("Digraph: edge endpoint out of range");
        if (u == v) continue;
        uniq.insert({u, v});
    }
    out_.assign(n, {});
    in_.assign(n, {});
    edges_.assign(uniq.begin(), uniq.end());
    for (const auto& [u, v] : edges_) {
        out_[u].push_back(v);
        in_[v].push_back(u);
    }
}

bool Digraph::has_edge(Vertex u, Vertex v) const {
    const auto& nb = out_neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), check(v));
}

Digraph bidirect(int n, const std::vector<Edge>& undirected_edges) {
    std::vector<Edge> both;
    both.reserve(undirected_edges.size() * 2);
    for (const auto& [u, v] : undirected_edges) {
        both.push_back({u, v});
        both.push_back({v, u});
    }
    return Digraph(n, both);
}

OutTree::OutTree(Vertex root) : root_(root) { rebuild_vertices(); }

OutTree::OutTree(Vertex root, std::map<Vertex, Vertex> parent)
    : root_(root), parent_(std::move(parent)) {
    validate();
    rebuild_vertices();
}

OutTree OutTree::from_edges(Vertex root, const std::vector<Edge>& edges) {
    std::map<Vertex, Vertex> parent;
    for (const auto& [u, v] : edges) {
        if (parent.count(v)) throw std::invalid_argument("OutTree: vertex has two parents");
        parent[v] = u;
    }
    return OutTree(root, std::move(parent));
}

void OutTree::validate() const {
    if (parent_.count(root_)) throw std::invalid_argument("OutTree: root has a parent");
    // every vertex must reach the root without revisiting
    std::map<Vertex, int> state;  // 0 unseen, 1 on path, 2 done
    for (const auto& [child, _] : parent_) {
        std::vector<Vertex> path;
        Vertex v = child;
        while (v != root_ && state[v] == 0) {
            state[v] = 1;
            path.push_back(v);
            auto it = parent_.find(v);
            if (it == parent_.end())
                throw std::invalid_argument("OutTree: parent chain leaves the tree");
            v = it->second;
        }
        if (v != root_ && state[v] == 1)
            throw std::invalid_argument("OutTree: parent edges contain a cycle");
        for (Vertex p : path) state[p] = 2;
    }
}

void OutTree::rebuild_vertices() {
    vertices_.clear();
    vertices_.reserve(parent_.size() + 1);
    bool placed = false;
    for (const auto& [child, _] : parent_) {
        if (!placed && root_ < child) {
            vertices_.push_back(root_);
            placed = true;
        }
        vertices_.push_back(child);
    }
    if (!placed) vertices_.push_back(root_);
}

Vertex OutTree::parent_of(Vertex v) const {
    auto it = parent_.find(v);
    if (it == parent_.end()) throw std::invalid_argument("OutTree: vertex has no parent");
    return it->second;
}

std::map<Vertex, std::vector<Vertex>> OutTree::children() const {
    std::map<Vertex, std::vector<Vertex>> ch;
    for (const auto& [child, par] : parent_) ch[par].push_back(child);
    return ch;  // std::map iteration already yields ascending children
}

std::vector<Edge> OutTree::edges_preorder() const {
    auto ch = children();
    std::vector<Edge> out;
    out.reserve(parent_.size());
    std::vector<Edge> stack;
    auto push_children = [&](Vertex u) {
        auto it = ch.find(u);
        if (it == ch.end()) return;
        for (auto rit = it->second.rbegin(); rit != it->second.rend(); ++rit)
            stack.push_back({u, *rit});  // reversed so children pop ascending
    };
    push_children(root_);
    while (!stack.empty()) {
        Edge e = stack.back();
        stack.pop_back();
        out.push_back(e);
        push_children(e.second);
    }
    return out;
}

int OutTree::height() const {
    int h = 0;
    for (Vertex v : vertices_) h = std::max(h, depth_of(v));
    return h;
}

int OutTree::depth_of(Vertex v) const {
    if (!contains(v)) throw std::invalid_argument("OutTree: vertex not in tree");
    int d = 0;
    while (v != root_) {
        v = parent_.at(v);
        ++d;
    }
    return d;
}

bool OutTree::is_subgraph_of(const Digraph& g) const {
    for (const auto& [child, par] : parent_)
        if (!g.has_edge(par, child)) return false;
    return true;
}

OutTree graft(const OutTree& s, const std::vector<Edge>& addition) {
    std::map<Vertex, Vertex> parent = s.parent_map();
    auto contains = [&](Vertex v) { return v == s.root() || parent.count(v) > 0; };
    for (const auto& [a, b] : addition) {
        if (!contains(a))
            throw std::invalid_argument("graft: addition edge not outward-connected");
        if (contains(b)) continue;  // skip-duplicate-head rule
        parent[b] = a;
    }
    return OutTree(s.root(), std::move(parent));
}

namespace {

std::vector<int> bfs_vector(const Digraph& g, Vertex source) {
    if (source < 0 || source >= g.vertex_count())
        throw std::invalid_argument("bfs: source out of range");
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<Vertex> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        for (Vertex w : g.out_neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

std::vector<Vertex> path_from_dist(const Digraph& g, const std::vector<int>& dist,
                                   Vertex source, Vertex target) {
    if (target < 0 || target >= g.vertex_count())
        throw std::invalid_argument("shortest_path: target out of range");
    if (dist[target] < 0) throw std::runtime_error("shortest_path: no path to target");
    std::vector<Vertex> rev{target};
    Vertex cur = target;
    while (cur != source) {
        Vertex best = -1;
        for (Vertex u : g.in_neighbors(cur)) {
            if (dist[u] == dist[cur] - 1) {
                best = u;  // in_neighbors sorted: first hit is lowest id
                break;
            }
        }
        cur = best;
        rev.push_back(cur);
    }
    return {rev.rbegin(), rev.rend()};
}

}  // namespace

std::map<Vertex, int> bfs_distances(const Digraph& g, Vertex source) {
    auto dist = bfs_vector(g, source);
    std::map<Vertex, int> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dist[v] >= 0) out[v] = dist[v];
    return out;
}

std::vector<Vertex> vertices_within(const Digraph& g, Vertex v, int h) {
    if (h < 0) throw std::invalid_argument("vertices_within: negative horizon");
    auto dist = bfs_vector(g, v);
    std::vector<Vertex> out;
    for (Vertex w = 0; w < g.vertex_count(); ++w)
        if (dist[w] >= 0 && dist[w] <= h) out.push_back(w);
    return out;
}

std::vector<Vertex> shortest_path(const Digraph& g, Vertex source, Vertex target) {
    return path_from_dist(g, bfs_vector(g, source), source, target);
}

std::pair<Vertex, int> undirected_center(const OutTree& t) {
    const auto& verts = t.vertices();
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const auto& [child, par] : t.parent_map()) {
        adj[par].push_back(child);
        adj[child].push_back(par);
    }
    Vertex center = t.root();
    int radius = -1;
    for (Vertex v : verts) {
        std::map<Vertex, int> dist{{v, 0}};
        std::deque<Vertex> queue{v};
        int ecc = 0;
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            ecc = std::max(ecc, dist[u]);
            for (Vertex w : adj[u]) {
                if (!dist.count(w)) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if (radius < 0 || ecc < radius) {
            radius = ecc;
            center = v;  // verts ascending: first minimum is lowest id
        }
    }
    return {center, radius};
}

std::vector<Edge> path_edges(const std::vector<Vertex>& path) {
    std::vector<Edge> out;
    for (size_t i = 0; i + 1 < path.size(); ++i) out.push_back({path[i], path[i + 1]});
    return out;
}

const std::vector<int>& DistanceCache::from(Vertex source) {
    auto it = memo_.find(source);
    if (it == memo_.end()) it = memo_.emplace(source, bfs_vector(*g_, source)).first;
    return it->second;
}

std::vector<Vertex> DistanceCache::within(Vertex v, int h) {
    const auto& dist = from(v);
    std::vector<Vertex> out;
    for (Vertex w = 0; w < g_->vertex_count(); ++w)
        if (dist[w] >= 0 && dist[w] <= h) out.push_back(w);
    return out;
}

std::vector<Vertex> DistanceCache::path(Vertex source, Vertex target) {
    return path_from_dist(*g_, from(source), source, target);
}

}  // namespace arbormax
