#include "arbormax/tree_partition.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace arbormax {

namespace {

// BFS order from the root; reversing it processes children before parents.
std::vector<Vertex> bfs_order(const OutTree& t,
                              const std::map<Vertex, std::vector<Vertex>>& ch) {
    std::vector<Vertex> order{t.root()};
    for (size_t i = 0; i < order.size(); ++i) {
        auto it = ch.find(order[i]);
        if (it == ch.end()) continue;
        order.insert(order.end(), it->second.begin(), it->second.end());
    }
    return order;
}

std::map<Vertex, long long> subtree_edge_counts(const std::map<Vertex, std::vector<Vertex>>& ch,
                                                const std::vector<Vertex>& order) {
    std::map<Vertex, long long> sub;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        long long total = 0;
        auto cit = ch.find(*it);
        if (cit != ch.end())
            for (Vertex c : cit->second) total += sub[c] + 1;
        sub[*it] = total;
    }
    return sub;
}

void collect_branch_edges(const std::map<Vertex, std::vector<Vertex>>& ch, Vertex top,
                          std::vector<Edge>& out) {
    std::vector<Vertex> stack{top};
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        auto it = ch.find(u);
        if (it == ch.end()) continue;
        for (Vertex c : it->second) {
            out.push_back({u, c});
            stack.push_back(c);
        }
    }
}

}  // namespace

std::pair<OutTree, OutTree> balanced_split(const OutTree& t) {
    const long long m = t.edge_count();
    if (m < 2) throw std::invalid_argument("balanced_split: tree needs at least 2 edges");
    auto ch = t.children();
    auto order = bfs_order(t, ch);
    auto sub = subtree_edge_counts(ch, order);

    // Descend while a single branch holds more than 2m/3 edges; at most one
    // child can, so the walk is unique and branch sizes strictly decrease.
    Vertex u = t.root();
    for (;;) {
        Vertex heavy = -1;
        auto it = ch.find(u);
        if (it != ch.end()) {
            for (Vertex c : it->second) {
                if (3 * (sub[c] + 1) > 2 * m) {
                    heavy = c;
                    break;
                }
            }
        }
        if (heavy < 0) break;
        u = heavy;
    }

    // Pick branches at u totalling at least m/3 (and, by the stopping rule,
    // at most 2m/3): a single branch if one is large enough, otherwise a
    // prefix of the children in ascending order.
    std::vector<Vertex> chosen;
    const auto& kids = ch.at(u);
    for (Vertex c : kids) {
        if (3 * (sub[c] + 1) >= m) {
            chosen = {c};
            break;
        }
    }
    if (chosen.empty()) {
        long long total = 0;
        for (Vertex c : kids) {
            chosen.push_back(c);
            total += sub[c] + 1;
            if (3 * total >= m) break;
        }
    }

    std::vector<Edge> sep_edges;
    for (Vertex c : chosen) {
        sep_edges.push_back({u, c});
        collect_branch_edges(ch, c, sep_edges);
    }
    std::set<Edge> taken(sep_edges.begin(), sep_edges.end());
    std::vector<Edge> rest_edges;
    for (const auto& [child, par] : t.parent_map())
        if (!taken.count({par, child})) rest_edges.push_back({par, child});

    OutTree sep = OutTree::from_edges(u, sep_edges);
    OutTree rest = OutTree::from_edges(t.root(), rest_edges);
    if (rest.edge_count() < sep.edge_count()) return {std::move(rest), std::move(sep)};
    return {std::move(sep), std::move(rest)};
}

Partition partition_balanced(const OutTree& t, const Rational& s) {
    if (s.cmp(0) <= 0) throw std::invalid_argument("partition_balanced: s must be positive");
    if (s.cmp(t.edge_count()) > 0)
        throw std::invalid_argument("partition_balanced: tree has fewer than s edges");
    Rational three_s = Rational(3) * s;
    std::vector<OutTree> work{t};
    std::vector<OutTree> done;
    while (!work.empty()) {
        OutTree cur = std::move(work.back());
        work.pop_back();
        if (three_s.cmp(cur.edge_count()) < 0) {  // m > 3s
            auto [a, b] = balanced_split(cur);
            work.push_back(std::move(b));
            work.push_back(std::move(a));
        } else {
            done.push_back(std::move(cur));
        }
    }
    return Partition{std::move(done), t, s};
}

Partition partition_by_size(const OutTree& t, const Rational& s) {
    if (s.cmp(0) <= 0) throw std::invalid_argument("partition_by_size: s must be positive");
    const long long cap = (Rational(2) * s).floor();  // floor(2s)
    if (cap < 1)
        throw std::invalid_argument("partition_by_size: floor(2s) = 0 admits no part size");
    const long long m = t.edge_count();
    if (s.cmp(m) > 0)
        throw std::invalid_argument("partition_by_size: tree has fewer than s edges");

    auto ch = t.children();
    auto order = bfs_order(t, ch);

    struct RawPart {
        Vertex root;
        std::vector<Edge> edges;
    };
    std::vector<RawPart> parts;
    std::map<Vertex, std::vector<Edge>> residual;  // always fewer than s edges

    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex u = *it;
        std::vector<Edge> group;
        auto cit = ch.find(u);
        if (cit != ch.end()) {
            for (Vertex c : cit->second) {
                std::vector<Edge> piece = std::move(residual[c]);
                residual.erase(c);
                piece.push_back({u, c});
                if (static_cast<long long>(group.size() + piece.size()) > cap) {
                    // group + piece would overflow floor(2s); the piece alone
                    // is then guaranteed to hold at least s edges
                    parts.push_back({u, std::move(piece)});
                } else {
                    group.insert(group.end(), piece.begin(), piece.end());
                    if (s.cmp(static_cast<long long>(group.size())) <= 0) {
                        parts.push_back({u, std::move(group)});
                        group = {};
                    }
                }
            }
        }
        residual[u] = std::move(group);
    }

    std::vector<Edge> leftover = std::move(residual[t.root()]);
    if (!leftover.empty()) {
        assert(!parts.empty());  // m >= s forces at least one cut
        std::set<Vertex> leftover_verts{t.root()};
        for (const auto& [a, b] : leftover) {
            leftover_verts.insert(a);
            leftover_verts.insert(b);
        }
        // merge into the part rooted at the lowest-id vertex of the residual
        size_t target = parts.size();
        for (size_t i = 0; i < parts.size(); ++i) {
            if (!leftover_verts.count(parts[i].root)) continue;
            if (target == parts.size() || parts[i].root < parts[target].root) target = i;
        }
        assert(target < parts.size());
        std::vector<Edge> merged = std::move(parts[target].edges);
        merged.insert(merged.end(), leftover.begin(), leftover.end());
        if (static_cast<long long>(merged.size()) <= cap) {
            parts[target] = {t.root(), std::move(merged)};
        } else {
            auto [a, b] = balanced_split(OutTree::from_edges(t.root(), merged));
            parts[target] = {a.root(), a.edges_preorder()};
            parts.insert(parts.begin() + static_cast<long>(target) + 1,
                         {b.root(), b.edges_preorder()});
        }
    }

    std::vector<OutTree> trees;
    trees.reserve(parts.size());
    for (auto& p : parts) trees.push_back(OutTree::from_edges(p.root, p.edges));
    return Partition{std::move(trees), t, s};
}

const OutTree& best_part(const Partition& p, const ValueOracle& o) {
    if (p.parts.empty()) throw std::invalid_argument("best_part: empty partition");
    size_t best = 0;
    double best_value = o.value(p.parts[0].vertices());
    for (size_t i = 1; i < p.parts.size(); ++i) {
        double v = o.value(p.parts[i].vertices());
        if (v > best_value) {
            best_value = v;
            best = i;
        }
    }
    return p.parts[best];
}

}  // namespace arbormax
