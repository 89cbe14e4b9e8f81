#include "treebed/enumerate.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace treebed {

namespace {

using EdgeVec = std::vector<std::pair<int, int>>;

std::vector<std::vector<int>> adjacency(const EdgeVec& edges, int n) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (auto [a, b] : edges) {
        adj[static_cast<size_t>(a)].push_back(b);
        adj[static_cast<size_t>(b)].push_back(a);
    }
    return adj;
}

// Center vertices (1 or 2) by iterated leaf stripping.
std::vector<int> centers(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n <= 2) {
        std::vector<int> all(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            all[static_cast<size_t>(i)] = i;
        }
        return all;
    }
    std::vector<int> deg(static_cast<size_t>(n));
    std::vector<int> layer;
    for (int v = 0; v < n; ++v) {
        deg[static_cast<size_t>(v)] = static_cast<int>(adj[static_cast<size_t>(v)].size());
        if (deg[static_cast<size_t>(v)] <= 1) {
            layer.push_back(v);
        }
    }
    int remaining = n;
    while (remaining > 2) {
        remaining -= static_cast<int>(layer.size());
        std::vector<int> next;
        for (int v : layer) {
            for (int w : adj[static_cast<size_t>(v)]) {
                if (--deg[static_cast<size_t>(w)] == 1) {
                    next.push_back(w);
                }
            }
        }
        layer = std::move(next);
    }
    std::sort(layer.begin(), layer.end());
    return layer;
}

std::string rooted_canon(int v, int parent, const std::vector<std::vector<int>>& adj) {
    std::vector<std::string> kids;
    for (int w : adj[static_cast<size_t>(v)]) {
        if (w != parent) {
            kids.push_back(rooted_canon(w, v, adj));
        }
    }
    std::sort(kids.begin(), kids.end());
    std::string s = "(";
    for (const auto& k : kids) {
        s += k;
    }
    s += ")";
    return s;
}

std::string free_canon(const EdgeVec& edges, int n) {
    auto adj = adjacency(edges, n);
    std::string best;
    for (int c : centers(adj)) {
        std::string s = rooted_canon(c, -1, adj);
        if (best.empty() || s < best) {
            best = std::move(s);
        }
    }
    return best;
}

// Rebuild the canonical labeled tree straight from its bracket string:
// vertices numbered in preorder, so identical strings give identical
// topologies regardless of how they were generated.
Topology topology_from_canon(const std::string& canon) {
    Topology t;
    t.canon = canon;
    std::vector<int> stack;
    int next = 0;
    for (char ch : canon) {
        if (ch == '(') {
            int v = next++;
            if (!stack.empty()) {
                t.edges.emplace_back(stack.back(), v);
            }
            stack.push_back(v);
        } else {
            stack.pop_back();
        }
    }
    t.vertex_count = next;
    std::sort(t.edges.begin(), t.edges.end());
    std::vector<int> deg(static_cast<size_t>(next), 0);
    for (auto [a, b] : t.edges) {
        ++deg[static_cast<size_t>(a)];
        ++deg[static_cast<size_t>(b)];
    }
    t.leaf_count = static_cast<int>(std::count(deg.begin(), deg.end(), 1));
    return t;
}

} // namespace

std::vector<Topology> enumerate_topologies(int max_leaves) {
    if (max_leaves < 2) {
        throw Error(Errc::guard, "max_leaves must be at least 2");
    }
    // Grow by attaching one leaf at a time: onto an interior vertex, or onto
    // the midpoint of an edge (fresh degree-3 vertex). Every tree without
    // degree-2 interior vertices arises this way from the single edge.
    std::map<int, std::set<std::string>> by_leaves;
    by_leaves[2].insert(free_canon({{0, 1}}, 2));
    for (int leaves = 2; leaves < max_leaves; ++leaves) {
        for (const std::string& canon : by_leaves[leaves]) {
            Topology t = topology_from_canon(canon);
            auto adj = adjacency(t.edges, t.vertex_count);
            for (int v = 0; v < t.vertex_count; ++v) {
                if (adj[static_cast<size_t>(v)].size() >= 3) {
                    EdgeVec grown = t.edges;
                    grown.emplace_back(v, t.vertex_count);
                    by_leaves[leaves + 1].insert(free_canon(grown, t.vertex_count + 1));
                }
            }
            for (size_t e = 0; e < t.edges.size(); ++e) {
                EdgeVec grown = t.edges;
                auto [x, y] = grown[e];
                int mid = t.vertex_count;
                int tip = t.vertex_count + 1;
                grown[e] = {x, mid};
                grown.emplace_back(mid, y);
                grown.emplace_back(mid, tip);
                by_leaves[leaves + 1].insert(free_canon(grown, t.vertex_count + 2));
            }
        }
    }

    std::vector<Topology> out;
    for (const auto& [leaves, canons] : by_leaves) {
        (void)leaves;
        std::vector<Topology> level;
        for (const std::string& canon : canons) {
            level.push_back(topology_from_canon(canon));
        }
        std::sort(level.begin(), level.end(), [](const Topology& a, const Topology& b) {
            return std::tie(a.vertex_count, a.canon) < std::tie(b.vertex_count, b.canon);
        });
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

MetricTree instantiate_topology(const Topology& topo, const std::vector<Rat>& weights) {
    if (weights.size() != topo.edges.size()) {
        throw Error(Errc::guard, "need one weight per topology edge");
    }
    size_t width = std::to_string(topo.vertex_count - 1).size();
    auto name = [&](int v) {
        std::string digits = std::to_string(v);
        return "v" + std::string(width - digits.size(), '0') + digits;
    };
    std::vector<MetricTree::InputEdge> edges;
    for (size_t i = 0; i < topo.edges.size(); ++i) {
        edges.push_back(MetricTree::InputEdge{name(topo.edges[i].first), name(topo.edges[i].second),
                                              weights[i]});
    }
    return build_tree(edges);
}

void for_each_tree(int max_leaves, const std::vector<Rat>& grid,
                   const std::function<void(const MetricTree&, int, const std::vector<Rat>&)>& fn) {
    if (grid.empty()) {
        throw Error(Errc::guard, "weight grid must be nonempty");
    }
    for (const Rat& w : grid) {
        if (w <= 0) {
            throw Error(Errc::guard, "weight grid entries must be positive");
        }
    }
    auto topologies = enumerate_topologies(max_leaves);
    for (size_t t = 0; t < topologies.size(); ++t) {
        const Topology& topo = topologies[t];
        std::vector<size_t> pick(topo.edges.size(), 0);
        for (;;) {
            std::vector<Rat> weights(topo.edges.size());
            for (size_t i = 0; i < pick.size(); ++i) {
                weights[i] = grid[pick[i]];
            }
            fn(instantiate_topology(topo, weights), static_cast<int>(t), weights);
            // odometer, last edge fastest
            bool rolled_over = false;
            size_t i = pick.size();
            for (;;) {
                if (i == 0) {
                    rolled_over = true;
                    break;
                }
                --i;
                if (++pick[i] < grid.size()) {
                    break;
                }
                pick[i] = 0;
            }
            if (rolled_over) {
                break;
            }
        }
    }
}

std::vector<MetricTree> enumerate_trees(int max_leaves, const std::vector<Rat>& grid) {
    std::vector<MetricTree> out;
    for_each_tree(max_leaves, grid,
                  [&](const MetricTree& tree, int, const std::vector<Rat>&) { out.push_back(tree); });
    return out;
}

} // namespace treebed
