#pragma once

#include "treebed/embedding.hpp"
#include "treebed/rational.hpp"
#include "treebed/tree.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace treebed::testutil {

// Test-local generator, independent of the library's sampling code.
struct TestRng {
    std::uint64_t state;

    explicit TestRng(std::uint64_t seed) : state(seed * 2654435761u + 1) {}

    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
};

inline Rat random_weight(TestRng& rng, int max_den = 16) {
    int den = rng.range(1, max_den);
    int num = rng.range(1, 3 * den);
    return Rat(num, den);
}

inline Rat random_nonzero_rational(TestRng& rng, int max_den = 16) {
    int den = rng.range(1, max_den);
    int num = rng.range(1, 3 * den);
    return rng.below(2) == 0 ? Rat(num, den) : Rat(-num, den);
}

// Random tree with every interior vertex of degree >= 3, grown by leaf
// attachment and edge subdivision; random rational weights.
inline MetricTree random_tree(TestRng& rng, int min_leaves, int max_leaves, int max_den = 16) {
    struct E {
        int a;
        int b;
        Rat w;
    };
    int target = rng.range(min_leaves, max_leaves);
    std::vector<E> edges{{0, 1, random_weight(rng, max_den)}};
    std::vector<int> degree{1, 1};
    int leaves = 2;
    while (leaves < target) {
        std::vector<int> interior;
        for (size_t v = 0; v < degree.size(); ++v) {
            if (degree[v] >= 3) {
                interior.push_back(static_cast<int>(v));
            }
        }
        if (interior.empty() || rng.below(2) == 0) {
            size_t e = rng.below(edges.size());
            int mid = static_cast<int>(degree.size());
            int tip = mid + 1;
            int b = edges[e].b;
            edges[e].b = mid;
            edges[e].w = random_weight(rng, max_den);
            edges.push_back({mid, b, random_weight(rng, max_den)});
            edges.push_back({mid, tip, random_weight(rng, max_den)});
            degree.push_back(3);
            degree.push_back(1);
        } else {
            int v = interior[rng.below(interior.size())];
            int tip = static_cast<int>(degree.size());
            edges.push_back({v, tip, random_weight(rng, max_den)});
            ++degree[static_cast<size_t>(v)];
            degree.push_back(1);
        }
        ++leaves;
    }
    auto name = [](int v) {
        std::string d = std::to_string(v);
        return "n" + std::string(2 - d.size(), '0') + d;
    };
    std::vector<MetricTree::InputEdge> input;
    for (const E& e : edges) {
        input.push_back({name(e.a), name(e.b), e.w});
    }
    return build_tree(input);
}

inline TreePoint random_point(const MetricTree& tree, TestRng& rng) {
    EdgeId e = static_cast<EdgeId>(rng.below(static_cast<std::uint64_t>(tree.edge_count())));
    int den = rng.range(1, 16);
    int num = rng.range(0, den);
    return tree.edge_point(e, tree.edge(e).u, tree.edge(e).weight * Rat(num, den));
}

// Independent isometry oracle: exact all-pairs comparison over the vertices
// and every edge midpoint; no certificate logic involved.
inline bool oracle_is_isometric(const MetricTree& tree, const PwaEmbedding& emb) {
    std::vector<TreePoint> points;
    for (VertexId v = 0; v < tree.vertex_count(); ++v) {
        points.push_back(tree.vertex_point(v));
    }
    for (EdgeId e = 0; e < tree.edge_count(); ++e) {
        points.push_back(tree.edge_point(e, tree.edge(e).u, tree.edge(e).weight / 2));
    }
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t j = i + 1; j < points.size(); ++j) {
            Rat want = tree.distance(points[i], points[j]);
            Rat got = norm_distance(emb.norm, eval_embedding(tree, emb, points[i]),
                                    eval_embedding(tree, emb, points[j]));
            if (want != got) {
                return false;
            }
        }
    }
    return true;
}

inline MetricTree h_tree() {
    return build_tree({{"a", "b", Rat(1)},
                       {"a", "l1", Rat(1)},
                       {"a", "l2", Rat(1)},
                       {"b", "l3", Rat(1)},
                       {"b", "l4", Rat(1)}});
}

inline MetricTree unit_star(int k) {
    std::vector<MetricTree::InputEdge> edges;
    for (int i = 1; i <= k; ++i) {
        edges.push_back({"o", "t" + std::to_string(i), Rat(1)});
    }
    return build_tree(edges);
}

inline std::vector<Rat> rats(std::initializer_list<int> values) {
    std::vector<Rat> out;
    for (int v : values) {
        out.emplace_back(v);
    }
    return out;
}

} // namespace treebed::testutil
