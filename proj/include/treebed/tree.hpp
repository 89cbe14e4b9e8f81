#pragma once

#include "treebed/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treebed {

using VertexId = int;
using EdgeId = int;

// Canonical orientation: u < v.
struct Edge {
    VertexId u;
    VertexId v;
    Rat weight;
};

class MetricTree;

// A point of the tree: either a vertex, or an interior point of an edge.
// Interior points are stored as the distance from the edge's lower endpoint
// (Edge::u), so equality is structural. Offsets 0 and weight(edge) are
// normalized to the vertex form by the MetricTree factories.
struct TreePoint {
    VertexId vertex = -1; // >= 0 for the vertex form
    EdgeId edge = -1;     // >= 0 for the interior form
    Rat offset;           // distance from Edge::u, 0 < offset < weight

    bool is_vertex() const { return vertex >= 0; }

    static TreePoint at_vertex(VertexId v) {
        TreePoint p;
        p.vertex = v;
        return p;
    }

    friend bool operator==(const TreePoint& a, const TreePoint& b) {
        return a.vertex == b.vertex && a.edge == b.edge && a.offset == b.offset;
    }
};

struct BuildReport {
    std::vector<std::string> suppressed; // labels of merged degree-2 vertices
};

struct LeafPairRemoval;

class MetricTree {
public:
    struct InputEdge {
        std::string a;
        std::string b;
        Rat weight;
    };

    struct Step {
        EdgeId edge;
        bool forward; // true: traversed u -> v
        Rat length;   // portion of the edge actually traversed
    };

    MetricTree() = default;

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_[static_cast<size_t>(e)]; }
    const std::string& label(VertexId v) const { return labels_[static_cast<size_t>(v)]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<VertexId> find(std::string_view label) const;
    VertexId require(std::string_view label) const; // throws not_on_tree
    int degree(VertexId v) const { return static_cast<int>(adj_[static_cast<size_t>(v)].size()); }
    const std::vector<std::pair<VertexId, EdgeId>>& neighbors(VertexId v) const {
        return adj_[static_cast<size_t>(v)];
    }

    bool is_leaf(VertexId v) const { return degree(v) == 1; }
    std::vector<VertexId> leaves() const; // ascending ids == label-sorted
    int leaf_count() const;
    int interior_count() const;
    // The unique neighbor of a leaf and the connecting edge.
    std::pair<VertexId, EdgeId> leaf_attachment(VertexId leaf) const;

    TreePoint vertex_point(VertexId v) const;
    // Offset measured from `anchor`, which must be an endpoint of `e`.
    TreePoint edge_point(EdgeId e, VertexId anchor, const Rat& offset) const;
    void check_point(const TreePoint& p) const;
    std::string describe(const TreePoint& p) const; // "a" or "a-b@1/2"

    Rat distance(VertexId x, VertexId y) const { return vdist_[idx(x, y)]; }
    Rat distance(const TreePoint& p, const TreePoint& q) const;
    std::vector<Step> path(const TreePoint& p, const TreePoint& q) const;
    // Point reached from p after walking `dist` along `steps`; requires
    // 0 <= dist <= total step length.
    TreePoint walk(const TreePoint& p, const std::vector<Step>& steps, const Rat& dist) const;

    bool is_between(const TreePoint& x, const TreePoint& y, const TreePoint& z) const;
    TreePoint median(const TreePoint& x, const TreePoint& y, const TreePoint& z) const;

    LeafPairRemoval remove_leaf_pair(VertexId a0, VertexId a1) const;

    // Locates a point of this tree inside `other` by exact distances, given
    // that every leaf-to-leaf path of `other` is a path of this tree with the
    // same lengths (i.e. `other` came out of remove_leaf_pair). `v` must not
    // lie on a removed branch.
    TreePoint locate_in(const MetricTree& other, VertexId v) const;

    std::vector<InputEdge> to_edge_list() const; // deterministic order

private:
    friend MetricTree build_tree(const std::vector<InputEdge>&, BuildReport*);

    size_t idx(VertexId x, VertexId y) const {
        return static_cast<size_t>(x) * static_cast<size_t>(labels_.size()) + static_cast<size_t>(y);
    }
    void finish_build(); // adjacency + all-pairs distances
    // Distance from a tree point to a vertex.
    Rat point_vertex_distance(const TreePoint& p, VertexId v) const;
    std::vector<VertexId> vertex_path(VertexId x, VertexId y) const;

    std::vector<std::string> labels_;                          // sorted, id == rank
    std::vector<Edge> edges_;                                  // sorted by (u, v)
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
    std::vector<Rat> vdist_; // all-pairs vertex distances
};

struct LeafPairRemoval {
    MetricTree rest;
    TreePoint b0; // former attachment of the first leaf, located in rest
    TreePoint b1;
};

/// Validates and canonicalizes an edge list into a MetricTree. Degree-2
/// interior vertices are merged away and reported via `report`.
MetricTree build_tree(const std::vector<MetricTree::InputEdge>& input, BuildReport* report = nullptr);

/// Tip label of arm `index` (0-based) in a k-arm star realization. Numbers
/// are zero-padded so lexicographic label order equals arm order.
std::string star_tip_label(int index, int k);

// A star: k arms of positive lengths glued at a center, radial metric.
struct StarTree {
    std::vector<Rat> arms;

    int arm_count() const { return static_cast<int>(arms.size()); }
    // Realization with labels "o" (center) and star_tip_label(0..k-1, k). For
    // k == 2 the center has degree 2 and is merged away; for k == 1 it
    // survives as a leaf.
    MetricTree to_metric_tree() const;
};

/// The star view of a tree with exactly one interior vertex; arms follow
/// leaf-label order. Empty for paths and for trees with >= 2 interior vertices.
std::optional<StarTree> as_star(const MetricTree& tree);

} // namespace treebed
