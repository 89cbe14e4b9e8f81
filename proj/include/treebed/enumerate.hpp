#pragma once

#include "treebed/rational.hpp"
#include "treebed/tree.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace treebed {

// One unlabeled tree shape with every interior vertex of degree >= 3.
// Vertices are 0..vertex_count-1 in canonical order; labels come out as
// zero-padded "vNN" so lexicographic equals numeric order.
struct Topology {
    int vertex_count = 0;
    int leaf_count = 0;
    std::vector<std::pair<int, int>> edges; // sorted, first < second
    std::string canon;                      // AHU canonical form, unweighted
};

/// All topologies with 2..max_leaves leaves, no duplicates up to isomorphism,
/// ordered by (leaf count, vertex count, canonical form).
std::vector<Topology> enumerate_topologies(int max_leaves);

/// The labeled weighted instance of a topology; weights follow edge order.
MetricTree instantiate_topology(const Topology& topo, const std::vector<Rat>& weights);

/// Every weighted instance over the grid, in topology order and odometer
/// weight order (last edge fastest). The callback sees the tree, the topology
/// index and the weight tuple.
void for_each_tree(int max_leaves, const std::vector<Rat>& grid,
                   const std::function<void(const MetricTree&, int, const std::vector<Rat>&)>& fn);

std::vector<MetricTree> enumerate_trees(int max_leaves, const std::vector<Rat>& grid);

} // namespace treebed
