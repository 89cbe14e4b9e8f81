#pragma once

#include "treebed/rational.hpp"
#include "treebed/tree.hpp"

#include <span>
#include <vector>

namespace treebed {

enum class Norm { L1, Linf };

const char* norm_name(Norm n); // "l1" / "linf"

Rat norm_distance(Norm norm, std::span<const Rat> a, std::span<const Rat> b);
Rat d1(std::span<const Rat> a, std::span<const Rat> b);
Rat dinf(std::span<const Rat> a, std::span<const Rat> b);

// A piecewise-affine embedding: vertices carry coordinates, edges map
// affinely onto the segment between their endpoint images.
struct PwaEmbedding {
    Norm norm = Norm::L1;
    int dimension = 0;
    std::vector<std::vector<Rat>> vertex_images; // indexed by VertexId
};

/// Image of an arbitrary tree point: the stored vector for vertices, the
/// affine interpolation along the edge image otherwise.
std::vector<Rat> eval_embedding(const MetricTree& tree, const PwaEmbedding& emb, const TreePoint& p);

// A star paired with the realization its embedding refers to.
struct StarEmbedding {
    MetricTree tree;
    PwaEmbedding embedding;
};

} // namespace treebed
