#pragma once

#include "treebed/embedding.hpp"
#include "treebed/tree.hpp"

namespace treebed {

/// Embeds a k-arm star into (R^n, d1) for k <= 2n: center at the origin, arm
/// i stretched along the signed basis direction E_i, with E_1.. enumerated as
/// +e1, -e1, +e2, -e2, ... Throws Errc::bound when k > 2n.
StarEmbedding star_embed_l1(const StarTree& star, int n);

/// The same construction placed directly onto a star-shaped MetricTree
/// (exactly one interior vertex): center at the origin, leaves in label
/// order along E_1, E_2, ... Throws Errc::bound when the leaf count
/// exceeds 2n and Errc::invalid_tree when the tree is not a star.
PwaEmbedding star_embed_l1_images(const MetricTree& star_tree, int n);

/// Isometric embedding of an arbitrary tree into (R^n, d1) at the optimal
/// dimension n = ceil(L/2), L the leaf count. Paths embed by arclength, stars
/// by the basis construction, everything else by peeling a leaf pair whose
/// removal drops the leaf count by two and spending one coordinate on it (the
/// first removed leaf takes the negative half-axis).
PwaEmbedding embed_l1(const MetricTree& tree);

/// ceil(L/2): the least dimension hosting an isometric d1 embedding.
int min_dim_l1(const MetricTree& tree);

} // namespace treebed
