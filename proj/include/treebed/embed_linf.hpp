#pragma once

#include "treebed/embedding.hpp"
#include "treebed/tree.hpp"

#include <optional>

namespace treebed {

// Sector S_i^eps(p): the points q with eps * (q_i - p_i) == dinf(p, q).
struct SectorIndex {
    int coordinate = 1; // 1-based
    int sign = +1;      // +1 or -1

    friend bool operator==(const SectorIndex& a, const SectorIndex& b) {
        return a.coordinate == b.coordinate && a.sign == b.sign;
    }
};

bool in_sector(std::span<const Rat> p, std::span<const Rat> q, const SectorIndex& s);

// Piecewise-affine path in (R^n, dinf): >= 2 breakpoints, consecutive ones
// distinct, all of equal dimension.
struct GeodesicPolyline {
    std::vector<std::vector<Rat>> points;

    int dimension() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
};

void validate_polyline(const GeodesicPolyline& poly);
Rat polyline_arclength(const GeodesicPolyline& poly);
// Point at arclength parameter t in [0, arclength].
std::vector<Rat> polyline_at(const GeodesicPolyline& poly, const Rat& t);

/// A witness (i, eps) such that every segment moves at full slope eps in
/// coordinate i certifies the polyline is geodesic under arclength
/// parametrization; returns the first witness in (coordinate, +, -) order,
/// or nullopt when no coordinate/sign works.
std::optional<SectorIndex> is_geodesic_polyline(const GeodesicPolyline& poly);

/// Splices out the middle (c, d) of a geodesic: keeps [0, c], translates the
/// [d, b] tail by alpha(c) - alpha(d). Requires 0 < c < d < b and a geodesic
/// input; the result is a geodesic of arclength b - d + c.
GeodesicPolyline shorten_geodesic(const GeodesicPolyline& poly, const Rat& c, const Rat& d);

/// Star embedding into (R^n, dinf) for k <= 2^n arms: center at the origin,
/// arm i along the sign vector v_i, with v_1..v_{2^n} enumerating {+1,-1}^n
/// in binary-counting order (+1 first). Throws Errc::bound when k > 2^n.
StarEmbedding star_embed_linf(const StarTree& star, int n);

/// The sign-vector construction placed directly onto a star-shaped
/// MetricTree, leaves in label order along v_1, v_2, ...
PwaEmbedding star_embed_linf_images(const MetricTree& star_tree, int n);

/// x -> (d(x, leaf_1), ..., d(x, leaf_L)) in leaf-label order: an exact
/// isometric embedding into (R^L, dinf).
PwaEmbedding kuratowski_embed_linf(const MetricTree& tree);

struct LeafDirectionStar {
    StarTree star;
    MetricTree tree; // star.to_metric_tree(), paired for convenience
    PwaEmbedding embedding;
};

/// From a verified embedding, the star of unit leaf directions: one arm per
/// leaf with the leaf-edge weight, tip i at A_i - B_i (leaf image minus
/// attachment image). Throws Errc::geometry when the input fails
/// verification, Errc::internal when two directions come out positively
/// proportional.
LeafDirectionStar leaf_direction_star(const MetricTree& tree, const PwaEmbedding& emb);

struct LinfDimBounds {
    int lower; // ceil(log2 L)
    int upper; // L in general; == lower for stars and 2-leaf paths
};

LinfDimBounds min_dim_linf_bounds(const MetricTree& tree);

int ceil_log2(int k);

} // namespace treebed
