#include "treebed/embed_linf.hpp"

#include "treebed/verify.hpp"

#include <bit>

namespace treebed {

namespace {

// Sign vectors v_1..v_{2^n}: binary counting over {+1, -1} with +1 first,
// most significant coordinate first. v_1 = (+..+), v_{2^n} = (-..-).
std::vector<Rat> sign_vector(int index, int n, const Rat& scale) {
    std::vector<Rat> v(static_cast<size_t>(n));
    for (int c = 0; c < n; ++c) {
        bool neg = ((index >> (n - 1 - c)) & 1) != 0;
        v[static_cast<size_t>(c)] = neg ? Rat(-scale) : scale;
    }
    return v;
}

} // namespace

int ceil_log2(int k) {
    if (k <= 1) {
        return 0;
    }
    return std::bit_width(static_cast<unsigned>(k - 1));
}

bool in_sector(std::span<const Rat> p, std::span<const Rat> q, const SectorIndex& s) {
    if (p.size() != q.size()) {
        throw Error(Errc::dimension, "in_sector: dimension mismatch");
    }
    if (s.coordinate < 1 || s.coordinate > static_cast<int>(p.size())) {
        throw Error(Errc::dimension, "sector coordinate out of range");
    }
    if (s.sign != 1 && s.sign != -1) {
        throw Error(Errc::dimension, "sector sign must be +1 or -1");
    }
    Rat delta = q[static_cast<size_t>(s.coordinate - 1)] - p[static_cast<size_t>(s.coordinate - 1)];
    return Rat(s.sign * delta) == dinf(p, q);
}

void validate_polyline(const GeodesicPolyline& poly) {
    if (poly.points.size() < 2) {
        throw Error(Errc::geometry, "polyline needs at least 2 breakpoints");
    }
    size_t dim = poly.points.front().size();
    if (dim == 0) {
        throw Error(Errc::dimension, "polyline dimension must be positive");
    }
    for (size_t i = 0; i < poly.points.size(); ++i) {
        if (poly.points[i].size() != dim) {
            throw Error(Errc::dimension, "ragged polyline breakpoints");
        }
        if (i > 0 && poly.points[i] == poly.points[i - 1]) {
            throw Error(Errc::geometry, "consecutive breakpoints coincide");
        }
    }
}

Rat polyline_arclength(const GeodesicPolyline& poly) {
    validate_polyline(poly);
    Rat total = 0;
    for (size_t i = 0; i + 1 < poly.points.size(); ++i) {
        total += dinf(poly.points[i], poly.points[i + 1]);
    }
    return total;
}

std::vector<Rat> polyline_at(const GeodesicPolyline& poly, const Rat& t) {
    validate_polyline(poly);
    if (t < 0) {
        throw Error(Errc::geometry, "parameter below 0");
    }
    Rat remaining = t;
    for (size_t i = 0; i + 1 < poly.points.size(); ++i) {
        Rat len = dinf(poly.points[i], poly.points[i + 1]);
        if (remaining <= len) {
            Rat f = remaining / len;
            std::vector<Rat> out(poly.points[i].size());
            for (size_t c = 0; c < out.size(); ++c) {
                out[c] = poly.points[i][c] + f * (poly.points[i + 1][c] - poly.points[i][c]);
            }
            return out;
        }
        remaining -= len;
    }
    throw Error(Errc::geometry, "parameter beyond arclength");
}

std::optional<SectorIndex> is_geodesic_polyline(const GeodesicPolyline& poly) {
    validate_polyline(poly);
    const int n = poly.dimension();
    for (int c = 1; c <= n; ++c) {
        for (int sign : {+1, -1}) {
            SectorIndex s{c, sign};
            bool ok = true;
            for (size_t i = 0; i + 1 < poly.points.size() && ok; ++i) {
                ok = in_sector(poly.points[i], poly.points[i + 1], s);
            }
            if (ok) {
                return s;
            }
        }
    }
    return std::nullopt;
}

GeodesicPolyline shorten_geodesic(const GeodesicPolyline& poly, const Rat& c, const Rat& d) {
    if (!is_geodesic_polyline(poly)) {
        throw Error(Errc::geometry, "input polyline is not a geodesic");
    }
    Rat b = polyline_arclength(poly);
    if (!(0 < c && c < d && d < b)) {
        throw Error(Errc::geometry, "splice range must satisfy 0 < c < d < arclength");
    }

    std::vector<Rat> at_c = polyline_at(poly, c);
    std::vector<Rat> at_d = polyline_at(poly, d);
    std::vector<Rat> shift(at_c.size());
    for (size_t i = 0; i < shift.size(); ++i) {
        shift[i] = at_c[i] - at_d[i];
    }

    GeodesicPolyline out;
    Rat cum = 0;
    out.points.push_back(poly.points.front());
    for (size_t i = 0; i + 1 < poly.points.size(); ++i) {
        cum += dinf(poly.points[i], poly.points[i + 1]);
        if (cum < c) {
            out.points.push_back(poly.points[i + 1]);
        }
    }
    if (out.points.back() != at_c) {
        out.points.push_back(at_c);
    }
    cum = 0;
    for (size_t i = 0; i + 1 < poly.points.size(); ++i) {
        cum += dinf(poly.points[i], poly.points[i + 1]);
        if (cum > d) {
            std::vector<Rat> moved(poly.points[i + 1].size());
            for (size_t k = 0; k < moved.size(); ++k) {
                moved[k] = poly.points[i + 1][k] + shift[k];
            }
            if (moved != out.points.back()) {
                out.points.push_back(std::move(moved));
            }
        }
    }
    validate_polyline(out);
    return out;
}

PwaEmbedding star_embed_linf_images(const MetricTree& star_tree, int n) {
    if (n < 1 || n > 30) {
        throw Error(Errc::dimension, "dimension out of supported range");
    }
    auto ls = star_tree.leaves();
    const int k = static_cast<int>(ls.size());
    if (star_tree.interior_count() != 1) {
        throw Error(Errc::invalid_tree, "tree is not a star");
    }
    if (k > (1 << n)) {
        throw Error(Errc::bound, "a " + std::to_string(k) + "-arm star does not embed into (R^" +
                                     std::to_string(n) + ", dinf): k <= 2^n required");
    }
    PwaEmbedding emb;
    emb.norm = Norm::Linf;
    emb.dimension = n;
    emb.vertex_images.assign(static_cast<size_t>(star_tree.vertex_count()),
                             std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int i = 0; i < k; ++i) {
        Rat arm = star_tree.edge(star_tree.leaf_attachment(ls[static_cast<size_t>(i)]).second).weight;
        emb.vertex_images[static_cast<size_t>(ls[static_cast<size_t>(i)])] = sign_vector(i, n, arm);
    }
    return emb;
}

StarEmbedding star_embed_linf(const StarTree& star, int n) {
    const int k = star.arm_count();
    if (n < 1 || n > 30) {
        throw Error(Errc::dimension, "dimension out of supported range");
    }
    if (k > (1 << n)) {
        throw Error(Errc::bound, "a " + std::to_string(k) + "-arm star does not embed into (R^" +
                                     std::to_string(n) + ", dinf): k <= 2^n required");
    }
    StarEmbedding out{star.to_metric_tree(), {}};
    if (k >= 3) {
        out.embedding = star_embed_linf_images(out.tree, n);
        return out;
    }
    PwaEmbedding emb;
    emb.norm = Norm::Linf;
    emb.dimension = n;
    emb.vertex_images.assign(static_cast<size_t>(out.tree.vertex_count()),
                             std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int i = 0; i < k; ++i) {
        VertexId tip = out.tree.require(star_tip_label(i, k));
        emb.vertex_images[static_cast<size_t>(tip)] = sign_vector(i, n, star.arms[static_cast<size_t>(i)]);
    }
    out.embedding = std::move(emb);
    return out;
}

PwaEmbedding kuratowski_embed_linf(const MetricTree& tree) {
    auto ls = tree.leaves();
    PwaEmbedding emb;
    emb.norm = Norm::Linf;
    emb.dimension = static_cast<int>(ls.size());
    emb.vertex_images.assign(static_cast<size_t>(tree.vertex_count()), {});
    for (VertexId v = 0; v < tree.vertex_count(); ++v) {
        std::vector<Rat> image(ls.size());
        for (size_t i = 0; i < ls.size(); ++i) {
            image[i] = tree.distance(v, ls[i]);
        }
        emb.vertex_images[static_cast<size_t>(v)] = std::move(image);
    }
    return emb;
}

LeafDirectionStar leaf_direction_star(const MetricTree& tree, const PwaEmbedding& emb) {
    VerifyOptions opts;
    opts.samples = 0;
    opts.parallel = false;
    if (!verify_isometry(tree, emb, opts).exact_pass) {
        throw Error(Errc::geometry, "leaf_direction_star requires a verified isometric embedding");
    }

    auto ls = tree.leaves();
    std::vector<std::vector<Rat>> directions;
    StarTree star;
    for (VertexId leaf : ls) {
        auto [attach, edge] = tree.leaf_attachment(leaf);
        const auto& a = emb.vertex_images[static_cast<size_t>(leaf)];
        const auto& b = emb.vertex_images[static_cast<size_t>(attach)];
        std::vector<Rat> dir(a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            dir[i] = a[i] - b[i];
        }
        Rat weight = tree.edge(edge).weight;
        if (norm_distance(emb.norm, dir, std::vector<Rat>(dir.size(), Rat(0))) != weight) {
            throw Error(Errc::internal, "leaf edge image length mismatch after verification");
        }
        directions.push_back(std::move(dir));
        star.arms.push_back(weight);
    }
    // D_i = t * D_j with t > 0 forces t = w_i / w_j, so cross-scaling by the
    // arm lengths detects positive proportionality exactly.
    for (size_t i = 0; i < directions.size(); ++i) {
        for (size_t j = i + 1; j < directions.size(); ++j) {
            bool proportional = true;
            for (size_t cidx = 0; cidx < directions[i].size() && proportional; ++cidx) {
                proportional = directions[i][cidx] * star.arms[j] == directions[j][cidx] * star.arms[i];
            }
            if (proportional) {
                throw Error(Errc::internal, "leaf directions of '" + tree.label(ls[i]) + "' and '" +
                                                tree.label(ls[j]) + "' are positively proportional");
            }
        }
    }

    LeafDirectionStar out{star, star.to_metric_tree(), {}};
    PwaEmbedding semb;
    semb.norm = emb.norm;
    semb.dimension = emb.dimension;
    semb.vertex_images.assign(static_cast<size_t>(out.tree.vertex_count()),
                              std::vector<Rat>(static_cast<size_t>(emb.dimension), Rat(0)));
    for (size_t i = 0; i < directions.size(); ++i) {
        VertexId tip = out.tree.require(star_tip_label(static_cast<int>(i), star.arm_count()));
        semb.vertex_images[static_cast<size_t>(tip)] = directions[i];
    }
    out.embedding = std::move(semb);
    return out;
}

LinfDimBounds min_dim_linf_bounds(const MetricTree& tree) {
    const int leaves = tree.leaf_count();
    int lower = std::max(1, ceil_log2(leaves));
    int upper = tree.interior_count() <= 1 ? lower : leaves;
    return {lower, upper};
}

} // namespace treebed
