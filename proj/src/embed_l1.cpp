#include "treebed/embed_l1.hpp"

#include <algorithm>

namespace treebed {

namespace {

// E_1, E_2, ... = +e1, -e1, +e2, -e2, ...
std::vector<Rat> signed_basis_direction(int index, int n, const Rat& scale) {
    std::vector<Rat> v(static_cast<size_t>(n), Rat(0));
    v[static_cast<size_t>(index / 2)] = index % 2 == 0 ? scale : Rat(-scale);
    return v;
}

PwaEmbedding path_arclength(const MetricTree& tree) {
    // A 2-leaf tree is a single edge after degree-2 suppression.
    PwaEmbedding emb;
    emb.norm = Norm::L1;
    emb.dimension = 1;
    const Edge& e = tree.edge(0);
    emb.vertex_images.assign(static_cast<size_t>(tree.vertex_count()), {});
    emb.vertex_images[static_cast<size_t>(e.u)] = {Rat(0)};
    emb.vertex_images[static_cast<size_t>(e.v)] = {e.weight};
    return emb;
}

// First leaf pair in lexicographic label order whose removal drops the leaf
// count by exactly two. A pair fails only when both leaves share a degree-3
// attachment (the attachment turns into a fresh leaf), and some passing pair
// always exists unless the tree is a 3-star, which the star construction
// handles before we get here.
std::pair<VertexId, VertexId> pick_leaf_pair(const MetricTree& tree) {
    auto ls = tree.leaves();
    for (size_t i = 0; i < ls.size(); ++i) {
        for (size_t j = i + 1; j < ls.size(); ++j) {
            VertexId bi = tree.leaf_attachment(ls[i]).first;
            VertexId bj = tree.leaf_attachment(ls[j]).first;
            if (bi == bj && tree.degree(bi) == 3) {
                continue;
            }
            return {ls[i], ls[j]};
        }
    }
    throw Error(Errc::internal, "no leaf pair reduces the leaf count by two");
}

} // namespace

int min_dim_l1(const MetricTree& tree) { return (tree.leaf_count() + 1) / 2; }

PwaEmbedding star_embed_l1_images(const MetricTree& star_tree, int n) {
    if (n < 1) {
        throw Error(Errc::dimension, "dimension must be positive");
    }
    auto ls = star_tree.leaves();
    const int k = static_cast<int>(ls.size());
    if (star_tree.interior_count() != 1) {
        throw Error(Errc::invalid_tree, "tree is not a star");
    }
    if (k > 2 * n) {
        throw Error(Errc::bound, "a " + std::to_string(k) + "-arm star does not embed into (R^" +
                                     std::to_string(n) + ", d1): k <= 2n required");
    }
    PwaEmbedding emb;
    emb.norm = Norm::L1;
    emb.dimension = n;
    emb.vertex_images.assign(static_cast<size_t>(star_tree.vertex_count()),
                             std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int i = 0; i < k; ++i) {
        Rat arm = star_tree.edge(star_tree.leaf_attachment(ls[static_cast<size_t>(i)]).second).weight;
        emb.vertex_images[static_cast<size_t>(ls[static_cast<size_t>(i)])] =
            signed_basis_direction(i, n, arm);
    }
    return emb;
}

StarEmbedding star_embed_l1(const StarTree& star, int n) {
    const int k = star.arm_count();
    if (n < 1) {
        throw Error(Errc::dimension, "dimension must be positive");
    }
    if (k > 2 * n) {
        throw Error(Errc::bound, "a " + std::to_string(k) + "-arm star does not embed into (R^" +
                                     std::to_string(n) + ", d1): k <= 2n required");
    }
    StarEmbedding out{star.to_metric_tree(), {}};
    if (k >= 3) {
        out.embedding = star_embed_l1_images(out.tree, n);
        return out;
    }
    // k <= 2: the realization is a single edge (k == 2 merges the center
    // away), so arm lengths come from the star itself.
    PwaEmbedding emb;
    emb.norm = Norm::L1;
    emb.dimension = n;
    emb.vertex_images.assign(static_cast<size_t>(out.tree.vertex_count()),
                             std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int i = 0; i < k; ++i) {
        VertexId tip = out.tree.require(star_tip_label(i, k));
        emb.vertex_images[static_cast<size_t>(tip)] =
            signed_basis_direction(i, n, star.arms[static_cast<size_t>(i)]);
    }
    out.embedding = std::move(emb);
    return out;
}

PwaEmbedding embed_l1(const MetricTree& tree) {
    const int leaves = tree.leaf_count();
    if (leaves <= 2) {
        return path_arclength(tree);
    }
    if (tree.interior_count() == 1) {
        return star_embed_l1_images(tree, min_dim_l1(tree));
    }

    auto [a0, a1] = pick_leaf_pair(tree);
    auto removal = tree.remove_leaf_pair(a0, a1);
    PwaEmbedding inner = embed_l1(removal.rest);

    PwaEmbedding emb;
    emb.norm = Norm::L1;
    emb.dimension = inner.dimension + 1;
    emb.vertex_images.assign(static_cast<size_t>(tree.vertex_count()), {});
    for (VertexId v = 0; v < tree.vertex_count(); ++v) {
        std::vector<Rat> image;
        Rat extra = 0;
        if (v == a0) {
            image = eval_embedding(removal.rest, inner, removal.b0);
            extra = -tree.edge(tree.leaf_attachment(a0).second).weight;
        } else if (v == a1) {
            image = eval_embedding(removal.rest, inner, removal.b1);
            extra = tree.edge(tree.leaf_attachment(a1).second).weight;
        } else {
            image = eval_embedding(removal.rest, inner, tree.locate_in(removal.rest, v));
        }
        image.push_back(std::move(extra));
        emb.vertex_images[static_cast<size_t>(v)] = std::move(image);
    }
    return emb;
}

} // namespace treebed
