#include "treebed/embedding.hpp"

namespace treebed {

const char* norm_name(Norm n) { return n == Norm::L1 ? "l1" : "linf"; }

Rat d1(std::span<const Rat> a, std::span<const Rat> b) {
    if (a.size() != b.size()) {
        throw Error(Errc::dimension, "d1: dimension mismatch");
    }
    Rat sum = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        sum += rat_abs(Rat(a[i] - b[i]));
    }
    return sum;
}

Rat dinf(std::span<const Rat> a, std::span<const Rat> b) {
    if (a.size() != b.size()) {
        throw Error(Errc::dimension, "dinf: dimension mismatch");
    }
    Rat best = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        Rat d = rat_abs(Rat(a[i] - b[i]));
        if (d > best) {
            best = d;
        }
    }
    return best;
}

Rat norm_distance(Norm norm, std::span<const Rat> a, std::span<const Rat> b) {
    return norm == Norm::L1 ? d1(a, b) : dinf(a, b);
}

std::vector<Rat> eval_embedding(const MetricTree& tree, const PwaEmbedding& emb, const TreePoint& p) {
    tree.check_point(p);
    if (emb.vertex_images.size() != static_cast<size_t>(tree.vertex_count())) {
        throw Error(Errc::dimension, "embedding does not cover all vertices");
    }
    if (p.is_vertex()) {
        return emb.vertex_images[static_cast<size_t>(p.vertex)];
    }
    const Edge& e = tree.edge(p.edge);
    const auto& fu = emb.vertex_images[static_cast<size_t>(e.u)];
    const auto& fv = emb.vertex_images[static_cast<size_t>(e.v)];
    if (fu.size() != fv.size()) {
        throw Error(Errc::dimension, "ragged vertex images");
    }
    Rat t = p.offset / e.weight; // affine parameter from u
    std::vector<Rat> out(fu.size());
    for (size_t i = 0; i < fu.size(); ++i) {
        out[i] = fu[i] + t * (fv[i] - fu[i]);
    }
    return out;
}

} // namespace treebed
