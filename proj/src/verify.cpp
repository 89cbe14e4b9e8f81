#include "treebed/verify.hpp"

#include "treebed/parallel.hpp"

#include <algorithm>
#include <random>

namespace treebed {

namespace {

struct PairCheck {
    VertexId a;
    VertexId b;
    bool ok = false;
    std::vector<int> monotone;  // L1 certificate
    SectorIndex witness;        // Linf certificate
    PairFailure failure;
};

PairFailure make_failure(const MetricTree& tree, const std::string& da, const std::string& db,
                         const Rat& tree_dist, const Rat& image_dist) {
    (void)tree;
    PairFailure f;
    f.a = da;
    f.b = db;
    if (f.b < f.a) {
        std::swap(f.a, f.b);
    }
    f.tree_distance = tree_dist;
    f.image_distance = image_dist;
    return f;
}

// Signed per-edge deltas of coordinate c along a leaf-to-leaf path (all
// steps are full edges).
Rat step_delta(const PwaEmbedding& emb, const MetricTree& tree, const MetricTree::Step& s, int c) {
    const Edge& e = tree.edge(s.edge);
    const Rat& head = emb.vertex_images[static_cast<size_t>(s.forward ? e.v : e.u)][static_cast<size_t>(c)];
    const Rat& tail = emb.vertex_images[static_cast<size_t>(s.forward ? e.u : e.v)][static_cast<size_t>(c)];
    return head - tail;
}

// Fixed-width xorshift-style generator so sampled checks are reproducible
// across standard libraries (std distributions are not portable).
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed ^ 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
};

TreePoint random_point(const MetricTree& tree, Rng& rng) {
    EdgeId e = static_cast<EdgeId>(rng.below(static_cast<std::uint64_t>(tree.edge_count())));
    std::uint64_t den = 1 + rng.below(16);
    std::uint64_t num = rng.below(den + 1);
    Rat offset = tree.edge(e).weight * Rat(BigInt(num), BigInt(den));
    return tree.edge_point(e, tree.edge(e).u, offset);
}

} // namespace

VerificationReport verify_isometry(const MetricTree& tree, const PwaEmbedding& emb,
                                   const VerifyOptions& options) {
    if (emb.dimension < 1) {
        throw Error(Errc::dimension, "embedding dimension must be positive");
    }
    if (emb.vertex_images.size() != static_cast<size_t>(tree.vertex_count())) {
        throw Error(Errc::dimension, "missing vertex image: embedding covers " +
                                         std::to_string(emb.vertex_images.size()) + " of " +
                                         std::to_string(tree.vertex_count()) + " vertices");
    }
    for (const auto& img : emb.vertex_images) {
        if (img.size() != static_cast<size_t>(emb.dimension)) {
            throw Error(Errc::dimension, "vertex image has wrong dimension");
        }
    }

    VerificationReport report;
    std::vector<PairFailure> failures;

    // (a) every edge image must have norm length equal to the edge weight.
    // This alone makes every coordinate 1-Lipschitz along every edge, so the
    // image distance of any pair is at most its tree distance.
    for (const Edge& e : tree.edges()) {
        Rat len = norm_distance(emb.norm, emb.vertex_images[static_cast<size_t>(e.u)],
                                emb.vertex_images[static_cast<size_t>(e.v)]);
        if (len != e.weight) {
            failures.push_back(make_failure(tree, tree.label(e.u), tree.label(e.v), e.weight, len));
        }
    }

    // (b) per-leaf-pair certificates. Under d1 a pair is exact iff no
    // coordinate changes sign along the path; under dinf iff some coordinate
    // moves at full slope with one sign the whole way. Interior pairs reduce
    // to leaf pairs because every path extends to a leaf-to-leaf path.
    auto ls = tree.leaves();
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (size_t i = 0; i < ls.size(); ++i) {
        for (size_t j = i + 1; j < ls.size(); ++j) {
            pairs.emplace_back(ls[i], ls[j]);
        }
    }
    std::vector<PairCheck> checks(pairs.size());
    parallel_for(static_cast<int>(pairs.size()), options.parallel, [&](int idx) {
        auto [a, b] = pairs[static_cast<size_t>(idx)];
        PairCheck& out = checks[static_cast<size_t>(idx)];
        out.a = a;
        out.b = b;
        auto steps = tree.path(tree.vertex_point(a), tree.vertex_point(b));
        if (emb.norm == Norm::L1) {
            out.ok = true;
            out.monotone.assign(static_cast<size_t>(emb.dimension), 0);
            for (int c = 0; c < emb.dimension && out.ok; ++c) {
                int dir = 0;
                for (const auto& s : steps) {
                    int sg = sign_of(step_delta(emb, tree, s, c));
                    if (sg == 0) {
                        continue;
                    }
                    if (dir == 0) {
                        dir = sg;
                    } else if (dir != sg) {
                        out.ok = false;
                        break;
                    }
                }
                out.monotone[static_cast<size_t>(c)] = dir;
            }
        } else {
            out.ok = false;
            for (int c = 0; c < emb.dimension && !out.ok; ++c) {
                for (int sign : {+1, -1}) {
                    bool full = true;
                    for (const auto& s : steps) {
                        if (step_delta(emb, tree, s, c) != Rat(sign * s.length)) {
                            full = false;
                            break;
                        }
                    }
                    if (full) {
                        out.ok = true;
                        out.witness = SectorIndex{c + 1, sign};
                        break;
                    }
                }
            }
        }
        if (!out.ok) {
            Rat td = tree.distance(a, b);
            Rat id = norm_distance(emb.norm, emb.vertex_images[static_cast<size_t>(a)],
                                   emb.vertex_images[static_cast<size_t>(b)]);
            out.failure = make_failure(tree, tree.label(a), tree.label(b), td, id);
        }
    });
    for (const PairCheck& c : checks) {
        LabelPair key{tree.label(c.a), tree.label(c.b)};
        if (key.second < key.first) {
            std::swap(key.first, key.second);
        }
        if (!c.ok) {
            failures.push_back(c.failure);
        } else if (emb.norm == Norm::L1) {
            report.l1_monotone.emplace(std::move(key), c.monotone);
        } else {
            report.linf_witnesses.emplace(std::move(key), c.witness);
        }
    }

    // Independent spot check: the certificates above are complete for
    // piecewise-affine embeddings, so any sampled mismatch is a bug, not new
    // information. Samples are drawn serially so the report never depends on
    // thread count.
    if (options.samples > 0) {
        Rng rng(options.seed);
        std::vector<std::pair<TreePoint, TreePoint>> sampled;
        sampled.reserve(static_cast<size_t>(options.samples));
        for (int i = 0; i < options.samples; ++i) {
            sampled.emplace_back(random_point(tree, rng), random_point(tree, rng));
        }
        std::vector<char> bad(sampled.size(), 0);
        std::vector<PairFailure> sample_failures(sampled.size());
        parallel_for(static_cast<int>(sampled.size()), options.parallel, [&](int i) {
            const auto& [p, q] = sampled[static_cast<size_t>(i)];
            Rat td = tree.distance(p, q);
            Rat id = norm_distance(emb.norm, eval_embedding(tree, emb, p), eval_embedding(tree, emb, q));
            if (td != id) {
                bad[static_cast<size_t>(i)] = 1;
                sample_failures[static_cast<size_t>(i)] =
                    make_failure(tree, tree.describe(p), tree.describe(q), td, id);
            }
        });
        for (size_t i = 0; i < sampled.size(); ++i) {
            if (bad[i] != 0) {
                failures.push_back(sample_failures[i]);
            }
        }
    }

    std::sort(failures.begin(), failures.end(), [](const PairFailure& x, const PairFailure& y) {
        return std::tie(x.a, x.b, x.tree_distance, x.image_distance) <
               std::tie(y.a, y.b, y.tree_distance, y.image_distance);
    });
    failures.erase(std::unique(failures.begin(), failures.end()), failures.end());
    report.failures = std::move(failures);
    report.exact_pass = report.failures.empty();
    return report;
}

} // namespace treebed
