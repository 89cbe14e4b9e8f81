#pragma once

#include "treebed/embed_linf.hpp"
#include "treebed/embedding.hpp"
#include "treebed/tree.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace treebed {

struct VerifyOptions {
    int samples = 1000;          // belt-and-braces random point pairs
    std::uint64_t seed = 0x7ee5; // fixed default for reproducibility
    bool parallel = true;
};

struct PairFailure {
    std::string a; // point descriptions, lexicographically ordered
    std::string b;
    Rat tree_distance;
    Rat image_distance;

    friend bool operator==(const PairFailure& x, const PairFailure& y) {
        return x.a == y.a && x.b == y.b && x.tree_distance == y.tree_distance &&
               x.image_distance == y.image_distance;
    }
};

using LabelPair = std::pair<std::string, std::string>;

struct VerificationReport {
    bool exact_pass = false;
    std::vector<PairFailure> failures; // sorted, deduplicated
    // Per-leaf-pair certificates. L1: the consistent delta sign of every
    // coordinate along the pair path (-1/0/+1). Linf: a full-slope witness.
    std::map<LabelPair, std::vector<int>> l1_monotone;
    std::map<LabelPair, SectorIndex> linf_witnesses;

    friend bool operator==(const VerificationReport& x, const VerificationReport& y) {
        return x.exact_pass == y.exact_pass && x.failures == y.failures &&
               x.l1_monotone == y.l1_monotone && x.linf_witnesses == y.linf_witnesses;
    }
};

/// Exact isometry verification of a piecewise-affine embedding. Passes iff
/// (a) every edge image has norm length equal to the edge weight and (b)
/// every leaf pair carries a certificate: coordinate-wise sign-consistent
/// deltas for d1, a full-slope witness coordinate for dinf. Both conditions
/// together are equivalent to exact isometry on every point pair; the seeded
/// random sample is an independent cross-check of the implementation.
VerificationReport verify_isometry(const MetricTree& tree, const PwaEmbedding& emb,
                                   const VerifyOptions& options = {});

} // namespace treebed
