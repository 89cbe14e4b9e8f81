#pragma once

#include "treebed/embed_linf.hpp"
#include "treebed/embedding.hpp"
#include "treebed/tree.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace treebed {

// Discrete form of the sector-monotone geodesic condition: per (canonical
// edge orientation, coordinate) slopes in [-1, 1] plus one full-slope witness
// per leaf pair. Consistency of such a certificate implies the straight-edge
// embedding obtained by integrating the slopes is an exact dinf isometry.
struct SlopeCertificate {
    int dimension = 0;
    std::vector<std::vector<Rat>> slopes;                      // [edge][coord], u -> v
    std::map<std::pair<VertexId, VertexId>, SectorIndex> witnesses; // leaf pairs, a < b

    friend bool operator==(const SlopeCertificate&, const SlopeCertificate&) = default;
};

enum class SearchStatus {
    Found,        // consistent witness assignment, embedding attached
    None,         // witness space exhausted: no isometric embedding exists
    Inconclusive, // node budget exceeded before exhaustion
};

const char* search_status_name(SearchStatus s);

struct SearchOptions {
    std::uint64_t node_budget = 10'000'000; // split evenly over top branches
    bool parallel = true;
};

struct SearchResult {
    SearchStatus status = SearchStatus::None;
    std::optional<PwaEmbedding> embedding;
    std::optional<SlopeCertificate> certificate;
    std::uint64_t nodes = 0;
};

/// Sound and complete search for an isometric embedding of `tree` into
/// (R^n, dinf). Variables are leaf-pair witnesses (coordinate, sign); a
/// witness forces full slope along the whole pair path, and a complete
/// conflict-free assignment integrates to a verified embedding. None is
/// returned only after exhausting every assignment. Deterministic regardless
/// of thread count: the budget is split evenly across the first variable's
/// branches and the earliest found branch wins.
SearchResult search_embed_linf(const MetricTree& tree, int n, const SearchOptions& options = {});

/// Same engine over an explicit set of vertex pairs (testing knob for the
/// leaf-pair sufficiency property).
SearchResult search_embed_linf_pairs(const MetricTree& tree, int n,
                                     const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                     const SearchOptions& options = {});

/// Validates every SlopeCertificate invariant exactly: slope ranges, one
/// full-slope coordinate per edge, and a consistent full-slope witness for
/// every leaf pair of the tree (missing or stray pairs fail).
bool check_certificate(const MetricTree& tree, const SlopeCertificate& cert);

/// The embedding a certificate denotes: vertex 0 at the origin, positions
/// accumulated edge by edge as weight * slope vector.
PwaEmbedding integrate_certificate(const MetricTree& tree, const SlopeCertificate& cert);

} // namespace treebed
