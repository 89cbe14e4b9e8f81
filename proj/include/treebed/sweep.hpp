#pragma once

#include "treebed/enumerate.hpp"
#include "treebed/search.hpp"
#include "treebed/tree.hpp"

#include <cstdint>
#include <vector>

namespace treebed {

struct SweepConfig {
    int dimension = 2;
    int max_leaves = 4;
    std::vector<Rat> grid;
    std::uint64_t node_budget = 10'000'000;
    bool parallel = true;
};

struct SweepRecord {
    int index = 0;    // position in enumeration order
    int topology = 0; // topology index
    std::vector<MetricTree::InputEdge> edges;
    int leaves = 0;
    int dimension = 0;
    SearchStatus outcome = SearchStatus::None;
    std::uint64_t nodes = 0;

    // An exhausted-none instance with <= 2^n leaves contradicts the expected
    // picture and must be surfaced loudly.
    bool counterexample_candidate() const { return outcome == SearchStatus::None; }
};

struct SweepReport {
    SweepConfig config;
    std::vector<SweepRecord> records;

    bool all_found() const;
    std::vector<int> candidate_indices() const;
    std::vector<int> inconclusive_indices() const;
};

/// Runs search_embed_linf over every enumerated tree with at most max_leaves
/// leaves (guard: max_leaves <= 2^dimension). Every Found embedding is
/// re-verified before it is recorded; a verification miss is an internal
/// error. Instances run independently, so the parallel and serial paths
/// produce identical reports.
SweepReport conjecture_sweep(const SweepConfig& config);

} // namespace treebed
