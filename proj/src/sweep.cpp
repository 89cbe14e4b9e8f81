#include "treebed/sweep.hpp"

#include "treebed/parallel.hpp"
#include "treebed/verify.hpp"

namespace treebed {

bool SweepReport::all_found() const {
    for (const auto& r : records) {
        if (r.outcome != SearchStatus::Found) {
            return false;
        }
    }
    return true;
}

std::vector<int> SweepReport::candidate_indices() const {
    std::vector<int> out;
    for (const auto& r : records) {
        if (r.outcome == SearchStatus::None) {
            out.push_back(r.index);
        }
    }
    return out;
}

std::vector<int> SweepReport::inconclusive_indices() const {
    std::vector<int> out;
    for (const auto& r : records) {
        if (r.outcome == SearchStatus::Inconclusive) {
            out.push_back(r.index);
        }
    }
    return out;
}

SweepReport conjecture_sweep(const SweepConfig& config) {
    if (config.dimension < 1 || config.dimension > 30) {
        throw Error(Errc::guard, "sweep dimension out of range");
    }
    if (config.max_leaves < 2) {
        throw Error(Errc::guard, "sweep needs max_leaves >= 2");
    }
    if (config.max_leaves > (1 << config.dimension)) {
        throw Error(Errc::guard, "max_leaves " + std::to_string(config.max_leaves) + " exceeds 2^" +
                                     std::to_string(config.dimension) +
                                     "; such trees provably do not embed");
    }

    struct Instance {
        MetricTree tree;
        int topology;
    };
    std::vector<Instance> instances;
    for_each_tree(config.max_leaves, config.grid,
                  [&](const MetricTree& tree, int topo, const std::vector<Rat>&) {
                      instances.push_back(Instance{tree, topo});
                  });

    SweepReport report;
    report.config = config;
    report.records.assign(instances.size(), SweepRecord{});
    // Instances are independent; records land in preassigned slots, so the
    // parallel run reproduces the serial report bit for bit.
    SearchOptions search_opts;
    search_opts.node_budget = config.node_budget;
    search_opts.parallel = false;
    parallel_for(static_cast<int>(instances.size()), config.parallel, [&](int i) {
        const Instance& inst = instances[static_cast<size_t>(i)];
        SearchResult result = search_embed_linf(inst.tree, config.dimension, search_opts);
        if (result.status == SearchStatus::Found) {
            VerifyOptions vopts;
            vopts.samples = 0;
            vopts.parallel = false;
            if (!verify_isometry(inst.tree, *result.embedding, vopts).exact_pass) {
                throw Error(Errc::internal, "search produced an embedding that fails verification");
            }
        }
        SweepRecord& rec = report.records[static_cast<size_t>(i)];
        rec.index = i;
        rec.topology = inst.topology;
        rec.edges = inst.tree.to_edge_list();
        rec.leaves = inst.tree.leaf_count();
        rec.dimension = config.dimension;
        rec.outcome = result.status;
        rec.nodes = result.nodes;
    });
    return report;
}

} // namespace treebed
