#include "treebed/search.hpp"

#include "treebed/parallel.hpp"

#include <algorithm>
#include <cstdint>

namespace treebed {

namespace {

struct PairPath {
    VertexId a; // a < b
    VertexId b;
    std::vector<std::pair<EdgeId, int>> steps; // edge, +1 when traversed u -> v
};

struct BranchOutcome {
    SearchStatus status = SearchStatus::None;
    std::vector<SectorIndex> chosen; // per pair, valid when Found
    std::vector<std::int8_t> slopes;
    std::uint64_t nodes = 0;
};

// Depth-first assignment of (coordinate, sign) witnesses with forced-slope
// propagation. Slopes live in a flat int8 table: 0 unset, otherwise +-1.
class Searcher {
public:
    Searcher(const std::vector<PairPath>& pairs, int n, std::uint64_t budget)
        : pairs_(pairs), n_(n), budget_(budget) {}

    BranchOutcome run(int edge_count, const SectorIndex& first_choice) {
        slopes_.assign(static_cast<size_t>(edge_count) * static_cast<size_t>(n_), 0);
        chosen_.assign(pairs_.size(), SectorIndex{});
        nodes_ = 0;

        BranchOutcome out;
        std::vector<size_t> trail;
        ++nodes_;
        bool ok = nodes_ <= budget_ &&
                  try_assign(pairs_.front(), first_choice.coordinate - 1, first_choice.sign, trail);
        if (nodes_ > budget_) {
            out.status = SearchStatus::Inconclusive;
        } else if (ok) {
            chosen_.front() = first_choice;
            switch (dfs(1)) {
            case Sub::Found:
                out.status = SearchStatus::Found;
                out.chosen = chosen_;
                out.slopes = slopes_;
                break;
            case Sub::Exhausted:
                out.status = SearchStatus::None;
                break;
            case Sub::Aborted:
                out.status = SearchStatus::Inconclusive;
                break;
            }
        } else {
            out.status = SearchStatus::None;
        }
        out.nodes = nodes_;
        return out;
    }

private:
    enum class Sub { Found, Exhausted, Aborted };

    bool try_assign(const PairPath& pair, int c, int sign, std::vector<size_t>& trail) {
        for (const auto& [edge, dir] : pair.steps) {
            std::int8_t required = static_cast<std::int8_t>(sign * dir);
            size_t cell = static_cast<size_t>(edge) * static_cast<size_t>(n_) + static_cast<size_t>(c);
            if (slopes_[cell] == 0) {
                slopes_[cell] = required;
                trail.push_back(cell);
            } else if (slopes_[cell] != required) {
                undo(trail);
                return false;
            }
        }
        return true;
    }

    void undo(std::vector<size_t>& trail) {
        for (size_t cell : trail) {
            slopes_[cell] = 0;
        }
        trail.clear();
    }

    Sub dfs(size_t idx) {
        if (idx == pairs_.size()) {
            return Sub::Found;
        }
        std::vector<size_t> trail;
        for (int c = 0; c < n_; ++c) {
            for (int sign : {+1, -1}) {
                if (++nodes_ > budget_) {
                    return Sub::Aborted;
                }
                if (!try_assign(pairs_[idx], c, sign, trail)) {
                    continue;
                }
                chosen_[idx] = SectorIndex{c + 1, sign};
                Sub sub = dfs(idx + 1);
                if (sub != Sub::Exhausted) {
                    return sub;
                }
                undo(trail);
            }
        }
        return Sub::Exhausted;
    }

    const std::vector<PairPath>& pairs_;
    int n_;
    std::uint64_t budget_;
    std::vector<std::int8_t> slopes_;
    std::vector<SectorIndex> chosen_;
    std::uint64_t nodes_ = 0;
};

std::vector<PairPath> build_pair_paths(const MetricTree& tree,
                                       const std::vector<std::pair<VertexId, VertexId>>& pairs) {
    std::vector<PairPath> out;
    out.reserve(pairs.size());
    for (auto [a, b] : pairs) {
        if (a == b) {
            throw Error(Errc::guard, "witness pair endpoints must differ");
        }
        PairPath p;
        p.a = std::min(a, b);
        p.b = std::max(a, b);
        for (const auto& s : tree.path(tree.vertex_point(p.a), tree.vertex_point(p.b))) {
            p.steps.emplace_back(s.edge, s.forward ? +1 : -1);
        }
        out.push_back(std::move(p));
    }
    // Longer paths first so conflicts surface early; label order breaks ties.
    std::stable_sort(out.begin(), out.end(), [&](const PairPath& x, const PairPath& y) {
        if (x.steps.size() != y.steps.size()) {
            return x.steps.size() > y.steps.size();
        }
        return std::make_pair(tree.label(x.a), tree.label(x.b)) <
               std::make_pair(tree.label(y.a), tree.label(y.b));
    });
    return out;
}

SlopeCertificate make_certificate(const MetricTree& tree, int n, const std::vector<PairPath>& pairs,
                                  const BranchOutcome& branch) {
    SlopeCertificate cert;
    cert.dimension = n;
    cert.slopes.assign(static_cast<size_t>(tree.edge_count()),
                       std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (EdgeId e = 0; e < tree.edge_count(); ++e) {
        for (int c = 0; c < n; ++c) {
            cert.slopes[static_cast<size_t>(e)][static_cast<size_t>(c)] =
                Rat(branch.slopes[static_cast<size_t>(e) * static_cast<size_t>(n) + static_cast<size_t>(c)]);
        }
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
        cert.witnesses.emplace(std::make_pair(pairs[i].a, pairs[i].b), branch.chosen[i]);
    }
    return cert;
}

} // namespace

const char* search_status_name(SearchStatus s) {
    switch (s) {
    case SearchStatus::Found:
        return "found";
    case SearchStatus::None:
        return "none";
    case SearchStatus::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

SearchResult search_embed_linf_pairs(const MetricTree& tree, int n,
                                     const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                     const SearchOptions& options) {
    if (n < 1) {
        throw Error(Errc::dimension, "search dimension must be positive");
    }
    if (pairs.empty()) {
        throw Error(Errc::guard, "search needs at least one witness pair");
    }
    std::vector<PairPath> ordered = build_pair_paths(tree, pairs);

    // The budget splits evenly over the first variable's branches and the
    // earliest found branch wins, so serial and parallel runs are identical.
    const int branches = 2 * n;
    std::vector<BranchOutcome> outcomes(static_cast<size_t>(branches));
    const std::uint64_t base = options.node_budget / static_cast<std::uint64_t>(branches);
    const std::uint64_t extra = options.node_budget % static_cast<std::uint64_t>(branches);
    parallel_for(branches, options.parallel, [&](int k) {
        SectorIndex first{k / 2 + 1, k % 2 == 0 ? +1 : -1};
        std::uint64_t budget = base + (static_cast<std::uint64_t>(k) < extra ? 1 : 0);
        Searcher searcher(ordered, n, budget);
        outcomes[static_cast<size_t>(k)] = searcher.run(tree.edge_count(), first);
    });

    SearchResult result;
    for (const auto& o : outcomes) {
        result.nodes += o.nodes;
    }
    for (int k = 0; k < branches; ++k) {
        if (outcomes[static_cast<size_t>(k)].status == SearchStatus::Found) {
            result.status = SearchStatus::Found;
            result.certificate = make_certificate(tree, n, ordered, outcomes[static_cast<size_t>(k)]);
            result.embedding = integrate_certificate(tree, *result.certificate);
            return result;
        }
    }
    bool inconclusive = std::any_of(outcomes.begin(), outcomes.end(), [](const BranchOutcome& o) {
        return o.status == SearchStatus::Inconclusive;
    });
    result.status = inconclusive ? SearchStatus::Inconclusive : SearchStatus::None;
    return result;
}

SearchResult search_embed_linf(const MetricTree& tree, int n, const SearchOptions& options) {
    auto ls = tree.leaves();
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (size_t i = 0; i < ls.size(); ++i) {
        for (size_t j = i + 1; j < ls.size(); ++j) {
            pairs.emplace_back(ls[i], ls[j]);
        }
    }
    return search_embed_linf_pairs(tree, n, pairs, options);
}

bool check_certificate(const MetricTree& tree, const SlopeCertificate& cert) {
    const int n = cert.dimension;
    if (n < 1 || cert.slopes.size() != static_cast<size_t>(tree.edge_count())) {
        return false;
    }
    for (const auto& row : cert.slopes) {
        if (row.size() != static_cast<size_t>(n)) {
            return false;
        }
        bool full = false;
        for (const Rat& s : row) {
            if (rat_abs(s) > 1) {
                return false;
            }
            full = full || rat_abs(s) == 1;
        }
        if (!full) {
            return false; // some coordinate must realize the edge length
        }
    }

    auto ls = tree.leaves();
    size_t expected_pairs = ls.size() * (ls.size() - 1) / 2;
    if (cert.witnesses.size() != expected_pairs) {
        return false;
    }
    for (size_t i = 0; i < ls.size(); ++i) {
        for (size_t j = i + 1; j < ls.size(); ++j) {
            auto it = cert.witnesses.find(std::make_pair(ls[i], ls[j]));
            if (it == cert.witnesses.end()) {
                return false;
            }
            const SectorIndex& w = it->second;
            if (w.coordinate < 1 || w.coordinate > n || (w.sign != 1 && w.sign != -1)) {
                return false;
            }
            for (const auto& s : tree.path(tree.vertex_point(ls[i]), tree.vertex_point(ls[j]))) {
                Rat required = s.forward ? Rat(w.sign) : Rat(-w.sign);
                if (cert.slopes[static_cast<size_t>(s.edge)][static_cast<size_t>(w.coordinate - 1)] !=
                    required) {
                    return false;
                }
            }
        }
    }
    return true;
}

PwaEmbedding integrate_certificate(const MetricTree& tree, const SlopeCertificate& cert) {
    PwaEmbedding emb;
    emb.norm = Norm::Linf;
    emb.dimension = cert.dimension;
    emb.vertex_images.assign(static_cast<size_t>(tree.vertex_count()), {});
    std::vector<bool> placed(static_cast<size_t>(tree.vertex_count()), false);
    std::vector<VertexId> stack{0};
    emb.vertex_images[0] = std::vector<Rat>(static_cast<size_t>(cert.dimension), Rat(0));
    placed[0] = true;
    while (!stack.empty()) {
        VertexId u = stack.back();
        stack.pop_back();
        for (const auto& [v, e] : tree.neighbors(u)) {
            if (placed[static_cast<size_t>(v)]) {
                continue;
            }
            const Edge& ed = tree.edge(e);
            int dir = ed.u == u ? +1 : -1;
            std::vector<Rat> pos = emb.vertex_images[static_cast<size_t>(u)];
            for (int c = 0; c < cert.dimension; ++c) {
                pos[static_cast<size_t>(c)] +=
                    Rat(dir) * ed.weight * cert.slopes[static_cast<size_t>(e)][static_cast<size_t>(c)];
            }
            emb.vertex_images[static_cast<size_t>(v)] = std::move(pos);
            placed[static_cast<size_t>(v)] = true;
            stack.push_back(v);
        }
    }
    return emb;
}

} // namespace treebed
