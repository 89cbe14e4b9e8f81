#include "treebed/embed_l1.hpp"
#include "treebed/embed_linf.hpp"
#include "treebed/io.hpp"
#include "treebed/search.hpp"
#include "treebed/sweep.hpp"
#include "treebed/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace treebed;
using nlohmann::json;

// Exit codes: 0 success, 2 parse error, 3 bound violation / impossible,
// 4 verification failure, 5 search inconclusive.
constexpr int kExitParse = 2;
constexpr int kExitBound = 3;
constexpr int kExitVerify = 4;
constexpr int kExitInconclusive = 5;

int exit_code_for(const Error& e) {
    switch (e.code()) {
    case Errc::parse:
    case Errc::invalid_tree:
    case Errc::not_on_tree:
    case Errc::dimension:
        return kExitParse;
    case Errc::bound:
    case Errc::guard:
    case Errc::geometry:
        return kExitBound;
    case Errc::internal:
        return 1;
    }
    return 1;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
    } else {
        write_file_atomic(out_path, content);
    }
}

std::vector<Rat> parse_grid(const std::string& spec) {
    std::vector<Rat> grid;
    size_t pos = 0;
    while (pos <= spec.size()) {
        size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!item.empty()) {
            grid.push_back(parse_rational(item));
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    if (grid.empty()) {
        throw Error(Errc::parse, "empty weight grid");
    }
    return grid;
}

int cmd_bounds(const std::string& tree_file) {
    MetricTree tree = load_tree_file(tree_file);
    LinfDimBounds bounds = min_dim_linf_bounds(tree);
    json out{{"leaves", tree.leaf_count()},
             {"l1_min_dim", min_dim_l1(tree)},
             {"linf_lower", bounds.lower},
             {"linf_upper", bounds.upper},
             {"is_star", tree.interior_count() <= 1}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

int cmd_embed(const std::string& tree_file, const std::string& norm, std::optional<int> dim,
              std::optional<int> search_dim, const std::string& out_path, std::uint64_t budget,
              std::uint64_t seed, int samples, bool serial) {
    MetricTree tree = load_tree_file(tree_file);
    PwaEmbedding emb;
    if (norm == "l1") {
        int optimal = min_dim_l1(tree);
        if (dim && *dim != optimal) {
            if (tree.interior_count() == 1) {
                emb = star_embed_l1_images(tree, *dim); // stars take any n with k <= 2n
            } else {
                throw Error(Errc::bound, "d1 embeddings of general trees are constructed at the "
                                         "optimal dimension " +
                                             std::to_string(optimal) + " only");
            }
        } else {
            emb = embed_l1(tree);
        }
    } else {
        if (search_dim) {
            SearchOptions opts;
            opts.node_budget = budget;
            opts.parallel = !serial;
            SearchResult result = search_embed_linf(tree, *search_dim, opts);
            if (result.status == SearchStatus::Inconclusive) {
                std::cerr << "search inconclusive: node budget " << budget << " exhausted ("
                          << result.nodes << " nodes)\n";
                return kExitInconclusive;
            }
            if (result.status == SearchStatus::None) {
                std::cerr << "impossible: exhaustive witness search found no isometric dinf "
                             "embedding in dimension "
                          << *search_dim << " (" << result.nodes << " nodes)\n";
                return kExitBound;
            }
            emb = *result.embedding;
        } else if (tree.interior_count() == 1) {
            int n = dim ? *dim : ceil_log2(tree.leaf_count());
            emb = star_embed_linf_images(tree, n);
        } else if (tree.leaf_count() == 2) {
            emb = embed_l1(tree); // arclength on a line; d1 == dinf in R^1
            emb.norm = Norm::Linf;
        } else {
            if (dim && *dim != tree.leaf_count()) {
                throw Error(Errc::bound,
                            "dinf embeddings of general trees are constructed at dimension L = " +
                                std::to_string(tree.leaf_count()) +
                                "; use --search-dim for other dimensions");
            }
            emb = kuratowski_embed_linf(tree);
        }
    }

    VerifyOptions vopts;
    vopts.samples = samples;
    vopts.seed = seed;
    vopts.parallel = !serial;
    VerificationReport report = verify_isometry(tree, emb, vopts);
    if (!report.exact_pass) {
        std::cerr << report_to_json(report).dump(2) << "\n";
        std::cerr << "refusing to write unverified coordinates\n";
        return kExitVerify;
    }
    emit(embedding_document(tree, emb, report).dump(2) + "\n", out_path);
    return 0;
}

int cmd_verify(const std::string& tree_file, const std::string& coords_file, const std::string& norm,
               std::uint64_t seed, int samples, bool serial) {
    MetricTree tree = load_tree_file(tree_file);
    json doc;
    try {
        doc = json::parse(read_file(coords_file));
    } catch (const json::exception& e) {
        throw Error(Errc::parse, std::string("coordinates file: ") + e.what());
    }
    PwaEmbedding emb = parse_embedding_document(tree, doc);
    if ((norm == "l1") != (emb.norm == Norm::L1)) {
        throw Error(Errc::parse, "--norm " + norm + " does not match the coordinates document");
    }
    VerifyOptions vopts;
    vopts.samples = samples;
    vopts.seed = seed;
    vopts.parallel = !serial;
    VerificationReport report = verify_isometry(tree, emb, vopts);
    std::cout << report_to_json(report).dump(2) << "\n";
    return report.exact_pass ? 0 : kExitVerify;
}

int cmd_sweep(int dim, int max_leaves, const std::string& grid_spec, const std::string& out_path,
              std::uint64_t budget, bool serial) {
    SweepConfig config;
    config.dimension = dim;
    config.max_leaves = max_leaves;
    config.grid = parse_grid(grid_spec);
    config.node_budget = budget;
    config.parallel = !serial;
    SweepReport report = conjecture_sweep(config);

    std::string lines;
    for (const SweepRecord& rec : report.records) {
        lines += sweep_record_line(rec);
        lines += "\n";
    }
    emit(lines, out_path);

    for (int idx : report.candidate_indices()) {
        std::cerr << "*** CONJECTURE COUNTEREXAMPLE CANDIDATE ***\n"
                  << "exhaustive search found no dinf embedding in dimension " << dim
                  << " for a tree with <= 2^" << dim << " leaves:\n"
                  << sweep_record_line(report.records[static_cast<size_t>(idx)]) << "\n"
                  << "*** audit this instance before trusting anything else ***\n";
    }
    for (int idx : report.inconclusive_indices()) {
        std::cerr << "inconclusive record (budget exhausted): "
                  << sweep_record_line(report.records[static_cast<size_t>(idx)]) << "\n";
    }
    if (!report.candidate_indices().empty()) {
        return kExitBound;
    }
    if (!report.inconclusive_indices().empty()) {
        return kExitInconclusive;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"isometric embeddings of finite metric trees into (R^n, d1) and (R^n, dinf)"};
    app.require_subcommand(1);

    std::string tree_file;
    std::string coords_file;
    std::string norm;
    std::string out_path;
    std::string grid_spec;
    std::optional<int> dim;
    std::optional<int> search_dim;
    int max_leaves = 0;
    std::uint64_t budget = 10'000'000;
    std::uint64_t seed = 0x7ee5;
    int samples = 1000;
    bool serial = false;

    auto* bounds = app.add_subcommand("bounds", "leaf count and d1/dinf dimension bounds");
    bounds->add_option("tree", tree_file, "tree file (edge list or Newick)")->required();

    auto* embed = app.add_subcommand("embed", "construct a verified isometric embedding");
    embed->add_option("tree", tree_file, "tree file (edge list or Newick)")->required();
    embed->add_option("--norm", norm, "target metric")
        ->required()
        ->check(CLI::IsMember({"l1", "linf"}));
    embed->add_option("--dim", dim, "target dimension (stars; defaults to the optimum)");
    embed->add_option("--search-dim", search_dim, "run the exhaustive dinf witness search at this dimension");
    embed->add_option("--out", out_path, "write the coordinates document here (default stdout)");
    embed->add_option("--budget", budget, "search node budget");
    embed->add_option("--seed", seed, "verification sample seed");
    embed->add_option("--samples", samples, "verification sample count");
    embed->add_flag("--serial", serial, "disable parallelism");

    auto* verify = app.add_subcommand("verify", "verify a coordinates document against a tree");
    verify->add_option("tree", tree_file, "tree file")->required();
    verify->add_option("coords", coords_file, "coordinates document")->required();
    verify->add_option("--norm", norm, "expected metric")
        ->required()
        ->check(CLI::IsMember({"l1", "linf"}));
    verify->add_option("--seed", seed, "verification sample seed");
    verify->add_option("--samples", samples, "verification sample count");
    verify->add_flag("--serial", serial, "disable parallelism");

    auto* sweep = app.add_subcommand("sweep", "search every small tree for dinf embeddings");
    sweep->add_option("--dim", dim, "embedding dimension n")->required();
    sweep->add_option("--max-leaves", max_leaves, "enumerate trees with up to this many leaves (<= 2^n)")
        ->required();
    sweep->add_option("--grid", grid_spec, "comma-separated edge weights, e.g. 1,2,1/2")->required();
    sweep->add_option("--out", out_path, "write the record file here (default stdout)");
    sweep->add_option("--budget", budget, "per-tree search node budget");
    sweep->add_flag("--serial", serial, "disable parallelism");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) {
            return cmd_bounds(tree_file);
        }
        if (embed->parsed()) {
            return cmd_embed(tree_file, norm, dim, search_dim, out_path, budget, seed, samples, serial);
        }
        if (verify->parsed()) {
            return cmd_verify(tree_file, coords_file, norm, seed, samples, serial);
        }
        if (sweep->parsed()) {
            return cmd_sweep(dim.value(), max_leaves, grid_spec, out_path, budget, serial);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
