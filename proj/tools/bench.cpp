// Compares the serial reference loops against the OpenMP kernels on the
// three data-parallel surfaces: verification sampling, search branch
// exploration and the conjecture sweep. Outputs one table row per kernel and
// fails loudly if any parallel result deviates from the serial one.

#include "treebed/embed_l1.hpp"
#include "treebed/io.hpp"
#include "treebed/parallel.hpp"
#include "treebed/search.hpp"
#include "treebed/sweep.hpp"
#include "treebed/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

namespace {

using namespace treebed;

double run_ms(const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(stop - start).count();
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-24s %10.1f ms %10.1f ms %8.2fx\n", name, serial_ms, parallel_ms,
                parallel_ms > 0 ? serial_ms / parallel_ms : 0.0);
}

MetricTree caterpillar(int leaves) {
    // Spine s0..s(m-1), two unit leaves on the first and last spine vertex,
    // one on each in between: a tree with `leaves` leaves and no symmetry.
    std::vector<MetricTree::InputEdge> edges;
    int m = leaves - 2;
    for (int i = 0; i + 1 < m; ++i) {
        edges.push_back({"s" + std::to_string(i), "s" + std::to_string(i + 1), Rat(i + 1, 3)});
    }
    int leaf = 0;
    auto add_leaf = [&](int spine) {
        edges.push_back({"s" + std::to_string(spine), "x" + std::to_string(leaf), Rat(leaf + 2, 5)});
        ++leaf;
    };
    add_leaf(0);
    add_leaf(m - 1);
    for (int i = 0; i < m; ++i) {
        add_leaf(i);
    }
    return build_tree(edges);
}

} // namespace

int main(int argc, char** argv) {
    int scale = argc > 1 ? std::atoi(argv[1]) : 1;
    std::printf("threads available: %d\n", max_threads());
    std::printf("%-24s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    {
        MetricTree tree = caterpillar(10);
        PwaEmbedding emb = embed_l1(tree);
        VerifyOptions serial_opts;
        serial_opts.samples = 20000 * scale;
        serial_opts.parallel = false;
        VerifyOptions parallel_opts = serial_opts;
        parallel_opts.parallel = true;
        VerificationReport a;
        VerificationReport b;
        double s = run_ms([&] { a = verify_isometry(tree, emb, serial_opts); });
        double p = run_ms([&] { b = verify_isometry(tree, emb, parallel_opts); });
        if (!(a == b) || !a.exact_pass) {
            std::fprintf(stderr, "verify kernels disagree\n");
            return 1;
        }
        row("verify sampling", s, p);
    }

    {
        StarTree star;
        for (int i = 0; i < 6; ++i) {
            star.arms.push_back(Rat(i + 1, 2));
        }
        MetricTree tree = star.to_metric_tree();
        SearchOptions serial_opts;
        serial_opts.parallel = false;
        SearchOptions parallel_opts;
        parallel_opts.parallel = true;
        SearchResult a;
        SearchResult b;
        double s = run_ms([&] {
            for (int i = 0; i < scale; ++i) {
                a = search_embed_linf(tree, 2, serial_opts);
            }
        });
        double p = run_ms([&] {
            for (int i = 0; i < scale; ++i) {
                b = search_embed_linf(tree, 2, parallel_opts);
            }
        });
        if (a.status != b.status || a.nodes != b.nodes || a.status != SearchStatus::None) {
            std::fprintf(stderr, "search kernels disagree\n");
            return 1;
        }
        row("search 6-star exhaust", s, p);
    }

    {
        SweepConfig config;
        config.dimension = 2;
        config.max_leaves = 4;
        config.grid = {Rat(1), Rat(2), Rat(1, 2)};
        config.parallel = false;
        SweepReport a;
        SweepReport b;
        double s = run_ms([&] { a = conjecture_sweep(config); });
        config.parallel = true;
        double p = run_ms([&] { b = conjecture_sweep(config); });
        bool same = a.records.size() == b.records.size();
        for (size_t i = 0; same && i < a.records.size(); ++i) {
            same = sweep_record_line(a.records[i]) == sweep_record_line(b.records[i]);
        }
        if (!same || !a.all_found()) {
            std::fprintf(stderr, "sweep kernels disagree\n");
            return 1;
        }
        row("conjecture sweep", s, p);
    }

    return 0;
}
