#pragma once

#include "treebed/embedding.hpp"
#include "treebed/sweep.hpp"
#include "treebed/tree.hpp"
#include "treebed/verify.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace treebed {

/// Edge-list text: one `LABEL LABEL WEIGHT` per line, weight decimal or
/// "p/q", `#` comments and blank lines ignored. Errors carry line numbers.
std::vector<MetricTree::InputEdge> parse_edge_list(std::string_view text);

/// Newick with branch lengths, e.g. "((a:1,b:1)x:2,c:3);". Unnamed vertices
/// get deterministic "_1", "_2", ... labels in parse order.
std::vector<MetricTree::InputEdge> parse_newick(std::string_view text);

/// Reads a tree file; content starting with '(' is treated as Newick,
/// anything else as an edge list.
MetricTree load_tree_file(const std::string& path, BuildReport* report = nullptr);

nlohmann::json report_to_json(const VerificationReport& report);

/// The coordinates document cmd_embed emits and cmd_verify consumes:
/// norm, dimension, per-vertex "p/q" coordinate vectors, and the embedded
/// verification report.
nlohmann::json embedding_document(const MetricTree& tree, const PwaEmbedding& emb,
                                  const VerificationReport& report);

/// Parses a coordinates document against `tree`; throws Errc::parse on label
/// mismatch or malformed rationals, Errc::dimension on ragged vectors.
PwaEmbedding parse_embedding_document(const MetricTree& tree, const nlohmann::json& doc);

std::string sweep_record_line(const SweepRecord& record); // one JSON object, no newline

std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, std::string_view content);

} // namespace treebed
