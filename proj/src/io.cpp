#include "treebed/io.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <set>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace treebed {

using nlohmann::json;

namespace {

std::string pair_key(const LabelPair& p) { return p.first + "|" + p.second; }

json rat_vector(const std::vector<Rat>& v) {
    json arr = json::array();
    for (const Rat& r : v) {
        arr.push_back(format_rational(r));
    }
    return arr;
}

} // namespace

std::vector<MetricTree::InputEdge> parse_edge_list(std::string_view text) {
    std::vector<MetricTree::InputEdge> edges;
    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::vector<std::string> tokens;
        std::istringstream in{std::string(line)};
        std::string tok;
        while (in >> tok) {
            tokens.push_back(tok);
        }
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 3) {
            throw Error(Errc::parse, "line " + std::to_string(lineno) +
                                         ": expected 'LABEL LABEL WEIGHT', got " +
                                         std::to_string(tokens.size()) + " fields");
        }
        Rat weight;
        try {
            weight = parse_rational(tokens[2]);
        } catch (const Error& e) {
            throw Error(Errc::parse, "line " + std::to_string(lineno) + ": " + e.what());
        }
        edges.push_back(MetricTree::InputEdge{tokens[0], tokens[1], weight});
    }
    if (edges.empty()) {
        throw Error(Errc::parse, "no edges in input");
    }
    return edges;
}

namespace {

// Minimal Newick subset: nested groups, unquoted names, ':' branch lengths,
// final ';'. Unnamed vertices get "_1", "_2", ... in parse order.
class NewickParser {
public:
    explicit NewickParser(std::string_view text) : text_(text) {}

    std::vector<MetricTree::InputEdge> parse() {
        node();
        skip_space();
        if (!eat(';')) {
            throw Error(Errc::parse, "newick: missing terminating ';'");
        }
        skip_space();
        if (pos_ != text_.size()) {
            throw Error(Errc::parse, "newick: trailing characters after ';'");
        }
        if (edges_.empty()) {
            throw Error(Errc::parse, "newick: tree has no edges");
        }
        return edges_;
    }

private:
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }
    bool eat(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string name_token() {
        skip_space();
        size_t start = pos_;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' ||
                std::isspace(static_cast<unsigned char>(c))) {
                break;
            }
            ++pos_;
        }
        return std::string(text_.substr(start, pos_ - start));
    }
    std::string claim_name() {
        std::string name = name_token();
        if (name.empty()) {
            name = "_" + std::to_string(++unnamed_);
        }
        if (!used_.insert(name).second) {
            throw Error(Errc::parse, "newick: duplicate vertex name '" + name + "'");
        }
        return name;
    }

    // One node: either "(child:len, ...)name" or a bare leaf name. The name
    // follows the children, so child edges are buffered until it is known.
    std::string node() {
        skip_space();
        if (!eat('(')) {
            return claim_name();
        }
        std::vector<std::pair<std::string, Rat>> children;
        do {
            std::string child = node();
            if (!eat(':')) {
                throw Error(Errc::parse, "newick: branch length required for '" + child + "'");
            }
            Rat weight;
            try {
                weight = parse_rational(name_token());
            } catch (const Error& e) {
                throw Error(Errc::parse, std::string("newick: ") + e.what());
            }
            children.emplace_back(std::move(child), std::move(weight));
        } while (eat(','));
        if (!eat(')')) {
            throw Error(Errc::parse, "newick: expected ')'");
        }
        std::string name = claim_name();
        for (auto& [child, weight] : children) {
            edges_.push_back(MetricTree::InputEdge{name, std::move(child), std::move(weight)});
        }
        return name;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int unnamed_ = 0;
    std::set<std::string> used_;
    std::vector<MetricTree::InputEdge> edges_;
};

} // namespace

std::vector<MetricTree::InputEdge> parse_newick(std::string_view text) {
    return NewickParser(text).parse();
}

MetricTree load_tree_file(const std::string& path, BuildReport* report) {
    std::string content = read_file(path);
    size_t first = content.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        throw Error(Errc::parse, path + ": empty file");
    }
    auto edges = content[first] == '(' ? parse_newick(content) : parse_edge_list(content);
    return build_tree(edges, report);
}

json report_to_json(const VerificationReport& report) {
    json failures = json::array();
    for (const PairFailure& f : report.failures) {
        failures.push_back(json{{"pair", {f.a, f.b}},
                                {"tree_distance", format_rational(f.tree_distance)},
                                {"image_distance", format_rational(f.image_distance)}});
    }
    json certs(json::value_t::object);
    if (!report.l1_monotone.empty()) {
        json mono(json::value_t::object);
        for (const auto& [pair, dirs] : report.l1_monotone) {
            json d = json::array();
            for (int v : dirs) {
                d.push_back(v > 0 ? "+" : (v < 0 ? "-" : "0"));
            }
            mono[pair_key(pair)] = d;
        }
        certs["l1_monotone"] = mono;
    }
    if (!report.linf_witnesses.empty()) {
        json wits(json::value_t::object);
        for (const auto& [pair, w] : report.linf_witnesses) {
            wits[pair_key(pair)] = json{{"coordinate", w.coordinate}, {"sign", w.sign > 0 ? "+" : "-"}};
        }
        certs["linf_witnesses"] = wits;
    }
    return json{{"verdict", report.exact_pass ? "exact-pass" : "fail"},
                {"failures", failures},
                {"certificates", certs}};
}

json embedding_document(const MetricTree& tree, const PwaEmbedding& emb,
                        const VerificationReport& report) {
    json vertices(json::value_t::object);
    for (VertexId v = 0; v < tree.vertex_count(); ++v) {
        vertices[tree.label(v)] = rat_vector(emb.vertex_images[static_cast<size_t>(v)]);
    }
    return json{{"format", "tree-embedding/1"},
                {"norm", norm_name(emb.norm)},
                {"dimension", emb.dimension},
                {"vertices", vertices},
                {"verification", report_to_json(report)}};
}

PwaEmbedding parse_embedding_document(const MetricTree& tree, const json& doc) {
    if (!doc.is_object() || !doc.contains("norm") || !doc.contains("dimension") ||
        !doc.contains("vertices")) {
        throw Error(Errc::parse, "coordinates document needs norm, dimension and vertices");
    }
    PwaEmbedding emb;
    std::string norm = doc.at("norm").get<std::string>();
    if (norm == "l1") {
        emb.norm = Norm::L1;
    } else if (norm == "linf") {
        emb.norm = Norm::Linf;
    } else {
        throw Error(Errc::parse, "unknown norm '" + norm + "'");
    }
    if (!doc.at("dimension").is_number_integer()) {
        throw Error(Errc::parse, "dimension must be an integer");
    }
    emb.dimension = doc.at("dimension").get<int>();
    if (emb.dimension < 1) {
        throw Error(Errc::dimension, "dimension must be positive");
    }
    const json& vertices = doc.at("vertices");
    if (!vertices.is_object() || vertices.size() != static_cast<size_t>(tree.vertex_count())) {
        throw Error(Errc::parse, "vertex set of the coordinates document does not match the tree");
    }
    emb.vertex_images.assign(static_cast<size_t>(tree.vertex_count()), {});
    for (const auto& [label, coords] : vertices.items()) {
        auto v = tree.find(label);
        if (!v) {
            throw Error(Errc::parse, "label '" + label + "' is not a vertex of the tree");
        }
        if (!coords.is_array() || coords.size() != static_cast<size_t>(emb.dimension)) {
            throw Error(Errc::dimension, "coordinates of '" + label + "' do not match the dimension");
        }
        std::vector<Rat> image;
        for (const auto& c : coords) {
            if (!c.is_string()) {
                throw Error(Errc::parse, "coordinates must be rational strings");
            }
            image.push_back(parse_rational(c.get<std::string>()));
        }
        emb.vertex_images[static_cast<size_t>(*v)] = std::move(image);
    }
    return emb;
}

std::string sweep_record_line(const SweepRecord& record) {
    json edges = json::array();
    for (const auto& e : record.edges) {
        edges.push_back(json::array({e.a, e.b, format_rational(e.weight)}));
    }
    json line{{"index", record.index},
              {"topology", record.topology},
              {"edges", edges},
              {"leaves", record.leaves},
              {"dimension", record.dimension},
              {"outcome", search_status_name(record.outcome)},
              {"nodes", record.nodes}};
    if (record.counterexample_candidate()) {
        line["counterexample_candidate"] = true;
    }
    return line.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(Errc::parse, "cannot open '" + path + "'");
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file_atomic(const std::string& path, std::string_view content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error(Errc::parse, "cannot write '" + tmp + "'");
        }
        out << content;
        if (!out.flush()) {
            throw Error(Errc::parse, "short write to '" + tmp + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error(Errc::parse, "cannot rename '" + tmp + "' to '" + path + "'");
    }
}

} // namespace treebed
