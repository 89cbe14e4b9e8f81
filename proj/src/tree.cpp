#include "treebed/tree.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace treebed {

namespace {

// Union-find over label indices, for cycle/connectivity validation.
struct DisjointSet {
    std::vector<int> parent;

    explicit DisjointSet(int n) : parent(static_cast<size_t>(n)) {
        for (int i = 0; i < n; ++i) {
            parent[static_cast<size_t>(i)] = i;
        }
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent[static_cast<size_t>(a)] = b;
        return true;
    }
};

} // namespace

MetricTree build_tree(const std::vector<MetricTree::InputEdge>& input, BuildReport* report) {
    if (input.empty()) {
        throw Error(Errc::invalid_tree, "empty edge list");
    }

    std::vector<std::string> names;
    for (const auto& e : input) {
        if (e.a == e.b) {
            throw Error(Errc::invalid_tree, "cycle detected: self-loop at '" + e.a + "'");
        }
        if (e.weight <= 0) {
            throw Error(Errc::invalid_tree,
                        "non-positive weight " + format_rational(e.weight) + " on edge " + e.a + " " + e.b);
        }
        names.push_back(e.a);
        names.push_back(e.b);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());

    auto name_index = [&](const std::string& s) {
        return static_cast<int>(std::lower_bound(names.begin(), names.end(), s) - names.begin());
    };

    std::set<std::pair<int, int>> seen;
    DisjointSet dsu(static_cast<int>(names.size()));
    for (const auto& e : input) {
        int a = name_index(e.a);
        int b = name_index(e.b);
        auto key = std::minmax(a, b);
        if (!seen.insert(key).second) {
            throw Error(Errc::invalid_tree, "duplicate edge " + e.a + " " + e.b);
        }
        if (!dsu.unite(a, b)) {
            throw Error(Errc::invalid_tree, "cycle detected through edge " + e.a + " " + e.b);
        }
    }
    for (size_t i = 1; i < names.size(); ++i) {
        if (dsu.find(static_cast<int>(i)) != dsu.find(0)) {
            throw Error(Errc::invalid_tree, "disconnected input: '" + names[i] + "' unreachable from '" +
                                                names[0] + "'");
        }
    }

    // Suppress degree-2 vertices (interior by construction: leaves have
    // degree 1). Merging two edges never changes any other vertex's degree,
    // so the set to remove is fixed up front; smallest label first keeps the
    // report deterministic.
    std::map<std::string, std::map<std::string, Rat>> adj;
    for (const auto& e : input) {
        adj[e.a].emplace(e.b, e.weight);
        adj[e.b].emplace(e.a, e.weight);
    }
    std::vector<std::string> suppressed;
    for (;;) {
        auto it = std::find_if(adj.begin(), adj.end(), [](const auto& kv) { return kv.second.size() == 2; });
        if (it == adj.end()) {
            break;
        }
        const std::string mid = it->first;
        auto nb = it->second.begin();
        const std::string n1 = nb->first;
        const Rat w1 = nb->second;
        ++nb;
        const std::string n2 = nb->first;
        const Rat w2 = nb->second;
        adj.erase(mid);
        adj[n1].erase(mid);
        adj[n2].erase(mid);
        adj[n1].emplace(n2, w1 + w2);
        adj[n2].emplace(n1, w1 + w2);
        suppressed.push_back(mid);
    }
    if (report != nullptr) {
        report->suppressed = suppressed;
    }

    MetricTree tree;
    for (const auto& [name, nbrs] : adj) {
        (void)nbrs;
        tree.labels_.push_back(name);
    }
    for (const auto& [name, nbrs] : adj) {
        VertexId u = static_cast<VertexId>(
            std::lower_bound(tree.labels_.begin(), tree.labels_.end(), name) - tree.labels_.begin());
        for (const auto& [other, w] : nbrs) {
            VertexId v = static_cast<VertexId>(
                std::lower_bound(tree.labels_.begin(), tree.labels_.end(), other) - tree.labels_.begin());
            if (u < v) {
                tree.edges_.push_back(Edge{u, v, w});
            }
        }
    }
    std::sort(tree.edges_.begin(), tree.edges_.end(),
              [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    tree.finish_build();
    return tree;
}

void MetricTree::finish_build() {
    const int n = vertex_count();
    adj_.assign(static_cast<size_t>(n), {});
    for (EdgeId e = 0; e < edge_count(); ++e) {
        adj_[static_cast<size_t>(edges_[static_cast<size_t>(e)].u)].emplace_back(
            edges_[static_cast<size_t>(e)].v, e);
        adj_[static_cast<size_t>(edges_[static_cast<size_t>(e)].v)].emplace_back(
            edges_[static_cast<size_t>(e)].u, e);
    }
    for (auto& nbrs : adj_) {
        std::sort(nbrs.begin(), nbrs.end());
    }

    vdist_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), Rat(0));
    for (VertexId s = 0; s < n; ++s) {
        std::vector<bool> visited(static_cast<size_t>(n), false);
        std::deque<VertexId> queue{s};
        visited[static_cast<size_t>(s)] = true;
        while (!queue.empty()) {
            VertexId x = queue.front();
            queue.pop_front();
            for (const auto& [y, e] : adj_[static_cast<size_t>(x)]) {
                if (!visited[static_cast<size_t>(y)]) {
                    visited[static_cast<size_t>(y)] = true;
                    vdist_[idx(s, y)] = vdist_[idx(s, x)] + edges_[static_cast<size_t>(e)].weight;
                    queue.push_back(y);
                }
            }
        }
    }
}

std::optional<VertexId> MetricTree::find(std::string_view label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) {
        return std::nullopt;
    }
    return static_cast<VertexId>(it - labels_.begin());
}

VertexId MetricTree::require(std::string_view label) const {
    if (auto v = find(label)) {
        return *v;
    }
    throw Error(Errc::not_on_tree, "no vertex labeled '" + std::string(label) + "'");
}

std::vector<VertexId> MetricTree::leaves() const {
    std::vector<VertexId> out;
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (degree(v) == 1) {
            out.push_back(v);
        }
    }
    return out;
}

int MetricTree::leaf_count() const { return static_cast<int>(leaves().size()); }

int MetricTree::interior_count() const {
    int n = 0;
    for (VertexId v = 0; v < vertex_count(); ++v) {
        if (degree(v) >= 2) {
            ++n;
        }
    }
    return n;
}

std::pair<VertexId, EdgeId> MetricTree::leaf_attachment(VertexId leaf) const {
    if (!is_leaf(leaf)) {
        throw Error(Errc::not_on_tree, "'" + label(leaf) + "' is not a leaf");
    }
    return adj_[static_cast<size_t>(leaf)].front();
}

TreePoint MetricTree::vertex_point(VertexId v) const {
    if (v < 0 || v >= vertex_count()) {
        throw Error(Errc::not_on_tree, "vertex id out of range");
    }
    return TreePoint::at_vertex(v);
}

TreePoint MetricTree::edge_point(EdgeId e, VertexId anchor, const Rat& offset) const {
    if (e < 0 || e >= edge_count()) {
        throw Error(Errc::not_on_tree, "edge id out of range");
    }
    const Edge& ed = edges_[static_cast<size_t>(e)];
    if (anchor != ed.u && anchor != ed.v) {
        throw Error(Errc::not_on_tree, "anchor '" + label(anchor) + "' is not an endpoint of the edge");
    }
    Rat from_u = anchor == ed.u ? offset : Rat(ed.weight - offset);
    if (from_u < 0 || from_u > ed.weight) {
        throw Error(Errc::not_on_tree, "offset " + format_rational(offset) + " outside edge of weight " +
                                           format_rational(ed.weight));
    }
    if (from_u == 0) {
        return TreePoint::at_vertex(ed.u);
    }
    if (from_u == ed.weight) {
        return TreePoint::at_vertex(ed.v);
    }
    TreePoint p;
    p.edge = e;
    p.offset = from_u;
    return p;
}

void MetricTree::check_point(const TreePoint& p) const {
    if (p.is_vertex()) {
        if (p.vertex >= vertex_count() || p.edge >= 0) {
            throw Error(Errc::not_on_tree, "malformed tree point");
        }
        return;
    }
    if (p.edge < 0 || p.edge >= edge_count()) {
        throw Error(Errc::not_on_tree, "point not on tree: bad edge id");
    }
    const Edge& ed = edges_[static_cast<size_t>(p.edge)];
    if (p.offset <= 0 || p.offset >= ed.weight) {
        throw Error(Errc::not_on_tree, "point not on tree: offset out of range");
    }
}

std::string MetricTree::describe(const TreePoint& p) const {
    if (p.is_vertex()) {
        return label(p.vertex);
    }
    const Edge& ed = edges_[static_cast<size_t>(p.edge)];
    return label(ed.u) + "-" + label(ed.v) + "@" + format_rational(p.offset);
}

Rat MetricTree::point_vertex_distance(const TreePoint& p, VertexId v) const {
    if (p.is_vertex()) {
        return distance(p.vertex, v);
    }
    const Edge& ed = edges_[static_cast<size_t>(p.edge)];
    return std::min(Rat(p.offset + distance(ed.u, v)), Rat(ed.weight - p.offset + distance(ed.v, v)));
}

Rat MetricTree::distance(const TreePoint& p, const TreePoint& q) const {
    check_point(p);
    check_point(q);
    if (q.is_vertex()) {
        return point_vertex_distance(p, q.vertex);
    }
    if (!p.is_vertex() && p.edge == q.edge) {
        return rat_abs(Rat(p.offset - q.offset));
    }
    const Edge& eq = edges_[static_cast<size_t>(q.edge)];
    return std::min(Rat(point_vertex_distance(p, eq.u) + q.offset),
                    Rat(point_vertex_distance(p, eq.v) + (eq.weight - q.offset)));
}

std::vector<VertexId> MetricTree::vertex_path(VertexId x, VertexId y) const {
    std::vector<VertexId> parent(static_cast<size_t>(vertex_count()), -1);
    std::deque<VertexId> queue{x};
    parent[static_cast<size_t>(x)] = x;
    while (!queue.empty()) {
        VertexId c = queue.front();
        queue.pop_front();
        if (c == y) {
            break;
        }
        for (const auto& [nb, e] : adj_[static_cast<size_t>(c)]) {
            (void)e;
            if (parent[static_cast<size_t>(nb)] < 0) {
                parent[static_cast<size_t>(nb)] = c;
                queue.push_back(nb);
            }
        }
    }
    std::vector<VertexId> rev{y};
    while (rev.back() != x) {
        rev.push_back(parent[static_cast<size_t>(rev.back())]);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

std::vector<MetricTree::Step> MetricTree::path(const TreePoint& p, const TreePoint& q) const {
    check_point(p);
    check_point(q);
    if (p == q) {
        return {};
    }

    // Interior points on a shared edge: one partial step.
    if (!p.is_vertex() && !q.is_vertex() && p.edge == q.edge) {
        Step s;
        s.edge = p.edge;
        s.forward = p.offset < q.offset;
        s.length = rat_abs(Rat(q.offset - p.offset));
        return {s};
    }

    EdgeId skip_p = -1; // partial leading step, if p is interior
    EdgeId skip_q = -1;
    VertexId exit = -1;
    VertexId entry = -1;
    std::vector<Step> steps;

    if (p.is_vertex()) {
        exit = p.vertex;
    } else {
        const Edge& ed = edges_[static_cast<size_t>(p.edge)];
        // The geodesic leaves via exactly one endpoint; the totals are
        // strictly ordered because q is not interior to this edge.
        Rat via_u = p.offset + point_vertex_distance(q, ed.u);
        Rat via_v = (ed.weight - p.offset) + point_vertex_distance(q, ed.v);
        exit = via_u < via_v ? ed.u : ed.v;
        Step s;
        s.edge = p.edge;
        s.forward = exit == ed.v;
        s.length = exit == ed.u ? p.offset : Rat(ed.weight - p.offset);
        steps.push_back(std::move(s));
        skip_p = p.edge;
    }
    if (q.is_vertex()) {
        entry = q.vertex;
    } else {
        const Edge& ed = edges_[static_cast<size_t>(q.edge)];
        Rat via_u = q.offset + point_vertex_distance(p, ed.u);
        Rat via_v = (ed.weight - q.offset) + point_vertex_distance(p, ed.v);
        entry = via_u < via_v ? ed.u : ed.v;
        skip_q = q.edge;
    }
    (void)skip_p;
    (void)skip_q;

    std::vector<VertexId> vp = vertex_path(exit, entry);
    for (size_t i = 0; i + 1 < vp.size(); ++i) {
        VertexId a = vp[i];
        VertexId b = vp[i + 1];
        const auto& nbrs = adj_[static_cast<size_t>(a)];
        auto it = std::find_if(nbrs.begin(), nbrs.end(), [&](const auto& pr) { return pr.first == b; });
        Step s;
        s.edge = it->second;
        s.forward = edges_[static_cast<size_t>(it->second)].u == a;
        s.length = edges_[static_cast<size_t>(it->second)].weight;
        steps.push_back(std::move(s));
    }
    if (!q.is_vertex()) {
        const Edge& ed = edges_[static_cast<size_t>(q.edge)];
        Step s;
        s.edge = q.edge;
        s.forward = entry == ed.u;
        s.length = entry == ed.u ? q.offset : Rat(ed.weight - q.offset);
        steps.push_back(std::move(s));
    }
    return steps;
}

TreePoint MetricTree::walk(const TreePoint& p, const std::vector<Step>& steps, const Rat& dist) const {
    check_point(p);
    if (dist < 0) {
        throw Error(Errc::not_on_tree, "negative walk distance");
    }
    Rat remaining = dist;
    for (size_t i = 0; i < steps.size(); ++i) {
        const Step& s = steps[i];
        const Edge& ed = edges_[static_cast<size_t>(s.edge)];
        Rat start; // offset from ed.u where this step begins
        if (i == 0 && !p.is_vertex()) {
            start = p.offset;
        } else {
            start = s.forward ? Rat(0) : ed.weight;
        }
        if (remaining <= s.length) {
            Rat offset = s.forward ? Rat(start + remaining) : Rat(start - remaining);
            return edge_point(s.edge, ed.u, offset);
        }
        remaining -= s.length;
    }
    if (remaining == 0) {
        return p; // empty path: p == q
    }
    throw Error(Errc::not_on_tree, "walk distance exceeds path length");
}

bool MetricTree::is_between(const TreePoint& x, const TreePoint& y, const TreePoint& z) const {
    return distance(x, z) == distance(x, y) + distance(y, z);
}

TreePoint MetricTree::median(const TreePoint& x, const TreePoint& y, const TreePoint& z) const {
    // d(x, w) is the Gromov product (y, z)_x; w sits on [x, y].
    Rat g = (distance(x, y) + distance(x, z) - distance(y, z)) / 2;
    return walk(x, path(x, y), g);
}

LeafPairRemoval MetricTree::remove_leaf_pair(VertexId a0, VertexId a1) const {
    if (a0 == a1) {
        throw Error(Errc::invalid_tree, "leaf pair must be distinct");
    }
    if (!is_leaf(a0) || !is_leaf(a1)) {
        throw Error(Errc::invalid_tree, "'" + label(is_leaf(a0) ? a1 : a0) + "' is not a leaf");
    }
    if (leaf_count() < 3) {
        throw Error(Errc::invalid_tree, "tree has fewer than 3 leaves");
    }

    std::vector<InputEdge> rest;
    for (const Edge& e : edges_) {
        if (e.u == a0 || e.v == a0 || e.u == a1 || e.v == a1) {
            continue;
        }
        rest.push_back(InputEdge{label(e.u), label(e.v), e.weight});
    }
    LeafPairRemoval out{build_tree(rest), {}, {}};
    out.b0 = locate_in(out.rest, leaf_attachment(a0).first);
    out.b1 = locate_in(out.rest, leaf_attachment(a1).first);
    return out;
}

TreePoint MetricTree::locate_in(const MetricTree& other, VertexId v) const {
    if (auto direct = other.find(label(v))) {
        return TreePoint::at_vertex(*direct);
    }
    // v was merged into the interior of some edge of `other`; distances among
    // surviving vertices agree between the trees, so an exact additivity test
    // finds the hosting edge.
    for (EdgeId e = 0; e < other.edge_count(); ++e) {
        const Edge& ed = other.edge(e);
        VertexId pu = require(other.label(ed.u));
        VertexId pv = require(other.label(ed.v));
        Rat du = distance(pu, v);
        if (du + distance(v, pv) == ed.weight && du > 0 && du < ed.weight) {
            return other.edge_point(e, ed.u, du);
        }
    }
    throw Error(Errc::internal, "vertex '" + label(v) + "' not locatable in the reduced tree");
}

std::vector<MetricTree::InputEdge> MetricTree::to_edge_list() const {
    std::vector<InputEdge> out;
    out.reserve(edges_.size());
    for (const Edge& e : edges_) {
        out.push_back(InputEdge{label(e.u), label(e.v), e.weight});
    }
    return out;
}

std::string star_tip_label(int index, int k) {
    std::string digits = std::to_string(index + 1);
    std::string width = std::to_string(k);
    return "t" + std::string(width.size() - digits.size(), '0') + digits;
}

MetricTree StarTree::to_metric_tree() const {
    if (arms.empty()) {
        throw Error(Errc::invalid_tree, "star with no arms");
    }
    std::vector<MetricTree::InputEdge> edges;
    for (size_t i = 0; i < arms.size(); ++i) {
        if (arms[i] <= 0) {
            throw Error(Errc::invalid_tree, "non-positive arm length");
        }
        edges.push_back(MetricTree::InputEdge{"o", star_tip_label(static_cast<int>(i), arm_count()),
                                              arms[i]});
    }
    return build_tree(edges);
}

std::optional<StarTree> as_star(const MetricTree& tree) {
    if (tree.interior_count() != 1) {
        return std::nullopt;
    }
    StarTree star;
    for (VertexId leaf : tree.leaves()) {
        star.arms.push_back(tree.edge(tree.leaf_attachment(leaf).second).weight);
    }
    return star;
}

} // namespace treebed
