#include "treebed/tree.hpp"

#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>

using namespace treebed;
using namespace treebed::testutil;

TEST_CASE("build_tree basics") {
    SUBCASE("single edge") {
        MetricTree t = build_tree({{"a", "b", Rat(1)}});
        CHECK(t.vertex_count() == 2);
        CHECK(t.leaf_count() == 2);
    }
    SUBCASE("3-star") {
        MetricTree t = build_tree({{"o", "x", Rat(1)}, {"o", "y", Rat(1)}, {"o", "z", Rat(1)}});
        auto ls = t.leaves();
        std::vector<std::string> names;
        for (VertexId v : ls) {
            names.push_back(t.label(v));
        }
        CHECK(names == std::vector<std::string>{"x", "y", "z"});
    }
    SUBCASE("degree-2 suppression is applied and reported") {
        BuildReport report;
        MetricTree t = build_tree({{"a", "b", Rat(1)}, {"b", "c", Rat(2)}}, &report);
        CHECK(t.vertex_count() == 2);
        CHECK(t.edge_count() == 1);
        CHECK(t.edge(0).weight == Rat(3));
        CHECK(report.suppressed == std::vector<std::string>{"b"});
    }
    SUBCASE("suppression chains collapse to a single edge") {
        BuildReport report;
        MetricTree t = build_tree(
            {{"a", "b", Rat(1)}, {"b", "c", Rat(1, 2)}, {"c", "d", Rat(1, 3)}, {"d", "e", Rat(1)}},
            &report);
        CHECK(t.edge_count() == 1);
        CHECK(t.edge(0).weight == Rat(17, 6));
        CHECK(report.suppressed == std::vector<std::string>{"b", "c", "d"});
    }
}

TEST_CASE("build_tree rejects invalid input") {
    CHECK_THROWS_AS(build_tree({}), Error);
    CHECK_THROWS_AS(build_tree({{"a", "a", Rat(1)}}), Error);
    CHECK_THROWS_AS(build_tree({{"a", "b", Rat(0)}}), Error);
    CHECK_THROWS_AS(build_tree({{"a", "b", Rat(-1)}}), Error);
    CHECK_THROWS_AS(build_tree({{"a", "b", Rat(1)}, {"b", "a", Rat(2)}}), Error);
    // cycle
    CHECK_THROWS_AS(build_tree({{"a", "b", Rat(1)}, {"b", "c", Rat(1)}, {"c", "a", Rat(1)}}), Error);
    // disconnected
    CHECK_THROWS_AS(build_tree({{"a", "b", Rat(1)}, {"c", "d", Rat(1)}}), Error);
}

TEST_CASE("distance") {
    SUBCASE("star tips") {
        MetricTree t = unit_star(3);
        CHECK(t.distance(t.require("t1"), t.require("t2")) == Rat(2));
    }
    SUBCASE("identity") {
        MetricTree t = h_tree();
        TestRng rng(7);
        for (int i = 0; i < 20; ++i) {
            TreePoint p = random_point(t, rng);
            CHECK(t.distance(p, p) == Rat(0));
        }
    }
    SUBCASE("additivity along a suppressed path") {
        // a-b-c with weights 1, 2 collapses to a single a-c edge; the former
        // midpoint of bc sits at offset 2 from a.
        MetricTree t = build_tree({{"a", "b", Rat(1)}, {"b", "c", Rat(2)}});
        TreePoint mid = t.edge_point(0, t.require("a"), Rat(2));
        CHECK(t.distance(t.vertex_point(t.require("a")), mid) == Rat(2));
        CHECK(t.distance(t.vertex_point(t.require("c")), mid) == Rat(1));
    }
    SUBCASE("metric axioms on random triples") {
        TestRng rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            MetricTree t = random_tree(rng, 2, 7);
            TreePoint x = random_point(t, rng);
            TreePoint y = random_point(t, rng);
            TreePoint z = random_point(t, rng);
            CHECK(t.distance(x, y) == t.distance(y, x));
            CHECK(t.distance(x, z) <= t.distance(x, y) + t.distance(y, z));
            CHECK((t.distance(x, y) == 0) == (x == y));
        }
    }
}

TEST_CASE("path") {
    MetricTree t = h_tree();
    SUBCASE("empty for coincident points") {
        CHECK(t.path(t.vertex_point(0), t.vertex_point(0)).empty());
    }
    SUBCASE("star path passes the center") {
        MetricTree s = unit_star(3);
        auto steps = s.path(s.vertex_point(s.require("t1")), s.vertex_point(s.require("t2")));
        REQUIRE(steps.size() == 2);
        CHECK(steps[0].length == Rat(1));
        CHECK(steps[1].length == Rat(1));
    }
    SUBCASE("step lengths reproduce the distance") {
        // Independent check: sum the reported lengths.
        TestRng rng(23);
        for (int trial = 0; trial < 60; ++trial) {
            MetricTree t2 = random_tree(rng, 2, 7);
            TreePoint p = random_point(t2, rng);
            TreePoint q = random_point(t2, rng);
            Rat total = 0;
            for (const auto& s : t2.path(p, q)) {
                total += s.length;
            }
            CHECK(total == t2.distance(p, q));
        }
    }
    SUBCASE("H-tree leaf-to-leaf path has total length 3") {
        Rat total = 0;
        for (const auto& s : t.path(t.vertex_point(t.require("l2")), t.vertex_point(t.require("l4")))) {
            total += s.length;
        }
        CHECK(total == Rat(3));
    }
}

TEST_CASE("leaves") {
    CHECK(build_tree({{"a", "b", Rat(1)}}).leaf_count() == 2);
    CHECK(unit_star(5).leaf_count() == 5);
    MetricTree h = h_tree();
    std::vector<std::string> names;
    for (VertexId v : h.leaves()) {
        names.push_back(h.label(v));
    }
    CHECK(names == std::vector<std::string>{"l1", "l2", "l3", "l4"});
}

TEST_CASE("median") {
    SUBCASE("degenerate and symmetric cases") {
        MetricTree s = unit_star(3);
        TreePoint x = s.vertex_point(s.require("t1"));
        TreePoint y = s.vertex_point(s.require("t2"));
        TreePoint z = s.vertex_point(s.require("t3"));
        CHECK(s.median(x, x, z) == x);
        CHECK(s.median(x, y, z) == s.vertex_point(s.require("o")));
    }
    SUBCASE("median additivity identities hold exactly") {
        TestRng rng(37);
        for (int trial = 0; trial < 80; ++trial) {
            MetricTree t = random_tree(rng, 3, 8);
            TreePoint x = random_point(t, rng);
            TreePoint y = random_point(t, rng);
            TreePoint z = random_point(t, rng);
            TreePoint w = t.median(x, y, z);
            CHECK(t.distance(x, y) == t.distance(x, w) + t.distance(w, y));
            CHECK(t.distance(x, z) == t.distance(x, w) + t.distance(w, z));
            CHECK(t.distance(y, z) == t.distance(y, w) + t.distance(w, z));
        }
    }
    SUBCASE("median agrees with the path-divergence oracle") {
        // Oracle: walk the step lists of [x,y] and [x,z] in lockstep; the
        // shared prefix length locates w on [x,y].
        TestRng rng(41);
        for (int trial = 0; trial < 60; ++trial) {
            MetricTree t = random_tree(rng, 3, 8);
            TreePoint x = random_point(t, rng);
            TreePoint y = random_point(t, rng);
            TreePoint z = random_point(t, rng);
            auto py = t.path(x, y);
            auto pz = t.path(x, z);
            Rat shared = 0;
            for (size_t i = 0; i < py.size() && i < pz.size(); ++i) {
                if (py[i].edge != pz[i].edge || py[i].forward != pz[i].forward) {
                    break;
                }
                shared += std::min(py[i].length, pz[i].length);
                if (py[i].length != pz[i].length) {
                    break;
                }
            }
            CHECK(t.median(x, y, z) == t.walk(x, py, shared));
        }
    }
}

TEST_CASE("is_between") {
    MetricTree s = unit_star(3);
    TreePoint x = s.vertex_point(s.require("t1"));
    TreePoint y = s.vertex_point(s.require("t2"));
    TreePoint z = s.vertex_point(s.require("t3"));
    CHECK(s.is_between(x, x, z));
    CHECK_FALSE(s.is_between(x, y, z)); // third tip is never between two tips
    MetricTree p = build_tree({{"a", "b", Rat(1)}, {"a", "c", Rat(1)}, {"a", "d", Rat(1)}});
    CHECK(p.is_between(p.vertex_point(p.require("b")), p.vertex_point(p.require("a")),
                       p.vertex_point(p.require("c"))));
}

TEST_CASE("betweenness transitivity") {
    // Points in path order satisfy abc and acd; transitivity demands abd and
    // bcd, exactly.
    TestRng rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        MetricTree t = random_tree(rng, 2, 8);
        TreePoint p = random_point(t, rng);
        TreePoint q = random_point(t, rng);
        auto steps = t.path(p, q);
        Rat total = t.distance(p, q);
        if (total == 0) {
            continue;
        }
        std::vector<Rat> offsets;
        for (int i = 0; i < 4; ++i) {
            int den = rng.range(1, 12);
            offsets.push_back(total * Rat(rng.range(0, den), den));
        }
        std::sort(offsets.begin(), offsets.end());
        TreePoint a = t.walk(p, steps, offsets[0]);
        TreePoint b = t.walk(p, steps, offsets[1]);
        TreePoint c = t.walk(p, steps, offsets[2]);
        TreePoint d = t.walk(p, steps, offsets[3]);
        REQUIRE(t.is_between(a, b, c));
        REQUIRE(t.is_between(a, c, d));
        CHECK(t.is_between(a, b, d));
        CHECK(t.is_between(b, c, d));
    }
}

TEST_CASE("remove_leaf_pair") {
    SUBCASE("H-tree: attachments land inside the merged edge") {
        MetricTree t = h_tree();
        auto removal = t.remove_leaf_pair(t.require("l2"), t.require("l4"));
        CHECK(removal.rest.vertex_count() == 2);
        CHECK(removal.rest.edge_count() == 1);
        CHECK(removal.rest.edge(0).weight == Rat(3));
        CHECK(removal.rest.label(removal.rest.edge(0).u) == "l1");
        CHECK_FALSE(removal.b0.is_vertex());
        CHECK(removal.b0.offset == Rat(1));
        CHECK_FALSE(removal.b1.is_vertex());
        CHECK(removal.b1.offset == Rat(2));
    }
    SUBCASE("4-star: both attachments collapse to the same interior point") {
        MetricTree t = unit_star(4);
        auto removal = t.remove_leaf_pair(t.require("t1"), t.require("t2"));
        CHECK(removal.rest.leaf_count() == 2);
        CHECK(removal.b0 == removal.b1);
        CHECK(removal.rest.distance(removal.b0, removal.rest.vertex_point(0)) == Rat(1));
    }
    SUBCASE("3-star: removal leaves a single arm") {
        MetricTree t = unit_star(3);
        auto removal = t.remove_leaf_pair(t.require("t1"), t.require("t2"));
        CHECK(removal.rest.leaf_count() == 2);
        CHECK(removal.rest.edge_count() == 1);
        CHECK(removal.b0.is_vertex());
        CHECK(removal.rest.label(removal.b0.vertex) == "o");
    }
    SUBCASE("errors") {
        MetricTree t = h_tree();
        CHECK_THROWS_AS(t.remove_leaf_pair(t.require("a"), t.require("l1")), Error);
        MetricTree p = build_tree({{"a", "b", Rat(1)}});
        CHECK_THROWS_AS(p.remove_leaf_pair(0, 1), Error);
    }
    SUBCASE("surviving distances are preserved") {
        TestRng rng(67);
        for (int trial = 0; trial < 40; ++trial) {
            MetricTree t = random_tree(rng, 3, 8);
            auto ls = t.leaves();
            VertexId a0 = ls[rng.below(ls.size())];
            VertexId a1 = a0;
            while (a1 == a0) {
                a1 = ls[rng.below(ls.size())];
            }
            auto removal = t.remove_leaf_pair(a0, a1);
            int expected_drop = 2;
            VertexId b0 = t.leaf_attachment(a0).first;
            if (b0 == t.leaf_attachment(a1).first && t.degree(b0) == 3) {
                expected_drop = 1; // the shared attachment becomes a leaf
            }
            CHECK(removal.rest.leaf_count() == t.leaf_count() - expected_drop);
            for (VertexId v = 0; v < removal.rest.vertex_count(); ++v) {
                for (VertexId w = v + 1; w < removal.rest.vertex_count(); ++w) {
                    CHECK(removal.rest.distance(v, w) ==
                          t.distance(t.require(removal.rest.label(v)), t.require(removal.rest.label(w))));
                }
            }
        }
    }
}

TEST_CASE("tree point canonicalization") {
    MetricTree t = build_tree({{"a", "b", Rat(2)}});
    CHECK(t.edge_point(0, 0, Rat(0)) == t.vertex_point(0));
    CHECK(t.edge_point(0, 0, Rat(2)) == t.vertex_point(1));
    // anchoring at either endpoint describes the same point
    CHECK(t.edge_point(0, 0, Rat(1, 2)) == t.edge_point(0, 1, Rat(3, 2)));
    CHECK_THROWS_AS(t.edge_point(0, 0, Rat(3)), Error);
    CHECK_THROWS_AS(t.edge_point(0, 0, Rat(-1)), Error);
}
