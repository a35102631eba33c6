#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "damage/graph.hpp"

using namespace damage;

namespace {

Graph random_connected_graph(std::mt19937& rng, int n) {
    // Random spanning tree plus random extra edges.
    Graph g(n);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        g.add_edge(parent(rng), v);
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.adjacent(u, v) && coin(rng) < 0.3) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("family constructors") {
    const Graph c6 = cycle_graph(6);
    REQUIRE(c6.size() == 6);
    for (int v = 0; v < 6; ++v) REQUIRE(c6.degree(v) == 2);
    REQUIRE(c6.adjacent(5, 0));

    const Graph s5 = star_graph(5);
    REQUIRE(s5.size() == 6);
    REQUIRE(s5.degree(0) == 5);

    const Graph t = tree_from_parents({0, 0, 0, 1});
    REQUIRE(t.size() == 4);
    REQUIRE(t.edge_count() == 3);
    REQUIRE(t.adjacent(0, 1));
    REQUIRE(t.adjacent(0, 2));
    REQUIRE(t.adjacent(1, 3));

    const Graph kb = complete_bipartite_graph(2, 3);
    REQUIRE(kb.size() == 5);
    REQUIRE(kb.edge_count() == 6);

    REQUIRE_THROWS_AS(cycle_graph(2), GraphError);
    REQUIRE_THROWS_AS(complete_graph(0), GraphError);
}

TEST_CASE("adjacency symmetry and irreflexivity after construction") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_int_distribution<int> size(1, 12);
        const Graph g = random_connected_graph(rng, size(rng));
        for (int u = 0; u < g.size(); ++u) {
            REQUIRE_FALSE(g.adjacent(u, u));
            for (int v = 0; v < g.size(); ++v) REQUIRE(g.adjacent(u, v) == g.adjacent(v, u));
        }
    }
}

TEST_CASE("cartesian product structure") {
    const Graph c4 = cycle_graph(4);
    const Graph p2 = path_graph(2);

    const Graph q = cartesian_product(p2, p2);
    REQUIRE(q.size() == 4);
    REQUIRE(q.edge_count() == 4);
    for (int v = 0; v < 4; ++v) REQUIRE(q.degree(v) == 2);  // P2 x P2 is C4

    const Graph c45 = cartesian_product(c4, cycle_graph(5));
    REQUIRE(c45.size() == 20);

    const Graph c44 = cartesian_product(c4, c4);
    for (int v = 0; v < c44.size(); ++v) REQUIRE(c44.degree(v) == 4);

    // Degree additivity on a random pair.
    std::mt19937 rng(11);
    const Graph a = random_connected_graph(rng, 5);
    const Graph b = random_connected_graph(rng, 6);
    const Graph ab = cartesian_product(a, b);
    for (int u = 0; u < a.size(); ++u)
        for (int v = 0; v < b.size(); ++v)
            REQUIRE(ab.degree(product_flat(u, v, b.size())) == a.degree(u) + b.degree(v));

    REQUIRE_THROWS_AS(cartesian_product(complete_graph(9), complete_graph(9)), GraphError);
}

TEST_CASE("distances, radius, centers") {
    const Graph c6 = cycle_graph(6);
    const DistanceMatrix d6 = all_pairs_distance(c6);
    REQUIRE(d6(0, 3) == 3);
    REQUIRE(d6(1, 4) == 3);

    const Graph p5 = path_graph(5);
    REQUIRE(all_pairs_distance(p5)(0, 4) == 4);

    const Graph c45 = cartesian_product(cycle_graph(4), cycle_graph(5));
    const DistanceMatrix d45 = all_pairs_distance(c45);
    REQUIRE(d45(product_flat(0, 0, 5), product_flat(2, 2, 5)) == 4);

    REQUIRE(radius(cycle_graph(7)) == 3);
    const RadiusInfo star = radius_ecc_centers(star_graph(5));
    REQUIRE(star.radius == 1);
    REQUIRE(star.centers == vbit(0));

    REQUIRE(radius(cartesian_product(path_graph(3), path_graph(4))) == 3);

    // Product radius is the sum of factor radii.
    std::mt19937 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<int> size(2, 7);
        const Graph a = random_connected_graph(rng, size(rng));
        const Graph b = random_connected_graph(rng, size(rng));
        REQUIRE(radius(cartesian_product(a, b)) == radius(a) + radius(b));
    }

    // Symmetry and triangle inequality.
    const Graph g = random_connected_graph(rng, 9);
    const DistanceMatrix d = all_pairs_distance(g);
    for (int u = 0; u < 9; ++u)
        for (int v = 0; v < 9; ++v) {
            REQUIRE(d(u, v) == d(v, u));
            for (int w = 0; w < 9; ++w) REQUIRE(d(u, w) <= d(u, v) + d(v, w));
        }
}

TEST_CASE("universal vertex and tree predicates") {
    REQUIRE(is_universal(star_graph(5), 0));
    REQUIRE_FALSE(is_universal(cycle_graph(4), 0));
    REQUIRE(is_tree(path_graph(7)));
    REQUIRE_FALSE(is_tree(cycle_graph(5)));
    REQUIRE(has_universal_vertex(complete_graph(4)));
}

TEST_CASE("domination predicates") {
    const Graph c4 = cycle_graph(4);
    REQUIRE(o_dominates(c4, 0, 2));
    for (int v = 0; v < 4; ++v)
        for (int u = 0; u < 4; ++u)
            if (u != v) REQUIRE_FALSE(c_dominates(c4, v, u));

    const Graph p3 = path_graph(3);
    REQUIRE(c_dominates(p3, 1, 0));
    REQUIRE(c_dominates(p3, 1, 2));
    REQUIRE(dominates(p3, 1, 0));
}

TEST_CASE("c-dominated witnesses and products") {
    REQUIRE(has_c_dominated_vertex(path_graph(3)).has_value());
    REQUIRE_FALSE(has_c_dominated_vertex(cartesian_product(cycle_graph(4), cycle_graph(4))).has_value());
    REQUIRE_FALSE(has_c_dominated_vertex(cartesian_product(complete_graph(3), path_graph(2))).has_value());

    // No product of graphs with at least one edge each has a c-dominated vertex.
    std::mt19937 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        std::uniform_int_distribution<int> size(2, 7);
        const Graph a = random_connected_graph(rng, size(rng));
        const Graph b = random_connected_graph(rng, size(rng));
        REQUIRE_FALSE(has_c_dominated_vertex(cartesian_product(a, b)).has_value());
    }
}

TEST_CASE("corner dismantling") {
    REQUIRE(corner_dismantle(tree_from_parents({0, 0, 1, 1, 2})).is_copwin);
    REQUIRE_FALSE(corner_dismantle(cycle_graph(4)).is_copwin);
    REQUIRE(corner_dismantle(complete_graph(5)).is_copwin);
    const DismantleResult path = corner_dismantle(path_graph(4));
    REQUIRE(path.is_copwin);
    REQUIRE(path.elimination_order.size() == 3);
}

TEST_CASE("graph6 round trip") {
    REQUIRE(encode_graph6(Graph(1)) == "@");

    std::mt19937 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> size(1, 20);
        const Graph g = random_connected_graph(rng, size(rng));
        const Graph back = parse_graph6(encode_graph6(g));
        REQUIRE(back == g);
    }

    // The long (n >= 63) form.
    const Graph big = path_graph(64);
    REQUIRE(parse_graph6(encode_graph6(big)) == big);

    REQUIRE(parse_graph6(">>graph6<<" + encode_graph6(cycle_graph(5))) == cycle_graph(5));
    REQUIRE_THROWS_AS(parse_graph6(""), GraphError);
    REQUIRE_THROWS_AS(parse_graph6("@\x01"), GraphError);
}

TEST_CASE("family descriptor language") {
    REQUIRE(build_family("cycle:6") == cycle_graph(6));
    REQUIRE(build_family("path:4") == path_graph(4));
    REQUIRE(build_family("complete:5") == complete_graph(5));
    REQUIRE(build_family("star:5") == star_graph(5));
    REQUIRE(build_family("complete_bipartite:2,3") == complete_bipartite_graph(2, 3));
    REQUIRE(build_family("tree:[_,0,0,1]") == tree_from_parents({0, 0, 0, 1}));
    REQUIRE(build_family("tree:_,0,0,1") == tree_from_parents({0, 0, 0, 1}));
    REQUIRE(build_family("product:cycle:4xcycle:5") == cartesian_product(cycle_graph(4), cycle_graph(5)));
    REQUIRE(build_family("g6:" + encode_graph6(cycle_graph(7))) == cycle_graph(7));
    REQUIRE_THROWS_AS(build_family("cycle:"), GraphError);
    REQUIRE_THROWS_AS(build_family("nonsense:3"), GraphError);
    REQUIRE_THROWS_AS(build_family("cycle:99"), GraphError);
}
