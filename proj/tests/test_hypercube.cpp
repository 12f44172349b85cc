#include "doctest.h"

#include "ceq/hypercube.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

using namespace ceq;

namespace {

Profile P(std::uint32_t code) { return Profile(code); }

// Independent component oracle: union-find over the non-removed vertices.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<std::vector<std::uint32_t>> dsu_components(int n, const VertexSet& removed) {
    std::uint32_t total = 1u << n;
    Dsu dsu(static_cast<int>(total));
    for (std::uint32_t c = 0; c < total; ++c) {
        if (removed.contains(P(c))) continue;
        for (int i = 1; i <= n; ++i) {
            std::uint32_t d = c ^ (1u << (i - 1));
            if (d < c || removed.contains(P(d))) continue;
            dsu.unite(static_cast<int>(c), static_cast<int>(d));
        }
    }
    std::map<int, std::vector<std::uint32_t>> groups;
    for (std::uint32_t c = 0; c < total; ++c) {
        if (!removed.contains(P(c))) groups[dsu.find(static_cast<int>(c))].push_back(c);
    }
    std::vector<std::vector<std::uint32_t>> out;
    for (auto& [root, members] : groups) out.push_back(members);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a.front() < b.front();
    });
    return out;
}

}  // namespace

TEST_CASE("neighbors flips one coordinate per player, in player order") {
    auto ns = neighbors(Profile::from_bitstring("000"), 3);
    REQUIRE(ns.size() == 3);
    CHECK(ns[0].bitstring(3) == "100");
    CHECK(ns[1].bitstring(3) == "010");
    CHECK(ns[2].bitstring(3) == "001");

    auto ms = neighbors(Profile::from_bitstring("101"), 3);
    CHECK(ms[0].bitstring(3) == "001");
    CHECK(ms[1].bitstring(3) == "111");
    CHECK(ms[2].bitstring(3) == "100");

    auto single = neighbors(Profile::from_bitstring("0"), 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0].bitstring(1) == "1");
}

TEST_CASE("VertexSet basics") {
    VertexSet s(4);
    CHECK(s.size() == 0);
    s.insert(P(5));
    s.insert(P(3));
    s.insert(P(5));
    CHECK(s.size() == 2);
    CHECK(s.contains(P(3)));
    CHECK(!s.contains(P(4)));
    CHECK(s.min_element() == P(3));
    s.erase(P(3));
    CHECK(s.size() == 1);
    CHECK(s.min_element() == P(5));

    VertexSet full = VertexSet::full(3);
    CHECK(full.size() == 8);
    std::vector<std::uint32_t> seen;
    full.for_each([&](Profile p) { seen.push_back(p.code()); });
    for (std::size_t i = 0; i + 1 < seen.size(); ++i) CHECK(seen[i] < seen[i + 1]);
}

TEST_CASE("components: square with opposite corners removed splits in two") {
    auto comps = components(2, VertexSet::of(2, {0, 3}));
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 1);
    CHECK(comps[1].size() == 1);
    CHECK(comps[0].contains(P(1)));  // ties broken by smallest member code
    CHECK(comps[1].contains(P(2)));
}

TEST_CASE("components: cube minus a vertex stays connected") {
    auto comps = components(3, VertexSet::of(3, {0}));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 7);
    CHECK(!comps[0].contains(P(0)));
}

TEST_CASE("components ordering: size descending") {
    // Remove 00 and 01 from the square: leaves edge {10, 11}... actually
    // codes: remove {0, 2} leaves {1, 3} which are adjacent (differ in bit 1).
    auto comps = components(2, VertexSet::of(2, {0, 2}));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 2);
}

TEST_CASE("components agree with a union-find oracle on random removals") {
    std::mt19937_64 rng(20240517);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 3 + static_cast<int>(trial % 4);
        std::uint32_t total = 1u << n;
        VertexSet removed(n);
        std::uniform_int_distribution<std::uint32_t> pick(0, total - 1);
        int removals = static_cast<int>(rng() % (total / 2));
        for (int k = 0; k < removals; ++k) removed.insert(P(pick(rng)));

        auto got = components(n, removed);
        auto want = dsu_components(n, removed);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i) {
            CHECK(got[i].size() == want[i].size());
            for (std::uint32_t c : want[i]) CHECK(got[i].contains(P(c)));
        }
    }
}

TEST_CASE("largest_component picks the biggest piece") {
    auto big = largest_component(2, VertexSet::of(2, {0}));
    CHECK(big.size() == 3);
    CHECK_THROWS_AS(largest_component(2, VertexSet::full(2)), Error);
}

TEST_CASE("spanning_tree on a singleton") {
    VertexSet s(2);
    s.insert(P(1));
    auto tree = spanning_tree(s, P(1), 2);
    CHECK(tree.root == P(1));
    CHECK(tree.parents.empty());
    REQUIRE(tree.order.size() == 1);
    CHECK(tree.order[0] == P(1));
}

TEST_CASE("spanning_tree on the square minus one vertex") {
    VertexSet s = VertexSet::of(2, {1, 2, 3});  // 10, 01, 11
    auto tree = spanning_tree(s, P(1), 2);
    CHECK(tree.root == P(1));
    REQUIRE(tree.parents.size() == 2);
    const auto* e11 = tree.parent_of(P(3));
    REQUIRE(e11 != nullptr);
    CHECK(e11->parent == P(1));
    CHECK(e11->coord == 2);
    const auto* e01 = tree.parent_of(P(2));
    REQUIRE(e01 != nullptr);
    CHECK(e01->parent == P(3));
    CHECK(e01->coord == 1);
    // Children come before parents; root is last.
    REQUIRE(tree.order.size() == 3);
    CHECK(tree.order[0] == P(2));
    CHECK(tree.order[1] == P(3));
    CHECK(tree.order[2] == P(1));
}

TEST_CASE("spanning_tree covers the full cube with children before parents") {
    for (int n = 1; n <= 5; ++n) {
        auto tree = spanning_tree(VertexSet::full(n), P(0), n);
        std::uint32_t total = 1u << n;
        REQUIRE(tree.order.size() == total);
        CHECK(tree.parents.size() == total - 1);
        std::map<std::uint32_t, std::size_t> pos;
        for (std::size_t i = 0; i < tree.order.size(); ++i) pos[tree.order[i].code()] = i;
        for (const auto& [child_code, edge] : tree.parents) {
            CHECK(pos.at(child_code) < pos.at(edge.parent.code()));
            // Every tree edge is a cube edge along the stated coordinate.
            CHECK((child_code ^ edge.parent.code()) == (1u << (edge.coord - 1)));
        }
        CHECK(tree.order.back() == P(0));
    }
}

TEST_CASE("spanning_tree rejects a disconnected vertex set") {
    VertexSet s = VertexSet::of(2, {1, 2});  // antipodal pair
    CHECK_THROWS_AS(spanning_tree(s, P(1), 2), Error);
    VertexSet t = VertexSet::of(2, {1, 2});
    CHECK_THROWS_AS(spanning_tree(t, P(0), 2), Error);  // root not in set
}

TEST_CASE("edge_boundary counts cut edges exactly") {
    // Antipodal singletons share no edge.
    CHECK(edge_boundary(2, VertexSet::of(2, {0}), VertexSet::of(2, {3})) == 0);
    // 00 vs {01, 10}: two edges out of 00.
    CHECK(edge_boundary(2, VertexSet::of(2, {0}), VertexSet::of(2, {1, 2})) == 2);
    // Bipartition of the 3-cube by parity: every edge crosses.
    VertexSet even(3), odd(3);
    for (std::uint32_t c = 0; c < 8; ++c) {
        (std::popcount(c) % 2 == 0 ? even : odd).insert(P(c));
    }
    CHECK(edge_boundary(3, even, odd) == 12);
    // Halves split by the first coordinate: 4 parallel edges cross.
    VertexSet lo = VertexSet::of(3, {0, 2, 4, 6});
    VertexSet hi = VertexSet::of(3, {1, 3, 5, 7});
    CHECK(edge_boundary(3, lo, hi) == 4);
    VertexSet overlap = VertexSet::of(2, {0, 1});
    CHECK_THROWS_AS(edge_boundary(2, overlap, VertexSet::of(2, {1})), Error);
}

TEST_CASE("exact edge expansion of small cubes is 1") {
    for (int n = 1; n <= 4; ++n) {
        Rational h = edge_expansion_exact(n);
        CHECK(h == Rational(1));
        CHECK(h >= cheeger_lower_bound(n));
    }
    CHECK(cheeger_lower_bound(4) == make_rational(1, 4));
    CHECK_THROWS_AS(edge_expansion_exact(5), Error);
}

TEST_CASE("giant_component_holds on small removal sets") {
    CHECK(giant_component_holds(3, VertexSet(3)));
    CHECK(giant_component_holds(6, VertexSet::of(6, {0})));
    // Removing both diagonal corners of the square leaves singletons only.
    CHECK(!giant_component_holds(2, VertexSet::of(2, {0, 3})));
}
