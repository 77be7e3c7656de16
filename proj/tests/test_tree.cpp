#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "gromov/errors.hpp"
#include "gromov/tree.hpp"

using namespace gromov;

namespace {

bool has_axiom(const std::vector<Violation>& v, const std::string& axiom) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.axiom == axiom; });
}

// Uniform attachment: element k picks a parent among 0..k-1 and a fresh point.
SphereTree random_tree(std::mt19937_64& rng, int size) {
    SphereTree t;
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int k = 0; k < size; ++k) {
        t.order.elements.push_back(k);
        if (k == 0) continue;
        const int parent = static_cast<int>(rng() % static_cast<unsigned>(k));
        t.order.preds[k] = {parent};
        t.attach[k] = P1Point::affine(cplx(U(rng), U(rng)) * 0.99 + cplx(0.0, 0.001 * k));
    }
    return t;
}

}  // namespace

TEST_CASE("validate examples") {
    SphereTree single;
    single.order.elements = {7};
    CHECK(validate(single).empty());

    SphereTree dup;
    dup.order.elements = {0, 1, 2};
    dup.order.preds = {{1, {0}}, {2, {0}}};
    dup.attach = {{1, P1Point::affine(0.5)}, {2, P1Point::affine(0.5 + 1e-9)}};
    const auto v = validate(dup);
    REQUIRE(v.size() == 1);
    CHECK(v[0].axiom == "injectivity");
    CHECK(v[0].witnesses == std::vector<int>{1, 2});

    SphereTree two_roots;
    two_roots.order.elements = {0, 1};
    CHECK(has_axiom(validate(two_roots), "RS1"));
}

TEST_CASE("same point on different parents is allowed") {
    SphereTree t;
    t.order.elements = {0, 1, 2};
    t.order.preds = {{1, {0}}, {2, {1}}};
    t.attach = {{1, P1Point::affine(0.0)}, {2, P1Point::affine(0.0)}};
    CHECK(validate(t).empty());
    t.attach[2] = P1Point::infinity();
    CHECK(has_axiom(validate(t), "attachment"));
    t.attach[2] = P1Point::affine(0.0);
    t.attach[1] = P1Point::infinity();
    CHECK(validate(t).empty());
}

TEST_CASE("cycles and incomparable predecessors") {
    SphereTree cyc;
    cyc.order.elements = {0, 1, 2};
    cyc.order.preds = {{1, {0, 2}}, {2, {1}}};
    cyc.attach = {{1, P1Point::affine(0.1)}, {2, P1Point::affine(0.2)}};
    CHECK(has_axiom(validate(cyc), "order"));

    SphereTree diamond;
    diamond.order.elements = {0, 1, 2, 3};
    diamond.order.preds = {{1, {0}}, {2, {0}}, {3, {1, 2}}};
    CHECK(has_axiom(validate(diamond.order), "RS2"));
    CHECK_THROWS_AS(predecessor(diamond.order, 3), Error);
}

TEST_CASE("predecessor") {
    RootedOrder chain{{0, 1, 2}, {{1, {0}}, {2, {1}}}};
    CHECK(predecessor(chain, 2) == 1);
    CHECK(predecessor(chain, 1) == 0);
    try {
        predecessor(chain, 0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::RootHasNoPredecessor);
    }

    RootedOrder star{{0, 1, 2, 3}, {{1, {0}}, {2, {0}}, {3, {0}}}};
    for (int leaf : {1, 2, 3}) CHECK(predecessor(star, leaf) == 0);

    // redundant transitive relation listed explicitly: 3 > 2 > 1 > 0 with 0 also listed for 3
    RootedOrder deep{{0, 1, 2, 3}, {{1, {0}}, {2, {1}}, {3, {2, 0}}}};
    CHECK(validate(deep).empty());
    CHECK(predecessor(deep, 3) == 2);

    // the drawn shape: root with two children, one of which has two children of its own
    RootedOrder fig{{0, 1, 2, 3, 4, 5}, {{1, {0}}, {2, {0}}, {3, {1}}, {4, {1}}, {5, {4}}}};
    CHECK(predecessor(fig, 5) == 4);
    CHECK(predecessor(fig, 4) == 1);
    CHECK(children(fig, 1) == std::vector<int>{3, 4});
}

TEST_CASE("arithmetic genus") {
    CHECK(arithmetic_genus(NodalConfig{{0}, {}}) == 0);
    NodalConfig two{{0, 0},
                    {{Branch{0, P1Point::affine(0.0)}, Branch{1, P1Point::affine(0.0)}},
                     {Branch{0, P1Point::affine(1.0)}, Branch{1, P1Point::affine(1.0)}}}};
    CHECK(arithmetic_genus(two) == 1);
    NodalConfig bad{{0, 0, 0},
                    {{Branch{0, P1Point::affine(0.0)}, Branch{1, P1Point::affine(0.0)}},
                     {Branch{0, P1Point::affine(0.0)}, Branch{2, P1Point::affine(0.0)}}}};
    CHECK_THROWS_AS(arithmetic_genus(bad), Error);
}

TEST_CASE("random trees are valid, genus zero, and mutations are rejected") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const int size = 2 + static_cast<int>(rng() % 7);
        SphereTree t = random_tree(rng, size);
        REQUIRE(validate(t).empty());
        CHECK(arithmetic_genus(nodal_config(t)) == 0);

        // predecessor and children agree on every edge
        for (int i : t.order.elements) {
            for (int ch : children(t.order, i)) CHECK(predecessor(t.order, ch) == i);
            if (i != 0) {
                const auto sib = children(t.order, predecessor(t.order, i));
                CHECK(std::count(sib.begin(), sib.end(), i) == 1);
            }
        }

        // root removal: the former root's children become minimal
        SphereTree no_root = t;
        no_root.order.elements.erase(no_root.order.elements.begin());
        for (auto& [i, ps] : no_root.order.preds) ps.erase(std::remove(ps.begin(), ps.end(), 0), ps.end());
        for (auto it = no_root.order.preds.begin(); it != no_root.order.preds.end();) {
            it = it->second.empty() ? no_root.order.preds.erase(it) : std::next(it);
        }
        if (children(t.order, 0).size() > 1) CHECK(has_axiom(validate(no_root), "RS1"));

        // duplicated attachment: copy a sibling's point
        for (int i : t.order.elements) {
            const auto ch = children(t.order, i);
            if (ch.size() >= 2) {
                SphereTree dup = t;
                dup.attach[ch[1]] = dup.attach[ch[0]];
                CHECK(has_axiom(validate(dup), "injectivity"));
                break;
            }
        }

        // incomparable predecessors: give a node a second parent off its own branch
        for (int i = 1; i < size; ++i) {
            const int p = predecessor(t.order, i);
            for (int j = 1; j < size; ++j) {
                if (j == i || precedes(t.order, j, i) || precedes(t.order, i, j) || j == p) continue;
                if (precedes(t.order, p, j) || precedes(t.order, j, p)) continue;
                SphereTree bad = t;
                bad.order.preds[i].push_back(j);
                CHECK(has_axiom(validate(bad), "RS2"));
                i = size;
                break;
            }
        }
    }
}

TEST_CASE("stability classifier") {
    auto chain = [](int k) {
        DecoratedTree t;
        for (int i = 0; i < k; ++i) {
            t.tree.order.elements.push_back(i);
            if (i > 0) {
                t.tree.order.preds[i] = {i - 1};
                t.tree.attach[i] = P1Point::affine(0.0);
            }
        }
        return t;
    };
    DecoratedTree t = chain(3);
    t.decor = {{0, {1, 0}}, {1, {0, 0}}, {2, {1, 0}}};
    auto s = stability_check(t);
    CHECK_FALSE(s.stable);
    CHECK(s.offenders == std::vector<int>{1});

    t.decor = {{0, {1, 0}}, {1, {2, 0}}, {2, {1, 0}}};
    CHECK(stability_check(t).stable);

    t.decor = {{0, {1, 0}}, {1, {0, 1}}, {2, {1, 0}}};
    s = stability_check(t);
    CHECK(s.stable);
    CHECK(special_point_count(t, 1) == 3);

    DecoratedTree lone = chain(1);
    lone.decor = {{0, {0, 2}}};
    CHECK(stability_check(lone).offenders == std::vector<int>{0});
}
