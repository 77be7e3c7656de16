#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gromov/bubble.hpp"
#include "gromov/corpus.hpp"
#include "gromov/errors.hpp"

using namespace gromov;

namespace {

MapTuple tuple(std::vector<std::vector<cplx>> polys) {
    std::vector<HomogPoly> ps;
    for (auto& p : polys) ps.emplace_back(std::move(p));
    return MapTuple(std::move(ps));
}

// [u^2 - k^-2 v^2, uv]
CurveFamily simple_family(std::vector<double> ks = {1e2, 1e3, 1e4}) {
    CurveFamily f{2, 2, {}, std::nullopt};
    for (double k : ks) f.samples.push_back({k, tuple({{1.0, 0.0, -1.0 / (k * k)}, {0.0, 1.0, 0.0}})});
    return f;
}

// [u(u - v/k)(u + v/k), v(u - 2v/k)(u + 2v/k)]
CurveFamily double_family(std::vector<double> ks = {1e2, 1e3, 1e4}) {
    CurveFamily f{2, 3, {}, std::nullopt};
    for (double k : ks) {
        f.samples.push_back({k, tuple({{1.0, 0.0, -1.0 / (k * k), 0.0}, {0.0, 1.0, 0.0, -4.0 / (k * k)}})});
    }
    return f;
}

double max_diff(const MapTuple& a, const MapTuple& b) {
    const auto x = a.flat();
    const auto y = b.flat();
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

}  // namespace

TEST_CASE("limit tuple") {
    CHECK(max_diff(limit_tuple(simple_family({10, 1e2, 1e3, 1e4})), tuple({{1, 0, 0}, {0, 1, 0}})) < 1e-6);

    CurveFamily decl = simple_family();
    decl.declared_limit = tuple({{2, 0}, {0, 4}});
    CHECK(max_diff(limit_tuple(decl), normalize(tuple({{2, 0}, {0, 4}}))) == 0.0);

    CurveFamily alt{2, 1, {}, std::nullopt};
    for (int i = 0; i < 4; ++i) {
        alt.samples.push_back({std::pow(10.0, i + 1), i % 2 ? tuple({{0, 1}, {1, 0}}) : tuple({{1, 0}, {0, 1}})});
    }
    try {
        limit_tuple(alt);
        FAIL("expected NoConvergence");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoConvergence);
    }

    // projectively rescaled samples have the same limit
    CurveFamily scaled = simple_family();
    for (std::size_t i = 0; i < scaled.samples.size(); ++i) {
        scaled.samples[i].tuple = scaled.samples[i].tuple.scaled(std::polar(3.0 + i, 0.7 * i));
    }
    CHECK(projectively_equal(limit_tuple(scaled), tuple({{1, 0, 0}, {0, 1, 0}}), 1e-9));
}

TEST_CASE("family validation") {
    CurveFamily f = simple_family();
    CHECK_NOTHROW(f.validate());
    std::swap(f.samples[0], f.samples[1]);
    CHECK_THROWS_AS(f.validate(), Error);
    CurveFamily two = simple_family({1e2, 1e3});
    CHECK_THROWS_AS(two.validate(), Error);
    two.declared_limit = tuple({{1, 0, 0}, {0, 1, 0}});
    CHECK_NOTHROW(two.validate());
}

TEST_CASE("bubble points") {
    const auto bp = bubble_points(simple_family());
    REQUIRE(bp.bubbles.size() == 1);
    CHECK(bp.bubbles[0].point.equals(P1Point::affine(0.0)));
    CHECK(bp.bubbles[0].algebraic_mult == 1);
    CHECK(bp.residual.degree() == 1);
    CHECK(projectively_equal(bp.residual.tuple(), tuple({{1, 0}, {0, 1}}), 1e-9));

    CurveFamily constant{2, 1, {}, std::nullopt};
    for (double k : {1.0, 2.0, 3.0}) constant.samples.push_back({k, tuple({{1, 2}, {3, -1}})});
    const auto cb = bubble_points(constant);
    CHECK(cb.bubbles.empty());
    CHECK(projectively_equal(cb.residual.tuple(), tuple({{1, 2}, {3, -1}}), 1e-12));

    const auto db = bubble_points(double_family());
    REQUIRE(db.bubbles.size() == 1);
    CHECK(db.bubbles[0].algebraic_mult == 2);
}

TEST_CASE("planted families recover their points") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const auto pf = planted_family(rng);
        const auto bp = bubble_points(pf.family);
        REQUIRE(bp.bubbles.size() == pf.planted.size());
        int total = 0;
        for (const auto& p : pf.planted) {
            bool found = false;
            for (const auto& b : bp.bubbles) {
                if (b.point.equals(p.point)) {
                    found = true;
                    CHECK(b.algebraic_mult == p.multiplicity);
                }
            }
            CHECK(found);
            total += p.multiplicity;
        }
        CHECK(bp.residual.degree() + total == pf.family.d);
    }
}

TEST_CASE("mass profile") {
    const double deltas[] = {0.2, 0.1, 0.05};
    const auto mp = mass_profile(simple_family(), P1Point::affine(0.0), deltas, 1e-8);
    CHECK(mp.estimate == doctest::Approx(1.0).epsilon(0.02));
    CHECK(mp.table.size() == 3);
    CHECK(mp.table[0].size() == 3);

    const auto dp = mass_profile(double_family(), P1Point::affine(0.0), deltas, 1e-8);
    CHECK(std::abs(dp.estimate - 2.0) <= 0.04);

    const auto np = mass_profile(simple_family(), P1Point::affine(0.7), deltas, 1e-8);
    CHECK(std::abs(np.estimate) <= 1e-3);

    const double bad[] = {0.1, 0.2};
    CHECK_THROWS_AS(mass_profile(simple_family(), P1Point::affine(0.0), bad, 1e-8), Error);
}

TEST_CASE("delta for mass") {
    const RationalCurve id(tuple({{1, 0}, {0, 1}}));
    CHECK(delta_for_mass(id, 0.0, 0.5, 1e-12) == doctest::Approx(1.0).epsilon(1e-8));
    // E(B_delta) = delta^2/(1 + delta^2)
    CHECK(delta_for_mass(id, 0.0, 0.2, 1e-12) == doctest::Approx(0.5).epsilon(1e-8));
    const RationalCurve sq(tuple({{1, 0, 0}, {0, 0, 1}}));
    CHECK(delta_for_mass(sq, 0.0, 1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(delta_for_mass(sq, 0.0, 1.0, 1e-12, DeltaOptions{1e-10, 1e-4}) == doctest::Approx(1.0).epsilon(1e-8));

    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidArgument;
    };
    CHECK(kind_of([&] { delta_for_mass(id, 0.0, 1.0, 1e-12); }) == ErrorKind::NoSolution);
    CHECK(kind_of([&] { delta_for_mass(id, 0.0, 1.5, 1e-12); }) == ErrorKind::NoSolution);
    const RationalCurve constant(tuple({{1}, {2}}));
    CHECK(kind_of([&] { delta_for_mass(constant, 0.0, 0.5, 1e-12); }) == ErrorKind::NoSolution);
}

TEST_CASE("rescaled family") {
    const CurveFamily f = simple_family();
    RescaleStep same{{0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, 0.5, 0};
    const auto g = rescaled_family(f, same);
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        CHECK(projectively_equal(g.samples[i].tuple, f.samples[i].tuple, 1e-14));
    }

    RescaleStep bubble;
    for (const auto& s : f.samples) {
        bubble.centers.push_back(0.0);
        bubble.scales.push_back(1.0 / (s.k * s.k));
    }
    const auto r = rescaled_family(f, bubble);
    // limit [-w_v^2, w_u w_v], residual after the factor at infinity [-w_v, w_u]
    CHECK(projectively_equal(limit_tuple(r), tuple({{0, 0, -1}, {0, 1, 0}}), 1e-9));
    const auto bp = bubble_points(r);
    REQUIRE(bp.bubbles.size() == 1);
    CHECK(bp.bubbles[0].point.is_infinity());
    CHECK(projectively_equal(bp.residual.tuple(), tuple({{0, -1}, {1, 0}}), 1e-9));

    RescaleStep zero = bubble;
    zero.scales[1] = 0.0;
    try {
        rescaled_family(f, zero);
        FAIL("expected ZeroScale");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroScale);
    }
}

TEST_CASE("conformal invariance of energy under rescaling") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        CurveFamily f{2, 3, {}, std::nullopt};
        const MapTuple t = random_coprime_tuple(rng, 2, 3);
        f.samples = {{1.0, t}, {2.0, t}, {3.0, t}};
        const cplx z0 = 0.5 * disk_uniform(rng);
        const double s = 0.05 + unit_uniform(rng);
        RescaleStep step{{z0, z0, z0}, {s, s, s}, 0.5, 0};
        const auto g = rescaled_family(f, step);
        const double tol = 1e-9;
        const double a = energy(RationalCurve(t), Disk{z0, s, 0}, tol).value;
        const double b = energy(RationalCurve(g.samples[0].tuple), Disk{0.0, 1.0, 0}, tol).value;
        CHECK(std::abs(a - b) <= 2 * tol);
    }
}

TEST_CASE("bubble tree of the simple family") {
    const auto t = build_bubble_tree(simple_family());
    REQUIRE(t.components.size() == 2);
    CHECK(projectively_equal(t.components[0].map.tuple(), tuple({{1, 0}, {0, 1}}), 1e-8));
    CHECK(t.components[1].parent == 0);
    CHECK(t.components[1].attach.equals(P1Point::affine(0.0)));
    // w -> -1/w
    CHECK(projectively_equal(t.components[1].map.tuple(), tuple({{0, -1}, {1, 0}}), 1e-6));
    CHECK(t.degree_ok());
    CHECK(t.degree_sum == 2);
    CHECK(std::abs(t.energy_sum - 2.0) <= 1e-5);
    CHECK(t.energy_ok());
    CHECK(t.gaps_ok(1e-3));
    CHECK(t.masses_ok());
    CHECK(t.stable_ok());
    CHECK(validate(t.tree).empty());
}

TEST_CASE("bubble tree of the double family") {
    const auto t = build_bubble_tree(double_family({1e2, 1e3, 1e4, 1e5}));
    CHECK(t.degree_sum == 3);
    CHECK(t.energy_ok());
    CHECK(t.gaps_ok(1e-3));
    CHECK(t.masses_ok());
    CHECK(validate(t.tree).empty());
    REQUIRE(t.components.size() >= 2);
    CHECK(t.components[1].mass == 2);
}

TEST_CASE("constant family has a single component") {
    CurveFamily f{2, 2, {}, std::nullopt};
    for (double k : {1.0, 2.0, 3.0}) f.samples.push_back({k, tuple({{1, 0, 1}, {0, 1, 0}})});
    const auto t = build_bubble_tree(f);
    CHECK(t.components.size() == 1);
    CHECK(t.degree_sum == 2);
    CHECK(t.energy_ok());
}

TEST_CASE("bubble trees of planted families conserve degree") {
    std::mt19937_64 rng(3);
    BubbleConfig cfg;
    cfg.check_masses = false;
    for (int trial = 0; trial < 8; ++trial) {
        const auto pf = planted_family(rng);
        const auto t = build_bubble_tree(pf.family, cfg);
        CHECK(t.degree_sum == pf.family.d);
        CHECK(t.gaps_ok(1e-3));
        CHECK(validate(t.tree).empty());
    }
}
