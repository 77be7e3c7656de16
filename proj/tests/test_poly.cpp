#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gromov/errors.hpp"
#include "gromov/poly.hpp"

using namespace gromov;

namespace {

HomogPoly P(std::vector<cplx> c) { return HomogPoly(std::move(c)); }

// u^(d-j) v^j coefficients of a product of linear factors (a_i u - b_i v),
// expanded independently of the library by repeated convolution.
std::vector<cplx> expand_factors(const std::vector<std::pair<cplx, cplx>>& factors, cplx lead) {
    std::vector<cplx> c{lead};
    for (auto [a, b] : factors) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j] += a * c[j];
            next[j + 1] -= b * c[j];
        }
        c = next;
    }
    return c;
}

double max_coeff_diff(const MapTuple& s, const MapTuple& t) {
    auto fs = s.flat();
    auto ft = t.flat();
    double m = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) m = std::max(m, std::abs(fs[i] - ft[i]));
    return m;
}

cplx rand_disk(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (;;) {
        cplx z(U(rng), U(rng));
        if (std::abs(z) <= 1.0) return z;
    }
}

int total_mult(const std::vector<RootMult>& r) {
    int s = 0;
    for (const auto& x : r) s += x.multiplicity;
    return s;
}

}  // namespace

TEST_CASE("eval at normalized points") {
    CHECK(std::abs(eval(P({0, 1, 0}), P1Point(1.0, 1.0)) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(eval(P({1, 0, 0}), P1Point(0.0, 1.0))) == 0.0);
    CHECK(std::abs(eval(P({1, 0, -1}), P1Point(2.0, 1.0)) - cplx(0.75)) < 1e-15);
}

TEST_CASE("P1Point normalization and equality") {
    P1Point p(cplx(0, 4), 2.0);
    CHECK(std::max(std::abs(p.a()), std::abs(p.b())) == doctest::Approx(1.0));
    CHECK(p.equals(P1Point::affine(cplx(0, 2))));
    CHECK(P1Point(3.0, 0.0).is_infinity());
    CHECK(P1Point::infinity().preferred_chart() == 1);
    CHECK_THROWS_AS(P1Point(0.0, 0.0), Error);
}

TEST_CASE("roots of monomials and explicit factors") {
    auto r = roots(HomogPoly::monomial(4, 0));
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 4);
    CHECK(r[0].point.equals(P1Point::affine(0.0)));

    r = roots(HomogPoly::monomial(3, 3));
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 3);
    CHECK(r[0].point.is_infinity());

    // (z-1)^2 (z-2) = z^3 - 4z^2 + 5z - 2
    r = roots(P({1, -4, 5, -2}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].point.equals(P1Point::affine(1.0)));
    CHECK(r[0].multiplicity == 2);
    CHECK(r[1].point.equals(P1Point::affine(2.0)));
    CHECK(r[1].multiplicity == 1);

    CHECK_THROWS_AS(roots(HomogPoly::zero(3)), Error);
}

TEST_CASE("triple and quadruple roots are detected") {
    const cplx z0(0.3, -0.2);
    auto c = expand_factors({{1, z0}, {1, z0}, {1, z0}, {1, 0.9}}, cplx(0.7, 0.1));
    auto r = roots(P(c));
    REQUIRE(r.size() == 2);
    CHECK(total_mult(r) == 4);
    auto it = std::find_if(r.begin(), r.end(), [](const RootMult& x) { return x.multiplicity == 3; });
    REQUIRE(it != r.end());
    CHECK(it->point.equals(P1Point::affine(z0)));

    c = expand_factors({{1, 2.0}, {1, 2.0}, {1, 2.0}, {1, 2.0}}, 1.0);
    r = roots(P(c));
    REQUIRE(r.size() == 1);
    CHECK(r[0].multiplicity == 4);
    CHECK(r[0].point.equals(P1Point::affine(2.0)));
}

TEST_CASE("roots reproduce coefficients for well separated roots") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 8);
        std::vector<cplx> zs;
        while (static_cast<int>(zs.size()) < d) {
            cplx z = 2.0 * rand_disk(rng);
            bool ok = true;
            for (auto w : zs) ok = ok && std::abs(w - z) >= 1e-3;
            if (ok) zs.push_back(z);
        }
        std::vector<std::pair<cplx, cplx>> f;
        for (auto z : zs) f.push_back({1.0, z});
        const auto c = expand_factors(f, 1.0);
        const auto r = roots(P(c));
        REQUIRE(total_mult(r) == d);
        std::vector<std::pair<cplx, cplx>> g;
        for (const auto& x : r) {
            for (int k = 0; k < x.multiplicity; ++k) g.push_back({1.0, x.point.z()});
        }
        const auto c2 = expand_factors(g, 1.0);
        double cn = 0.0;
        double err = 0.0;
        for (std::size_t j = 0; j < c.size(); ++j) {
            cn = std::max(cn, std::abs(c[j]));
            err = std::max(err, std::abs(c[j] - c2[j]));
        }
        CHECK(err <= 1e-8 * cn);
    }
}

TEST_CASE("common_factor examples") {
    // [u^2(u-v), u^2(u+v), u^2 v]
    MapTuple t({P({1, -1, 0, 0}), P({1, 1, 0, 0}), P({0, 1, 0, 0})});
    auto f = common_factor(t);
    REQUIRE(f.roots.size() == 1);
    CHECK(f.roots[0].multiplicity == 2);
    CHECK(f.roots[0].point.equals(P1Point::affine(0.0)));
    MapTuple expect({P({1, -1}), P({1, 1}), P({0, 1})});
    CHECK(projectively_equal(f.residual, expect, 1e-12));

    MapTuple id({P({1, 0}), P({0, 1})});
    f = common_factor(id);
    CHECK(f.roots.empty());
    CHECK(projectively_equal(f.residual, id, 0.0));

    MapTuple t2({P({1, 0, 0, 0}), P({0, 1, 0, 0})});
    f = common_factor(t2);
    REQUIRE(f.roots.size() == 1);
    CHECK(f.roots[0].multiplicity == 2);
    CHECK(projectively_equal(f.residual, id, 1e-14));
    CHECK(f.residual.degree() == 1);
}

TEST_CASE("common_factor with a zero entry and a root at infinity") {
    // [v^2 u, 0, v^3]: common factor v^2, residual [u, 0, v]
    MapTuple t({P({0, 0, 1, 0}), HomogPoly::zero(3), P({0, 0, 0, 1})});
    auto f = common_factor(t);
    REQUIRE(f.roots.size() == 1);
    CHECK(f.roots[0].point.is_infinity());
    CHECK(f.roots[0].multiplicity == 2);
    CHECK(projectively_equal(f.residual, MapTuple({P({1, 0}), HomogPoly::zero(1), P({0, 1})}), 1e-14));
}

TEST_CASE("common_factor recovers planted factors") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const int d0 = static_cast<int>(rng() % 3);
        const int npts = 1 + static_cast<int>(rng() % 2);
        std::vector<std::pair<P1Point, int>> planted;
        int dsum = d0;
        while (static_cast<int>(planted.size()) < npts) {
            const int m = 1 + static_cast<int>(rng() % 2);
            if (dsum + m > 6) break;
            P1Point p = (rng() % 5 == 0) ? P1Point::infinity() : P1Point::affine(rand_disk(rng));
            bool sep = true;
            for (auto& q : planted) sep = sep && p.cross(q.first) > 0.2;
            if (!sep) continue;
            planted.push_back({p, m});
            dsum += m;
        }
        // random residual of degree d0, checked coprime by its own roots
        std::vector<HomogPoly> res;
        for (int i = 0; i < n; ++i) {
            std::vector<cplx> c;
            for (int j = 0; j <= d0; ++j) c.push_back(rand_disk(rng));
            res.push_back(P(c));
        }
        if (d0 > 0) {
            bool bad = false;
            for (auto& r0 : roots(res[0])) {
                double best = 1e9;
                for (auto& r1 : roots(res[1])) best = std::min(best, r0.point.cross(r1.point));
                for (auto& pl : planted) best = std::min(best, r0.point.cross(pl.first) * 10.0);
                if (best < 0.05) bad = true;
            }
            if (bad) continue;
        }
        std::vector<std::pair<cplx, cplx>> lin;
        for (auto& pl : planted) {
            for (int k = 0; k < pl.second; ++k) lin.push_back({pl.first.b(), pl.first.a()});
        }
        const HomogPoly factor(expand_factors(lin, 1.0));
        std::vector<HomogPoly> entries;
        for (auto& r : res) entries.push_back(factor * r);
        MapTuple t(entries);
        auto f = common_factor(t);
        CHECK(f.residual.degree() + total_mult(f.roots) == t.degree());
        REQUIRE(f.roots.size() == planted.size());
        for (auto& pl : planted) {
            bool found = false;
            for (auto& r : f.roots) {
                if (r.point.equals(pl.first) && r.multiplicity == pl.second) found = true;
            }
            CHECK(found);
        }
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("normalize examples and properties") {
    MapTuple a({P({2, 0}), P({0, 2})});
    CHECK(max_coeff_diff(normalize(a), MapTuple({P({1, 0}), P({0, 1})})) < 1e-15);
    MapTuple b({P({cplx(0, 1), 0}), P({0, cplx(0, 1)})});
    CHECK(max_coeff_diff(normalize(b), MapTuple({P({1, 0}), P({0, 1})})) < 1e-15);
    MapTuple c({P({3, 0, -3}), P({0, 3, 0})});
    CHECK(max_coeff_diff(normalize(c), MapTuple({P({1, 0, -1}), P({0, 1, 0})})) < 1e-15);
    CHECK_THROWS_AS(normalize(MapTuple::from_flat(2, 1, std::vector<cplx>{0, 0, 0, 1}).scaled(0.0)), Error);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<cplx> flat;
        for (int i = 0; i < 9; ++i) flat.push_back(rand_disk(rng));
        MapTuple t = MapTuple::from_flat(3, 2, flat);
        const cplx lambda = 5.0 * rand_disk(rng) + 0.01;
        const MapTuple nt = normalize(t);
        CHECK(max_coeff_diff(normalize(nt), nt) < 1e-15);
        CHECK(max_coeff_diff(normalize(t.scaled(lambda)), nt) < 1e-13);
        CHECK(nt.sup_norm() == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("substitute_affine examples") {
    MapTuple id({P({1, 0}), P({0, 1})});
    auto s = substitute_affine(id, 1.0, 2.0);
    CHECK(projectively_equal(s, MapTuple({P({2, 1}), P({0, 1})}), 1e-15));

    MapTuple t({P({1, 0, 0}), P({0, 1, 0})});
    CHECK(max_coeff_diff(substitute_affine(t, 0.0, 1.0), normalize(t)) < 1e-15);

    const double k = 10.0;
    MapTuple fk({P({1, 0, -1 / (k * k)}), P({0, 1, 0})});
    s = substitute_affine(fk, 0.0, 1 / (k * k));
    CHECK(projectively_equal(s, MapTuple({P({1 / (k * k), 0, -1}), P({0, 1, 0})}), 1e-14));

    CHECK_THROWS_AS(substitute_affine(id, 1.0, 0.0), Error);
}

TEST_CASE("substitute_affine inverse round trip") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 4);
        std::vector<cplx> flat;
        for (int i = 0; i < 2 * (d + 1); ++i) flat.push_back(rand_disk(rng));
        MapTuple t = MapTuple::from_flat(2, d, flat);
        const cplx a = rand_disk(rng);
        const cplx b = rand_disk(rng) + cplx(1.5, 0);
        auto back = substitute_affine(substitute_affine(t, a, b), -a / b, 1.0 / b);
        CHECK(max_coeff_diff(back, normalize(t)) < 1e-12);
    }
}

TEST_CASE("local_order") {
    RationalCurve id(MapTuple({P({1, 0}), P({0, 1})}));
    CHECK(local_order(id, P1Point::affine(0.3)) == 1);
    CHECK(local_order(id, P1Point::infinity()) == 1);

    RationalCurve sq(MapTuple({P({1, 0, 0}), P({0, 0, 1})}));
    CHECK(local_order(sq, P1Point::affine(0.0)) == 2);
    CHECK(local_order(sq, P1Point::infinity()) == 2);
    CHECK(local_order(sq, P1Point::affine(0.5)) == 1);

    RationalCurve cst(MapTuple({P({1}), P({cplx(2, 1)})}));
    CHECK(local_order(cst, P1Point::affine(0.0)) == 0);
}

TEST_CASE("preimages") {
    RationalCurve sq(MapTuple({P({1, 0, 0}), P({0, 0, 1})}));
    std::vector<cplx> x0{0.0, 1.0};
    auto pre = preimages(sq, x0);
    REQUIRE(pre.size() == 1);
    CHECK(pre[0].multiplicity == 2);
    CHECK(pre[0].point.equals(P1Point::affine(0.0)));

    std::vector<cplx> x1{1.0, 1.0};
    pre = preimages(sq, x1);
    REQUIRE(pre.size() == 2);
    CHECK(pre[0].point.equals(P1Point::affine(-1.0)));
    CHECK(pre[1].point.equals(P1Point::affine(1.0)));

    RationalCurve id(MapTuple({P({1, 0}), P({0, 1})}));
    std::vector<cplx> x2{cplx(0.2, 0.7), 1.0};
    pre = preimages(id, x2);
    REQUIRE(pre.size() == 1);
    CHECK(pre[0].multiplicity == 1);

    RationalCurve cst(MapTuple({P({1}), P({2})}));
    CHECK_THROWS_AS(preimages(cst, x2), Error);
}

TEST_CASE("preimage orders sum to the degree") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 4);
        const int n = 2 + static_cast<int>(rng() % 2);
        std::vector<cplx> flat;
        for (int i = 0; i < n * (d + 1); ++i) flat.push_back(rand_disk(rng));
        RationalCurve c(MapTuple::from_flat(n, d, flat));
        std::vector<cplx> x;
        for (int i = 0; i < n; ++i) x.push_back(rand_disk(rng));
        const auto pre = preimages(c, x);
        int sum_orders = 0;
        for (const auto& p : pre) sum_orders += local_order(c, p.point);
        if (n == 2) {
            CHECK(total_mult(pre) == d);
        } else {
            CHECK(total_mult(pre) == 0);
        }
        CHECK(sum_orders == total_mult(pre));
        // image of a random domain point has d preimages generically
        const P1Point z0 = P1Point::affine(rand_disk(rng));
        const auto pre2 = preimages(c, c(z0));
        int s2 = 0;
        for (const auto& p : pre2) s2 += local_order(c, p.point);
        CHECK(total_mult(pre2) >= 1);
        CHECK(s2 == total_mult(pre2));
    }
}

TEST_CASE("RationalCurve rejects shared roots") {
    CHECK_THROWS_AS(RationalCurve(MapTuple({P({1, 0}), P({1, 0})})), Error);
    CHECK_NOTHROW(RationalCurve(MapTuple({P({1, 0, 0}), P({0, 1, 1})})));
}
