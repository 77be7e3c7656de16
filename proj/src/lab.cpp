#include "gromov/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "gromov/errors.hpp"

namespace gromov {

namespace {

constexpr double kPi = std::numbers::pi;

/// Two-sided 95% Student quantiles for 1..10 degrees of freedom.
double t_quantile(int dof) {
    static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228};
    if (dof < 1) return std::numeric_limits<double>::infinity();
    return dof <= 10 ? table[dof - 1] : 1.96;
}

void set_fit(FitReport& r, std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2) return;
    const LineFit f = fit_line(x, y);
    r.fit = f;
    const double q = t_quantile(static_cast<int>(x.size()) - 2) * f.slope_stderr;
    r.slope_low = f.slope - q;
    r.slope_high = f.slope + q;
}

void check_decreasing(std::span<const double> deltas) {
    if (deltas.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one radius");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1])) throw Error(ErrorKind::InvalidArgument, "radii must decrease");
    }
}

/// Energy to a relative accuracy, for values that may be far below 1.
double relative_energy(const RationalCurve& c, const Region& region, double rel) {
    const double rough = energy(c, region, 1e-6).value;
    return energy(c, region, std::max(rel * std::abs(rough), 1e-300)).value;
}

/// c(s z)
RationalCurve shrink(const RationalCurve& c, double s) {
    return RationalCurve::unchecked(substitute_affine(c.tuple(), 0.0, s));
}

/// Largest s in {1, 1/2, 1/4, ...} meeting the predicate.
double shrink_until(const RationalCurve& c, const auto& ok) {
    double s = 1.0;
    for (int i = 0; i < 80; ++i, s *= 0.5) {
        if (ok(shrink(c, s))) return s;
    }
    throw Error(ErrorKind::NoSolution, "no shrinking meets the precondition");
}

/// Radius of the region {fs_distance(c(p + r e^{i t}), x) <= rho} along one ray.
double ray_exit(const RationalCurve& local, std::span<const cplx> x, double rho, double theta) {
    const cplx dir = std::polar(1.0, theta);
    auto outside = [&](double r) { return fs_distance(local(P1Point::affine(r * dir)), x) > rho; };
    double lo = 0.0;
    double hi = 1e-8;
    while (!outside(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) throw Error(ErrorKind::NoSolution, "preimage region is unbounded along a ray");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (outside(mid) ? hi : lo) = mid;
    }
    return 0.5 * (lo + hi);
}

double star_energy(const RationalCurve& local, std::span<const cplx> x, double rho) {
    const ChartMap map(local, 0);
    const GaussRule& gl = gauss_legendre(24);
    auto slice = [&](double theta) {
        const double R = ray_exit(local, x, rho, theta);
        const cplx dir = std::polar(1.0, theta);
        double s = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = 0.5 * (gl.nodes[i] + 1.0);
            s += 0.5 * gl.weights[i] * map.density(u * R * dir) * u;
        }
        return s * R * R;
    };
    std::vector<double> vals;
    int N = 32;
    for (int j = 0; j < N; ++j) vals.push_back(slice(0.3 + 2.0 * kPi * j / N));
    auto sum = [&]() {
        NeumaierSum acc;
        for (double v : vals) acc.add(v);
        return acc.value() * 2.0 * kPi / static_cast<double>(vals.size());
    };
    double prev = sum();
    for (;;) {
        if (N >= (1 << 16)) throw Error(ErrorKind::QuadratureBudgetExceeded, "angular refinement did not settle");
        std::vector<double> merged;
        for (int j = 0; j < N; ++j) {
            merged.push_back(vals[static_cast<std::size_t>(j)]);
            merged.push_back(slice(0.3 + 2.0 * kPi * (j + 0.5) / N));
        }
        vals = std::move(merged);
        N *= 2;
        const double cur = sum();
        if (std::abs(cur - prev) <= 1e-11 * std::abs(cur) + 1e-300) return cur;
        prev = cur;
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

bool FitReport::pass() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

double mean_value_ratio(const RationalCurve& c, double R, double tol) {
    if (!(R > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
    if (c.is_constant()) return 0.0;
    const double rho0 = energy_density(c, 0.0, 0);
    const double E = energy(c, Disk{0.0, R, 0}, tol).value;
    if (!(E > 0.0)) return 0.0;
    return 2.0 * rho0 * kPi * R * R / (16.0 * E);
}

FitReport mean_value_report(const Corpus& corpus, double R, double energy_cap) {
    if (!(R > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
    FitReport rep;
    rep.check = "mean_value";
    rep.columns = {"index", "scale", "energy", "ratio"};
    double worst = 0.0;
    int counted = 0;
    const auto curves = corpus.curves();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double s = shrink_until(curves[i], [&](const RationalCurve& c) {
            return energy(c, Disk{0.0, R, 0}, 1e-8).value <= energy_cap;
        });
        const RationalCurve c = shrink(curves[i], s);
        const double E = energy(c, Disk{0.0, R, 0}, 1e-12).value;
        const double ratio = mean_value_ratio(c, R, 1e-12);
        rep.rows.push_back({static_cast<double>(i), s, E, ratio});
        if (E <= energy_cap) {
            worst = std::max(worst, ratio);
            ++counted;
        }
    }
    rep.assertions.push_back({"max ratio over curves with E <= cap", worst, 1.0, worst <= 1.0});
    rep.notes.push_back(std::to_string(counted) + " curves within the energy cap");
    return rep;
}

int target_order(const RationalCurve& c, std::span<const cplx> x) {
    int total = 0;
    for (const auto& p : preimages(c, x)) total += p.multiplicity;
    return total;
}

double order_limit_radius(const RationalCurve& c, std::span<const cplx> x) {
    const auto pre = preimages(c, x);
    double delta = 1e-2;
    for (const auto& p : pre) {
        if (p.multiplicity > 1) continue;
        const int chart = p.point.preferred_chart();
        const cplx zp = p.point.chart_coord(chart);
        double sep = 2.0;
        for (const auto& q : pre) {
            if (&q == &p || q.point.preferred_chart() != chart) continue;
            sep = std::min(sep, std::abs(q.point.chart_coord(chart) - zp));
        }
        // a ball of energy radius delta pulls back to radius about delta / sqrt(rho)
        delta = std::min(delta, 0.1 * sep * std::sqrt(energy_density(c, zp, chart)));
    }
    return delta;
}

double preimage_ball_energy(const RationalCurve& c, std::span<const cplx> x, double delta) {
    if (!(delta > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
    const double rho = std::sqrt(kPi) * delta;
    if (rho >= kPi / 4.0) throw Error(ErrorKind::InvalidArgument, "ball too large for star-shaped preimages");
    NeumaierSum total;
    const auto pre = preimages(c, x);
    for (const auto& p : pre) {
        const int chart = p.point.preferred_chart();
        const MapTuple& t = chart == 0 ? c.tuple() : c.tuple().swapped();
        const cplx zp = p.point.chart_coord(chart);
        const auto local = RationalCurve::unchecked(substitute_affine(t, zp, 1.0));
        for (const auto& q : pre) {
            if (&q == &p || (chart == 1 && q.point.b() == 0.0) || (chart == 0 && q.point.is_infinity())) continue;
            const cplx dq = q.point.chart_coord(chart) - zp;
            if (ray_exit(local, x, rho, std::arg(dq)) >= std::abs(dq))
                throw Error(ErrorKind::InvalidArgument, "preimage neighbourhoods overlap; use a smaller radius");
        }
        total.add(star_energy(local, x, rho));
    }
    return total.value();
}

FitReport order_limit_check(const RationalCurve& c, std::span<const cplx> x, std::span<const double> deltas) {
    if (c.is_constant()) throw Error(ErrorKind::ConstantCurve, "order limit of a constant curve");
    check_decreasing(deltas);
    const int ord = target_order(c, x);
    FitReport rep;
    rep.check = "order_limit";
    rep.columns = {"delta", "energy", "ratio"};
    for (double d : deltas) {
        const double E = preimage_ball_energy(c, x, d);
        rep.rows.push_back({d, E, E / (kPi * d * d)});
    }
    const double last = rep.rows.back()[2];
    const double rel = ord > 0 ? std::abs(last - ord) / ord : std::abs(last);
    rep.assertions.push_back({"ratio at smallest delta within 5% of ord", rel, 0.05, rel <= 0.05});
    rep.notes.push_back("ord = " + std::to_string(ord));
    return rep;
}

FitReport monotonicity_profile(const RationalCurve& c, std::span<const cplx> x, std::span<const double> deltas) {
    if (c.is_constant()) throw Error(ErrorKind::ConstantCurve, "monotonicity profile of a constant curve");
    check_decreasing(deltas);
    const int ord = target_order(c, x);
    FitReport rep;
    rep.check = "monotonicity";
    rep.columns = {"delta", "energy", "ratio"};
    std::vector<double> d2;
    std::vector<double> logr;
    for (double d : deltas) {
        const double E = preimage_ball_energy(c, x, d);
        const double R = E / (kPi * d * d);
        rep.rows.push_back({d, E, R});
        if (R > 0.0) {
            d2.push_back(d * d);
            logr.push_back(std::log(R));
        }
    }
    set_fit(rep, d2, logr);
    const double last = rep.rows.back()[2];
    rep.assertions.push_back({"ratio at smallest delta >= 0.95 ord", last, 0.95 * ord, last >= 0.95 * ord});
    if (rep.fit) {
        const double C = -rep.fit->slope;
        rep.columns.push_back("weighted");
        bool monotone = true;
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            const double d = rep.rows[i][0];
            rep.rows[i].push_back(rep.rows[i][2] * std::exp(C * d * d));
            if (i > 0) monotone = monotone && rep.rows[i][3] <= rep.rows[i - 1][3] * (1.0 + 1e-9);
        }
        rep.notes.push_back("fitted C = " + fmt(C));
        rep.notes.push_back(std::string("weighted ratio nondecreasing in delta: ") + (monotone ? "yes" : "no"));
    }
    return rep;
}

FitReport cylinder_decay_fit(const RationalCurve& c, cplx center, double r_in, double r_out,
                             std::span<const double> T_values, std::optional<std::pair<double, double>> slope_window) {
    if (!(r_in > 0.0) || !(r_out > r_in)) throw Error(ErrorKind::InvalidArgument, "need 0 < r_in < r_out");
    if (T_values.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one depth");
    for (double T : T_values) {
        if (!(T >= 0.0) || !(r_in * std::exp(T) < r_out * std::exp(-T))) {
            throw Error(ErrorKind::InvalidArgument, "depth leaves an empty middle annulus");
        }
    }
    const Annulus whole{center, r_in, r_out, 0};
    const double diam = image_diameter(c, whole, 512);
    if (diam > 0.2) throw Error(ErrorKind::ImageTooLarge, "image diameter " + fmt(diam) + " exceeds 0.2");
    FitReport rep;
    rep.check = "cylinder_decay";
    rep.columns = {"T", "energy"};
    std::vector<double> ts;
    std::vector<double> logs;
    for (double T : T_values) {
        const double E = c.is_constant() ? 0.0
                                         : relative_energy(c, Annulus{center, r_in * std::exp(T), r_out * std::exp(-T), 0},
                                                           1e-9);
        rep.rows.push_back({T, E});
        if (E > 0.0) {
            ts.push_back(T);
            logs.push_back(std::log(E));
        }
    }
    if (ts.size() < 2) {
        rep.notes.push_back("energies vanish; nothing to fit");
        return rep;
    }
    set_fit(rep, ts, logs);
    const double slope = rep.fit->slope;
    rep.assertions.push_back({"slope <= -0.9", slope, -0.9, slope <= -0.9});
    if (slope_window) {
        const bool in = slope >= slope_window->first && slope <= slope_window->second;
        rep.assertions.push_back({"slope in [" + fmt(slope_window->first) + ", " + fmt(slope_window->second) + "]",
                                  slope, slope_window->second, in});
    }
    return rep;
}

FitReport isoperimetric_report(const RationalCurve& c, cplx center, std::span<const double> radii) {
    if (radii.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one radius");
    if (c.is_constant()) throw Error(ErrorKind::InvalidArgument, "boundary length of a constant curve is zero");
    double rmax = 0.0;
    for (double r : radii) {
        if (!(r > 0.0)) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
        rmax = std::max(rmax, r);
    }
    const double diam = image_diameter(c, Disk{center, rmax, 0}, 512);
    if (diam > 0.2) throw Error(ErrorKind::ImageTooLarge, "image diameter " + fmt(diam) + " exceeds 0.2");
    FitReport rep;
    rep.check = "isoperimetric";
    rep.columns = {"r", "energy", "length", "ratio"};
    const double bound = 1.1 / (4.0 * kPi);
    double worst = 0.0;
    for (double r : radii) {
        const double E = relative_energy(c, Disk{center, r, 0}, 1e-11);
        const double len = boundary_length(c, Circle{center, r, 0}) / std::sqrt(kPi);
        if (!(len > 0.0)) throw Error(ErrorKind::InvalidArgument, "boundary length vanishes");
        const double ratio = E / (len * len);
        rep.rows.push_back({r, E, len, ratio});
        if (r <= 0.1) worst = std::max(worst, ratio);
    }
    rep.assertions.push_back({"max ratio for r <= 0.1", worst, bound, worst <= bound});
    return rep;
}

FitReport poincare_check(std::span<const cplx> coeffs) {
    if (coeffs.size() < 3 || coeffs.size() % 2 == 0) {
        throw Error(ErrorKind::InvalidArgument, "need coefficients for k = -K..K with K >= 1");
    }
    const int K = static_cast<int>(coeffs.size() / 2);
    double scale = 0.0;
    for (const cplx& a : coeffs) scale = std::max(scale, std::abs(a));
    if (std::abs(coeffs[static_cast<std::size_t>(K)]) > 1e-14 * std::max(1.0, scale)) {
        throw Error(ErrorKind::NonzeroMean, "a_0 must vanish");
    }
    NeumaierSum f2c;
    NeumaierSum d2c;
    for (int k = -K; k <= K; ++k) {
        const double a2 = std::norm(coeffs[static_cast<std::size_t>(k + K)]);
        f2c.add(a2);
        d2c.add(static_cast<double>(k) * k * a2);
    }
    const int M = 4 * K + 8;
    NeumaierSum f2q;
    NeumaierSum d2q;
    for (int j = 0; j < M; ++j) {
        const double th = 2.0 * kPi * j / M;
        cplx f = 0.0;
        cplx df = 0.0;
        for (int k = -K; k <= K; ++k) {
            const cplx e = coeffs[static_cast<std::size_t>(k + K)] * std::polar(1.0, k * th);
            f += e;
            df += cplx(0.0, k) * e;
        }
        f2q.add(std::norm(f));
        d2q.add(std::norm(df));
    }
    const double A = f2c.value();
    const double B = d2c.value();
    const double Aq = f2q.value() / M;
    const double Bq = d2q.value() / M;
    FitReport rep;
    rep.check = "poincare";
    rep.columns = {"int_f2_coeff", "int_df2_coeff", "int_f2_quad", "int_df2_quad"};
    rep.rows.push_back({A, B, Aq, Bq});
    const double agree = std::max(std::abs(A - Aq), std::abs(B - Bq));
    rep.assertions.push_back({"coefficient and quadrature integrals agree", agree, 1e-8, agree <= 1e-8});
    rep.assertions.push_back({"int |f|^2 <= int |f'|^2", A - B, 0.0, A <= B * (1.0 + 1e-12)});
    return rep;
}

FitReport verify_mean_value(std::uint64_t seed, int samples) {
    return mean_value_report(Corpus{seed, samples, 1, 4, 2, 3}, 1.0, 0.1);
}

FitReport verify_order_limit(std::uint64_t seed, int samples) {
    const auto curves = Corpus{seed, samples, 1, 4, 2, 3}.curves();
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    FitReport rep;
    rep.check = "order_limit";
    rep.columns = {"index", "ord", "delta", "ratio"};
    double worst = 0.0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto x = curves[i](P1Point::affine(0.5 * disk_uniform(rng)));
        const double delta = order_limit_radius(curves[i], x);
        const double deltas[] = {delta, delta / 10.0, delta / 100.0};
        const auto r = order_limit_check(curves[i], x, deltas);
        const int ord = target_order(curves[i], x);
        rep.rows.push_back({static_cast<double>(i), static_cast<double>(ord), deltas[2], r.rows.back()[2]});
        worst = std::max(worst, r.assertions.front().value);
    }
    rep.assertions.push_back({"max relative deviation from ord", worst, 0.05, worst <= 0.05});
    return rep;
}

FitReport verify_cylinder(std::uint64_t seed, int samples) {
    const auto curves = Corpus{seed, samples, 1, 4, 2, 3}.curves();
    const double r_in = std::exp(-6.0);
    const double Ts[] = {0.0, 0.5, 1.0, 1.5, 2.0};
    FitReport rep;
    rep.check = "cylinder_decay";
    rep.columns = {"index", "scale", "slope"};
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double s = shrink_until(curves[i], [&](const RationalCurve& c) {
            return image_diameter(c, Annulus{0.0, r_in, 1.0, 0}, 512) <= 0.2;
        });
        const auto r = cylinder_decay_fit(shrink(curves[i], s), 0.0, r_in, 1.0, Ts);
        const double slope = r.fit ? r.fit->slope : -std::numeric_limits<double>::infinity();
        rep.rows.push_back({static_cast<double>(i), s, slope});
        worst = std::max(worst, slope);
    }
    rep.assertions.push_back({"max slope <= -0.9", worst, -0.9, worst <= -0.9});
    return rep;
}

FitReport verify_isoperimetric(std::uint64_t seed, int samples) {
    const auto curves = Corpus{seed, samples, 1, 4, 2, 3}.curves();
    const double radii[] = {0.1, 0.05, 0.025};
    FitReport rep;
    rep.check = "isoperimetric";
    rep.columns = {"index", "scale", "max_ratio"};
    double worst = 0.0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double s = shrink_until(curves[i], [&](const RationalCurve& c) {
            return image_diameter(c, Disk{0.0, 0.1, 0}, 512) <= 0.2;
        });
        const auto r = isoperimetric_report(shrink(curves[i], s), 0.0, radii);
        rep.rows.push_back({static_cast<double>(i), s, r.assertions.front().value});
        worst = std::max(worst, r.assertions.front().value);
    }
    const double bound = 1.1 / (4.0 * kPi);
    rep.assertions.push_back({"max ratio for r <= 0.1", worst, bound, worst <= bound});
    return rep;
}

FitReport verify_poincare(std::uint64_t seed, int samples) {
    std::mt19937_64 rng(seed);
    const int K = 8;
    FitReport rep;
    rep.check = "poincare";
    rep.columns = {"index", "int_f2", "int_df2", "agreement"};
    double worst_agree = 0.0;
    int violations = 0;
    for (int i = 0; i < samples; ++i) {
        std::vector<cplx> a(2 * K + 1);
        for (int k = -K; k <= K; ++k) a[static_cast<std::size_t>(k + K)] = k == 0 ? 0.0 : disk_uniform(rng);
        const auto r = poincare_check(a);
        rep.rows.push_back({static_cast<double>(i), r.rows[0][0], r.rows[0][1], r.assertions[0].value});
        worst_agree = std::max(worst_agree, r.assertions[0].value);
        if (!r.assertions[1].pass) ++violations;
    }
    rep.assertions.push_back({"coefficient and quadrature integrals agree", worst_agree, 1e-8, worst_agree <= 1e-8});
    rep.assertions.push_back({"inequality violations", static_cast<double>(violations), 0.0, violations == 0});
    return rep;
}

}  // namespace gromov
