#include "gromov/bubble.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

#include "gromov/errors.hpp"
#include "gromov/numerics.hpp"

namespace gromov {

namespace {

constexpr double kPi = std::numbers::pi;

double sup_abs(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& x : v) s = std::max(s, std::abs(x));
    return s;
}

double l2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return std::sqrt(s);
}

/// Neville extrapolation to h = 0 of complex sequences, coefficientwise.
std::vector<cplx> extrapolate(std::span<const double> h, const std::vector<std::vector<cplx>>& vals) {
    const std::size_t m = vals.front().size();
    std::vector<cplx> out(m);
    std::vector<double> re(vals.size());
    std::vector<double> im(vals.size());
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < vals.size(); ++i) {
            re[i] = vals[i][j].real();
            im[i] = vals[i][j].imag();
        }
        out[j] = cplx(neville_at_zero(h, re), neville_at_zero(h, im));
    }
    return out;
}

double energy_in_disk(const RationalCurve& c, cplx centre, double r, int chart, double tol) {
    return energy(c, Disk{centre, r, chart}, tol).value;
}

}  // namespace

void CurveFamily::validate() const {
    if (n < 2) throw Error(ErrorKind::InvalidArgument, "family needs n >= 2");
    if (d < 0) throw Error(ErrorKind::InvalidArgument, "family degree must be nonnegative");
    if (samples.empty() && !declared_limit) throw Error(ErrorKind::InvalidArgument, "family has no samples");
    if (samples.size() < 3 && !declared_limit) {
        throw Error(ErrorKind::InvalidArgument, "family needs at least 3 samples or a declared limit");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (s.tuple.n() != n || s.tuple.degree() != d) {
            throw Error(ErrorKind::InvalidArgument, "sample does not match the family's n and degree");
        }
        if (i > 0 && !(s.k > samples[i - 1].k)) throw Error(ErrorKind::InvalidArgument, "k must increase strictly");
        if (!(s.k > 0.0) || !std::isfinite(s.k)) throw Error(ErrorKind::InvalidArgument, "k must be positive");
        RationalCurve check(s.tuple);
        (void)check;
    }
    if (declared_limit && (declared_limit->n() != n || declared_limit->degree() != d)) {
        throw Error(ErrorKind::InvalidArgument, "declared limit does not match the family's n and degree");
    }
}

LimitResult limit_with_error(const CurveFamily& fam, double tol) {
    if (fam.declared_limit) return {normalize(*fam.declared_limit), 0.0};
    const std::size_t N = fam.samples.size();
    if (N < 2) throw Error(ErrorKind::NoConvergence, "need at least two samples to extrapolate");
    const auto ref = normalize(fam.samples.back().tuple).flat();
    const double ref_norm = l2(ref);
    std::vector<std::vector<cplx>> aligned;
    std::vector<double> h;
    for (const auto& s : fam.samples) {
        auto v = s.tuple.flat();
        cplx ip = 0.0;
        double vv = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            ip += ref[i] * std::conj(v[i]);
            vv += std::norm(v[i]);
        }
        if (std::abs(ip) <= 1e-3 * ref_norm * std::sqrt(vv)) {
            throw Error(ErrorKind::NoConvergence, "samples are not projectively close to each other");
        }
        const cplx lambda = ip / vv;
        for (auto& x : v) x *= lambda;
        aligned.push_back(std::move(v));
        h.push_back(1.0 / s.k);
    }
    const auto full = extrapolate(h, aligned);
    const std::vector<std::vector<cplx>> tail(aligned.begin() + 1, aligned.end());
    const auto prev = extrapolate(std::span<const double>(h).subspan(1), tail);
    double err = 0.0;
    for (std::size_t i = 0; i < full.size(); ++i) err = std::max(err, std::abs(full[i] - prev[i]));
    const double scale = sup_abs(full);
    if (!(scale > 0.0) || !std::isfinite(scale)) throw Error(ErrorKind::NoConvergence, "extrapolated tuple vanished");
    err /= scale;
    if (!(err < tol)) {
        throw Error(ErrorKind::NoConvergence, "extrapolants differ by " + std::to_string(err));
    }
    auto snapped = full;
    const double cut = std::max(10.0 * err, 1e-13) * scale;
    for (auto& x : snapped) {
        if (std::abs(x) <= cut) x = 0.0;
    }
    return {normalize(MapTuple::from_flat(fam.n, fam.d, snapped)), err};
}

MapTuple limit_tuple(const CurveFamily& fam, double tol) { return limit_with_error(fam, tol).tuple; }

BubblePoints bubble_points(const CurveFamily& fam, double tol) {
    const auto lim = limit_with_error(fam, tol);
    const auto f = common_factor(lim.tuple, RootOptions{lim.err, kRootClusterTol});
    BubblePoints out{{}, RationalCurve(normalize(f.residual)), lim.err};
    for (const auto& r : f.roots) out.bubbles.push_back({r.point, static_cast<double>(r.multiplicity), r.multiplicity});
    return out;
}

MassProfile mass_profile(const CurveFamily& fam, const P1Point& z, std::span<const double> deltas, double tol) {
    if (deltas.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one radius");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "radii must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1])) throw Error(ErrorKind::InvalidArgument, "radii must decrease");
    }
    if (fam.samples.empty()) throw Error(ErrorKind::InvalidArgument, "family has no samples");
    const int chart = z.preferred_chart();
    const cplx centre = z.chart_coord(chart);

    MassProfile out;
    out.deltas.assign(deltas.begin(), deltas.end());
    for (const auto& s : fam.samples) out.ks.push_back(s.k);
    std::vector<RationalCurve> curves;
    for (const auto& s : fam.samples) curves.emplace_back(s.tuple);
    const std::size_t N = curves.size();
    for (double delta : deltas) {
        std::vector<double> row;
        for (const auto& c : curves) row.push_back(energy_in_disk(c, centre, delta, chart, tol));
        double lim = row.back();
        if (N >= 2) {
            const double h[2] = {1.0 / out.ks[N - 2], 1.0 / out.ks[N - 1]};
            const double f[2] = {row[N - 2], row[N - 1]};
            lim = neville_at_zero(h, f);
        }
        out.table.push_back(std::move(row));
        out.per_delta.push_back(lim);
    }
    std::vector<double> d2;
    for (double delta : deltas) d2.push_back(delta * delta);
    out.estimate = neville_at_zero(d2, out.per_delta);
    const std::size_t M = out.per_delta.size();
    out.uncertainty = M >= 2 ? std::abs(out.per_delta[M - 2] - out.per_delta[M - 1]) : 0.0;
    return out;
}

double delta_for_mass(const RationalCurve& c, cplx center, double mu, double tol, const DeltaOptions& opts) {
    if (c.is_constant()) throw Error(ErrorKind::NoSolution, "a constant curve carries no energy");
    if (!(mu > 0.0)) throw Error(ErrorKind::InvalidArgument, "target mass must be positive");
    if (mu >= static_cast<double>(c.degree())) {
        throw Error(ErrorKind::NoSolution, "target mass is not below the total energy");
    }
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    auto F = [&](double s) { return energy_in_disk(c, center, std::exp(s), 0, opts.quad_tol) - mu; };

    double s = std::log(opts.guess > 0.0 && std::isfinite(opts.guess) ? opts.guess : 1.0);
    double fs = F(s);
    double lo, hi, flo, fhi;
    const double step = std::log(2.0);
    if (fs < 0.0) {
        lo = s;
        flo = fs;
        for (;;) {
            hi = lo + step;
            fhi = F(hi);
            if (fhi >= 0.0) break;
            lo = hi;
            flo = fhi;
            if (lo > 200.0) throw Error(ErrorKind::NoSolution, "energy never reaches the target mass");
        }
    } else {
        hi = s;
        fhi = fs;
        for (;;) {
            lo = hi - step;
            flo = F(lo);
            if (flo < 0.0) break;
            hi = lo;
            fhi = flo;
            if (hi < -600.0) throw Error(ErrorKind::NoSolution, "target mass concentrates at a point");
        }
    }
    // Illinois variant of regula falsi, keeping a bracket in log(delta).
    int side = 0;
    double best = fhi <= -flo ? hi : lo;
    for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
        double m = (lo * fhi - hi * flo) / (fhi - flo);
        if (!(m > lo && m < hi)) m = 0.5 * (lo + hi);
        const double fm = F(m);
        best = m;
        if (std::abs(fm) <= 0.5 * opts.quad_tol) break;
        if (fm < 0.0) {
            lo = m;
            flo = fm;
            if (side == -1) fhi *= 0.5;
            side = -1;
        } else {
            hi = m;
            fhi = fm;
            if (side == 1) flo *= 0.5;
            side = 1;
        }
        best = 0.5 * (lo + hi);
    }
    return std::exp(best);
}

CurveFamily rescaled_family(const CurveFamily& fam, const RescaleStep& step) {
    if (step.centers.size() != fam.samples.size() || step.scales.size() != fam.samples.size()) {
        throw Error(ErrorKind::InvalidArgument, "rescaling needs one center and scale per sample");
    }
    CurveFamily out;
    out.n = fam.n;
    out.d = fam.d;
    for (std::size_t i = 0; i < fam.samples.size(); ++i) {
        if (step.scales[i] == 0.0) throw Error(ErrorKind::ZeroScale, "zero rescaling factor");
        if (!(step.scales[i] > 0.0)) throw Error(ErrorKind::InvalidArgument, "rescaling factors must be positive");
        const MapTuple base = step.chart == 0 ? fam.samples[i].tuple : fam.samples[i].tuple.swapped();
        out.samples.push_back({fam.samples[i].k, substitute_affine(base, step.centers[i], step.scales[i])});
    }
    return out;
}

// ---------------------------------------------------------------- tree

bool BubbleTree::energy_ok() const { return std::abs(energy_sum - d) <= energy_tol; }

bool BubbleTree::gaps_ok(double connect_tol) const {
    return std::all_of(node_gaps.begin(), node_gaps.end(), [&](const NodeGap& g) { return g.gap <= connect_tol; });
}

bool BubbleTree::masses_ok() const {
    return std::all_of(mass_checks.begin(), mass_checks.end(), [](const MassCheck& m) { return m.pass; });
}

bool BubbleTree::stable_ok() const {
    const int r = components.empty() ? 0 : components.front().id;
    return std::all_of(stability.offenders.begin(), stability.offenders.end(), [&](int i) { return i == r; });
}

namespace {

struct Pending {
    CurveFamily fam;
    int parent;
    P1Point attach;
    int mass;
    int depth;
    RescaleStep step;
};

double chart_distance(const P1Point& a, const P1Point& b, int chart) {
    const cplx na = chart == 0 ? a.a() : a.b();
    const cplx da = chart == 0 ? a.b() : a.a();
    const cplx nb = chart == 0 ? b.a() : b.b();
    const cplx db = chart == 0 ? b.b() : b.a();
    if (db == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(na / da - nb / db);
}

/// Density peak near x and the radius holding mass mu around it. The peak is
/// searched again on the grid of the bubble's own scale, then refined in
/// coordinates centred on it, where the tuple is well scaled.
std::pair<cplx, double> bubble_scale(const MapTuple& t, cplx x, double rho, double mu) {
    const auto coarse = sup_density(RationalCurve::unchecked(t), Disk{x, rho, 0}, 64, 1e-3);
    if (!(coarse.value > 0.0)) throw Error(ErrorKind::NoSolution, "no energy near the bubble point");
    const double L0 = 1.0 / std::sqrt(kPi * coarse.value);
    const double span = std::min(16.0, rho / L0);
    const auto local0 = RationalCurve::unchecked(substitute_affine(t, coarse.point, L0));
    const auto mid = sup_density(local0, Disk{0.0, span, 0}, 64, 1e-3);
    const cplx z1 = coarse.point + L0 * mid.point;
    const double L1 = L0 / std::sqrt(kPi * mid.value);
    const auto local1 = RationalCurve::unchecked(substitute_affine(t, z1, L1));
    const auto fine = sup_density(local1, Disk{0.0, 0.05, 0}, 16, 1e-9);
    const auto centred = RationalCurve::unchecked(substitute_affine(local1.tuple(), fine.point, 1.0));
    const double guess = 1.0 / std::sqrt(kPi * fine.value);
    const double d = delta_for_mass(centred, 0.0, mu, 1e-12, DeltaOptions{1e-10, guess});
    return {z1 + L1 * fine.point, L1 * d};
}

}  // namespace

BubbleTree build_bubble_tree(const CurveFamily& fam, const BubbleConfig& cfg) {
    fam.validate();
    if (!(cfg.hbar > 0.0)) throw Error(ErrorKind::InvalidArgument, "hbar must be positive");
    BubbleTree out;
    out.d = fam.d;
    const int max_depth = static_cast<int>(std::floor(fam.d / cfg.hbar + 1e-12));

    std::deque<Pending> queue;
    queue.push_back({fam, -1, P1Point::infinity(), fam.d, 0, {}});
    while (!queue.empty()) {
        Pending job = std::move(queue.front());
        queue.pop_front();
        const auto lim = limit_with_error(job.fam, cfg.limit_tol);
        const auto fac = common_factor(lim.tuple, RootOptions{lim.err, kRootClusterTol});
        std::vector<RootMult> bubbles;
        int inf_mult = 0;
        for (const auto& r : fac.roots) {
            if (job.parent >= 0 && r.point.is_infinity()) {
                inf_mult += r.multiplicity;
            } else {
                bubbles.push_back(r);
            }
        }
        if (job.parent >= 0 && inf_mult != fam.d - job.mass) {
            throw Error(ErrorKind::ConservationViolated,
                        "factor at infinity of multiplicity " + std::to_string(inf_mult) + ", expected " +
                            std::to_string(fam.d - job.mass));
        }

        const int id = static_cast<int>(out.components.size());
        out.components.push_back(TreeComponent{id, job.parent, job.attach, RationalCurve(normalize(fac.residual)),
                                               fac.residual.degree(), job.mass, 0.0, job.depth, job.step});
        out.tree.order.elements.push_back(id);
        if (job.parent >= 0) {
            out.tree.order.preds[id] = {job.parent};
            out.tree.attach[id] = job.attach;
            const auto& pmap = out.components[static_cast<std::size_t>(job.parent)].map;
            const auto& cmap = out.components.back().map;
            out.node_gaps.push_back({id, fs_distance(pmap(job.attach), cmap(P1Point::infinity()))});
        }

        for (const auto& b : bubbles) {
            if (job.depth + 1 > max_depth) {
                throw Error(ErrorKind::DepthExceeded, "bubble recursion deeper than d / hbar");
            }
            const int chart = b.point.preferred_chart();
            const cplx x = b.point.chart_coord(chart);
            double sep = std::numeric_limits<double>::infinity();
            for (const auto& other : fac.roots) {
                if (other.point.equals(b.point)) continue;
                sep = std::min(sep, chart_distance(b.point, other.point, chart));
            }
            const double rho = std::min(0.25, 0.45 * sep);
            const double mu = b.multiplicity - 0.5 * cfg.hbar;
            if (!(mu > 0.0)) throw Error(ErrorKind::NoSolution, "bubble mass below hbar / 2");

            RescaleStep step;
            step.mu = mu;
            step.chart = chart;
            for (const auto& s : job.fam.samples) {
                const MapTuple& base = chart == 0 ? s.tuple : s.tuple.swapped();
                const auto [centre, scale] = bubble_scale(base, x, rho, mu);
                step.centers.push_back(centre);
                step.scales.push_back(scale);
            }
            if (cfg.check_masses) {
                const double scale = rho / 0.25;
                std::vector<double> deltas;
                for (double dl : cfg.mass_deltas) deltas.push_back(dl * scale);
                const auto prof = mass_profile(job.fam, b.point, deltas, cfg.quad_tol);
                out.mass_checks.push_back({id, b.point, b.multiplicity, prof.estimate, prof.uncertainty,
                                           std::abs(prof.estimate - b.multiplicity) <= cfg.mass_tol});
            }
            queue.push_back({rescaled_family(job.fam, step), id, b.point, b.multiplicity, job.depth + 1, step});
        }
    }

    DecoratedTree dec{out.tree, {}};
    NeumaierSum esum;
    for (auto& c : out.components) {
        out.degree_sum += c.degree;
        c.energy = energy(c.map, FullSphere{}, cfg.quad_tol).value;
        esum.add(c.energy);
        dec.decor[c.id] = ComponentDecor{c.degree, 0};
    }
    out.energy_sum = esum.value();
    out.energy_tol = static_cast<double>(out.components.size()) * 10.0 * cfg.quad_tol;
    out.stability = stability_check(dec);
    for (int off : out.stability.offenders) {
        if (off == 0) {
            out.diagnostics.push_back("UNSTABLE_ROOT: constant root component with fewer than 3 special points");
        } else {
            out.diagnostics.push_back("UNSTABLE_COMPONENT " + std::to_string(off));
        }
    }
    for (const auto& v : validate(out.tree)) out.diagnostics.push_back("TREE " + v.axiom + ": " + v.detail);
    return out;
}

}  // namespace gromov
