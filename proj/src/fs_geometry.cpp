#include "gromov/fs_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>

#include "gromov/errors.hpp"
#include "gromov/numerics.hpp"

namespace gromov {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kLowOrder = 6;
constexpr int kHighOrder = 12;
constexpr double kAngleOffset = 0.3;

struct Cell {
    double r0, r1, t0, t1;
    double q = 0.0;
    double err = 0.0;
    bool live = true;
};

class PolarIntegrator {
   public:
    PolarIntegrator(const ChartMap& map, cplx centre, std::size_t cap)
        : map_(map), centre_(centre), cap_(cap) {}

    EnergyResult run(double r0, double r1, double tol) {
        std::vector<double> radii;
        if (r0 == 0.0) {
            radii = {0.0, 0.5 * r1, r1};
        } else {
            radii = {r0, split_radius(r0, r1), r1};
        }
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 8; ++j) {
                const double t0 = kAngleOffset + 2.0 * kPi * j / 8.0;
                const double t1 = kAngleOffset + 2.0 * kPi * (j + 1) / 8.0;
                add_cell(radii[static_cast<std::size_t>(i)], radii[static_cast<std::size_t>(i + 1)], t0, t1);
            }
        }
        std::size_t since_resum = 0;
        while (total_err_ > tol) {
            if (queue_.empty()) break;
            const std::size_t id = queue_.top().second;
            queue_.pop();
            Cell c = cells_[id];
            cells_[id].live = false;
            total_err_ -= c.err;
            --live_;
            const double lr = c.r1 - c.r0;
            const double la = 0.5 * (c.r0 + c.r1) * (c.t1 - c.t0);
            const bool split_r = lr > 0.5 * la;
            const bool split_t = la > 0.5 * lr;
            const std::size_t pieces = (split_r ? 2u : 1u) * (split_t ? 2u : 1u);
            if (live_ + pieces > cap_) {
                throw Error(ErrorKind::QuadratureBudgetExceeded,
                            "cell cap reached with error estimate above tolerance");
            }
            const double rm = split_radius(c.r0, c.r1);
            const double tm = 0.5 * (c.t0 + c.t1);
            std::vector<std::pair<double, double>> rs{{c.r0, c.r1}};
            std::vector<std::pair<double, double>> ts{{c.t0, c.t1}};
            if (split_r) rs = {{c.r0, rm}, {rm, c.r1}};
            if (split_t) ts = {{c.t0, tm}, {tm, c.t1}};
            for (auto [a, b] : rs) {
                for (auto [s, t] : ts) add_cell(a, b, s, t);
            }
            if (++since_resum >= 4096) {
                long double e = 0.0L;
                for (const auto& cell : cells_) {
                    if (cell.live) e += cell.err;
                }
                total_err_ = e;
                since_resum = 0;
            }
        }
        NeumaierSum value;
        NeumaierSum err;
        for (const auto& cell : cells_) {
            if (!cell.live) continue;
            value.add(cell.q);
            err.add(cell.err);
        }
        return {value.value(), err.value(), live_};
    }

   private:
    static double split_radius(double r0, double r1) {
        if (r0 > 0.0 && r1 / r0 > 2.0) return std::sqrt(r0 * r1);
        return 0.5 * (r0 + r1);
    }

    cplx at(double r, double t) const { return centre_ + std::polar(r, t); }

    double area_rule(const Cell& c, int n) const {
        const auto& g = gauss_legendre(n);
        const double hr = 0.5 * (c.r1 - c.r0);
        const double mr = 0.5 * (c.r1 + c.r0);
        const double ht = 0.5 * (c.t1 - c.t0);
        const double mt = 0.5 * (c.t1 + c.t0);
        NeumaierSum s;
        for (int i = 0; i < n; ++i) {
            const double r = mr + hr * g.nodes[static_cast<std::size_t>(i)];
            double row = 0.0;
            for (int j = 0; j < n; ++j) {
                const double t = mt + ht * g.nodes[static_cast<std::size_t>(j)];
                row += g.weights[static_cast<std::size_t>(j)] * map_.density(at(r, t));
            }
            s.add(g.weights[static_cast<std::size_t>(i)] * r * row);
        }
        return s.value() * hr * ht;
    }

    /// Energy of the cell as the boundary flux of grad log |r|^2 over 4 pi.
    double flux_rule(const Cell& c) const {
        const auto& g = gauss_legendre(kHighOrder);
        const double hr = 0.5 * (c.r1 - c.r0);
        const double mr = 0.5 * (c.r1 + c.r0);
        const double ht = 0.5 * (c.t1 - c.t0);
        const double mt = 0.5 * (c.t1 + c.t0);
        NeumaierSum s;
        for (int j = 0; j < kHighOrder; ++j) {
            const double t = mt + ht * g.nodes[static_cast<std::size_t>(j)];
            const double w = g.weights[static_cast<std::size_t>(j)] * ht;
            const cplx e = std::polar(1.0, t);
            s.add(w * c.r1 * 2.0 * (e * map_.dlog(at(c.r1, t))).real());
            if (c.r0 > 0.0) s.add(-w * c.r0 * 2.0 * (e * map_.dlog(at(c.r0, t))).real());
        }
        const cplx e1 = std::polar(1.0, c.t1);
        const cplx e0 = std::polar(1.0, c.t0);
        for (int i = 0; i < kHighOrder; ++i) {
            const double r = mr + hr * g.nodes[static_cast<std::size_t>(i)];
            const double w = g.weights[static_cast<std::size_t>(i)] * hr;
            s.add(-w * 2.0 * (e1 * map_.dlog(at(r, c.t1))).imag());
            s.add(w * 2.0 * (e0 * map_.dlog(at(r, c.t0))).imag());
        }
        return s.value() / (4.0 * kPi);
    }

    void add_cell(double r0, double r1, double t0, double t1) {
        Cell c{r0, r1, t0, t1};
        const double hi = area_rule(c, kHighOrder);
        const double lo = area_rule(c, kLowOrder);
        const double fl = flux_rule(c);
        c.q = hi;
        c.err = std::abs(hi - lo) + std::abs(hi - fl);
        cells_.push_back(c);
        const std::size_t id = cells_.size() - 1;
        queue_.push({c.err, id});
        total_err_ += c.err;
        ++live_;
    }

    struct ByError {
        bool operator()(const std::pair<double, std::size_t>& a, const std::pair<double, std::size_t>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;
        }
    };

    const ChartMap& map_;
    cplx centre_;
    std::size_t cap_;
    std::vector<Cell> cells_;
    std::priority_queue<std::pair<double, std::size_t>, std::vector<std::pair<double, std::size_t>>, ByError>
        queue_;
    long double total_err_ = 0.0L;
    std::size_t live_ = 0;
};

EnergyResult polar_energy(const RationalCurve& c, int chart, cplx centre, double r0, double r1, double tol,
                          const QuadratureOptions& opts) {
    if (centre == 0.0) {
        const ChartMap map(c, chart);
        return PolarIntegrator(map, 0.0, opts.max_cells).run(r0, r1, tol);
    }
    // integrate in coordinates centred on the region
    const MapTuple& t = chart == 0 ? c.tuple() : c.tuple().swapped();
    const ChartMap map(RationalCurve::unchecked(substitute_affine(t, centre, 1.0)), 0);
    return PolarIntegrator(map, 0.0, opts.max_cells).run(r0, r1, tol);
}

EnergyResult combine(const EnergyResult& a, const EnergyResult& b, double sign) {
    return {a.value + sign * b.value, a.err_estimate + b.err_estimate, a.cells + b.cells};
}

void check_chart(int chart) {
    if (chart != 0 && chart != 1) throw Error(ErrorKind::InvalidArgument, "chart index must be 0 or 1");
}

void check_radius(double r, const char* what) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, what);
}

/// A hole seen in chart 0: a disk, or the exterior of a disk together with infinity.
struct ZDisk {
    cplx c;
    double r;
    bool exterior;
};

ZDisk to_chart0(const Disk& d) {
    if (d.chart == 0) return {d.center, d.r, false};
    const double m = std::norm(d.center) - d.r * d.r;
    if (std::abs(m) <= 1e-14 * std::max(1.0, d.r * d.r)) {
        throw Error(ErrorKind::InvalidArgument, "hole boundary passes through the pole of chart 0");
    }
    return {std::conj(d.center) / m, d.r / std::abs(m), m < 0.0};
}

bool holes_disjoint(const Disk& a, const Disk& b) {
    const ZDisk x = to_chart0(a);
    const ZDisk y = to_chart0(b);
    if (x.exterior && y.exterior) return false;
    if (!x.exterior && !y.exterior) return std::abs(x.c - y.c) >= x.r + y.r;
    const ZDisk& in = x.exterior ? y : x;
    const ZDisk& out = x.exterior ? x : y;
    return std::abs(in.c - out.c) + in.r <= out.r;
}

P1Point chart_point(int chart, cplx x) { return chart == 0 ? P1Point(x, 1.0) : P1Point(1.0, x); }

bool in_hole(const P1Point& p, const Disk& h) {
    const cplx num = h.chart == 0 ? p.a() : p.b();
    const cplx den = h.chart == 0 ? p.b() : p.a();
    if (den == 0.0) return false;
    return std::abs(num / den - h.center) <= h.r;
}

std::vector<P1Point> sample_region(const Region& region, int samples) {
    std::vector<P1Point> pts;
    auto sphere_point = [](std::size_t i) {
        const double zc = 1.0 - 2.0 * radical_inverse(i, 2);
        const double ph = 2.0 * kPi * radical_inverse(i, 3);
        const double s = std::sqrt(std::max(0.0, 1.0 - zc * zc));
        return P1Point(cplx(s * std::cos(ph), s * std::sin(ph)), 1.0 - zc);
    };
    if (const auto* d = std::get_if<Disk>(&region)) {
        for (int i = 1; i <= samples; ++i) {
            const double rad = d->r * std::sqrt(radical_inverse(static_cast<std::size_t>(i), 2));
            const double ang = 2.0 * kPi * radical_inverse(static_cast<std::size_t>(i), 3);
            pts.push_back(chart_point(d->chart, d->center + std::polar(rad, ang)));
        }
    } else if (const auto* a = std::get_if<Annulus>(&region)) {
        for (int i = 1; i <= samples; ++i) {
            const double u = radical_inverse(static_cast<std::size_t>(i), 2);
            const double rad = std::sqrt(a->r_in * a->r_in + u * (a->r_out * a->r_out - a->r_in * a->r_in));
            const double ang = 2.0 * kPi * radical_inverse(static_cast<std::size_t>(i), 3);
            pts.push_back(chart_point(a->chart, a->center + std::polar(rad, ang)));
        }
    } else if (std::holds_alternative<FullSphere>(region)) {
        for (int i = 1; i <= samples; ++i) pts.push_back(sphere_point(static_cast<std::size_t>(i)));
    } else {
        const auto& sc = std::get<SphereComplement>(region);
        for (std::size_t i = 1; static_cast<int>(pts.size()) < samples && i < 64u * static_cast<std::size_t>(samples); ++i) {
            const P1Point p = sphere_point(i);
            bool inside = false;
            for (const auto& h : sc.holes) inside = inside || in_hole(p, h);
            if (!inside) pts.push_back(p);
        }
    }
    return pts;
}

bool better_with(const DensityMax& a, const DensityMax& b, double rel) {
    const double scale = std::max(std::abs(a.value), std::abs(b.value));
    if (std::abs(a.value - b.value) > rel * scale) return a.value > b.value;
    if (a.point.real() != b.point.real()) return a.point.real() < b.point.real();
    return a.point.imag() < b.point.imag();
}

/// Order between distinct peaks: values within 1e-6 relative count as tied.
bool better(const DensityMax& a, const DensityMax& b) { return better_with(a, b, 1e-6); }

bool better_strict(const DensityMax& a, const DensityMax& b) { return better_with(a, b, 0.0); }

}  // namespace

// ---------------------------------------------------------------- ChartMap

ChartMap::ChartMap(const RationalCurve& c, int chart) {
    check_chart(chart);
    for (const auto& p : c.tuple().polys()) {
        if (chart == 0) {
            desc_.emplace_back(p.coeffs().begin(), p.coeffs().end());
        } else {
            desc_.emplace_back(p.coeffs().rbegin(), p.coeffs().rend());
        }
    }
}

void ChartMap::eval(cplx x, std::span<cplx> r, std::span<cplx> dr) const {
    for (std::size_t i = 0; i < desc_.size(); ++i) {
        cplx f = 0.0;
        cplx df = 0.0;
        for (const cplx& c : desc_[i]) {
            df = df * x + f;
            f = f * x + c;
        }
        r[i] = f;
        dr[i] = df;
    }
}

double ChartMap::density(cplx x) const {
    cplx rbuf[16];
    cplx dbuf[16];
    std::vector<cplx> rv;
    std::vector<cplx> dv;
    std::span<cplx> r(rbuf, desc_.size());
    std::span<cplx> dr(dbuf, desc_.size());
    if (desc_.size() > 16) {
        rv.resize(desc_.size());
        dv.resize(desc_.size());
        r = rv;
        dr = dv;
    }
    eval(x, r, dr);
    double s = 0.0;
    for (const auto& v : r) s += std::norm(v);
    double lag = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) lag += std::norm(r[i] * dr[j] - r[j] * dr[i]);
    }
    return lag / (kPi * s * s);
}

cplx ChartMap::dlog(cplx x) const {
    cplx rbuf[16];
    cplx dbuf[16];
    std::vector<cplx> rv;
    std::vector<cplx> dv;
    std::span<cplx> r(rbuf, desc_.size());
    std::span<cplx> dr(dbuf, desc_.size());
    if (desc_.size() > 16) {
        rv.resize(desc_.size());
        dv.resize(desc_.size());
        r = rv;
        dr = dv;
    }
    eval(x, r, dr);
    double s = 0.0;
    cplx num = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        s += std::norm(r[i]);
        num += dr[i] * std::conj(r[i]);
    }
    return num / s;
}

// ---------------------------------------------------------------- operations

double fs_distance(std::span<const cplx> p, std::span<const cplx> q) {
    if (p.size() != q.size()) throw Error(ErrorKind::InvalidArgument, "points lie in different projective spaces");
    double np = 0.0;
    double nq = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        np = std::max(np, std::abs(p[i]));
        nq = std::max(nq, std::abs(q[i]));
    }
    if (np == 0.0 || nq == 0.0) throw Error(ErrorKind::ZeroVector, "zero homogeneous vector");
    cplx inner = 0.0;
    double cross = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const cplx pi = p[i] / np;
        const cplx qi = q[i] / nq;
        inner += pi * std::conj(qi);
        for (std::size_t j = i + 1; j < p.size(); ++j) cross += std::norm(pi * (q[j] / nq) - (p[j] / np) * qi);
    }
    return std::atan2(std::sqrt(cross), std::abs(inner));
}

void validate_region(const Region& region) {
    if (const auto* d = std::get_if<Disk>(&region)) {
        check_chart(d->chart);
        check_radius(d->r, "disk radius must be positive");
    } else if (const auto* a = std::get_if<Annulus>(&region)) {
        check_chart(a->chart);
        check_radius(a->r_in, "annulus inner radius must be positive");
        check_radius(a->r_out, "annulus outer radius must be positive");
        if (!(a->r_in < a->r_out)) throw Error(ErrorKind::InvalidArgument, "annulus needs r_in < r_out");
    } else if (const auto* s = std::get_if<SphereComplement>(&region)) {
        for (const auto& h : s->holes) {
            check_chart(h.chart);
            check_radius(h.r, "hole radius must be positive");
        }
        for (std::size_t i = 0; i < s->holes.size(); ++i) {
            for (std::size_t j = i + 1; j < s->holes.size(); ++j) {
                if (!holes_disjoint(s->holes[i], s->holes[j])) {
                    throw Error(ErrorKind::InvalidArgument, "holes of a sphere complement must be disjoint");
                }
            }
        }
    }
}

double energy_density(const RationalCurve& c, cplx z, int chart) { return ChartMap(c, chart).density(z); }

EnergyResult energy(const RationalCurve& c, const Region& region, double tol, const QuadratureOptions& opts) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
    validate_region(region);
    if (const auto* d = std::get_if<Disk>(&region)) {
        return polar_energy(c, d->chart, d->center, 0.0, d->r, tol, opts);
    }
    if (const auto* a = std::get_if<Annulus>(&region)) {
        return polar_energy(c, a->chart, a->center, a->r_in, a->r_out, tol, opts);
    }
    if (std::holds_alternative<FullSphere>(region)) {
        return combine(polar_energy(c, 0, 0.0, 0.0, 1.0, 0.5 * tol, opts),
                       polar_energy(c, 1, 0.0, 0.0, 1.0, 0.5 * tol, opts), 1.0);
    }
    const auto& sc = std::get<SphereComplement>(region);
    const double share = sc.holes.empty() ? 0.0 : 0.5 * tol / static_cast<double>(sc.holes.size());
    EnergyResult out = energy(c, FullSphere{}, sc.holes.empty() ? tol : 0.5 * tol, opts);
    for (const auto& h : sc.holes) out = combine(out, polar_energy(c, h.chart, h.center, 0.0, h.r, share, opts), -1.0);
    out.value = std::max(out.value, 0.0);
    return out;
}

DensityMax sup_density(const RationalCurve& c, const Region& region, int grid, double rel_step) {
    cplx centre;
    double r_in = 0.0;
    double r_out = 0.0;
    int chart = 0;
    if (const auto* d = std::get_if<Disk>(&region)) {
        centre = d->center;
        r_out = d->r;
        chart = d->chart;
    } else if (const auto* a = std::get_if<Annulus>(&region)) {
        centre = a->center;
        r_in = a->r_in;
        r_out = a->r_out;
        chart = a->chart;
    } else {
        throw Error(ErrorKind::InvalidArgument, "density maximum needs a region bounded in one chart");
    }
    validate_region(region);
    if (grid < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least two points per side");
    if (!(rel_step > 0.0)) throw Error(ErrorKind::InvalidArgument, "refinement step must be positive");
    const ChartMap map(c, chart);
    auto inside = [&](cplx x) {
        const double rho = std::abs(x - centre);
        return rho <= r_out && rho >= r_in;
    };

    const double diam = 2.0 * r_out;
    double h = diam / grid;
    const std::size_t G = static_cast<std::size_t>(grid);
    std::vector<double> val(G * G, std::numeric_limits<double>::quiet_NaN());
    auto node = [&](std::size_t i, std::size_t j) {
        return centre + cplx(-r_out + (static_cast<double>(i) + 0.5) * h, -r_out + (static_cast<double>(j) + 0.5) * h);
    };
    for (std::size_t i = 0; i < G; ++i) {
        for (std::size_t j = 0; j < G; ++j) {
            if (inside(node(i, j))) val[i * G + j] = map.density(node(i, j));
        }
    }
    std::vector<DensityMax> cand;
    for (std::size_t i = 0; i < G; ++i) {
        for (std::size_t j = 0; j < G; ++j) {
            const double v = val[i * G + j];
            if (std::isnan(v)) continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    const long ii = static_cast<long>(i) + di;
                    const long jj = static_cast<long>(j) + dj;
                    if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= grid || jj >= grid) continue;
                    const double w = val[static_cast<std::size_t>(ii) * G + static_cast<std::size_t>(jj)];
                    if (!std::isnan(w) && w > v) {
                        is_max = false;
                        break;
                    }
                }
            }
            if (is_max) cand.push_back({node(i, j), v});
        }
    }
    if (cand.empty()) {
        const cplx x = centre + 0.5 * (r_in + r_out);
        cand.push_back({x, map.density(x)});
    }
    std::sort(cand.begin(), cand.end(), better);
    if (cand.size() > 6) cand.resize(6);
    // Peaks narrower than the grid sit near zeros of the entries.
    std::vector<cplx> seeds{centre};
    const MapTuple& tup = c.tuple();
    for (const auto& p : tup.polys()) {
        if (p.is_zero() || p.degree() == 0) continue;
        for (const auto& r : roots(chart == 0 ? p : p.swapped(), RootOptions{})) {
            if (r.point.is_infinity()) continue;
            seeds.push_back(r.point.z());
        }
    }
    for (const cplx& x : seeds) {
        if (inside(x)) cand.push_back({x, map.density(x)});
    }

    DensityMax best = cand.front();
    for (;;) {
        const double scale = best.value > 0.0 ? 1.0 / std::sqrt(kPi * best.value) : diam;
        if (h <= rel_step * std::min(diam, scale)) break;
        std::vector<DensityMax> next;
        for (const auto& cd : cand) {
            DensityMax local = cd;
            for (int i = -4; i <= 4; ++i) {
                for (int j = -4; j <= 4; ++j) {
                    const cplx x = cd.point + cplx(i, j) * (h / 4.0);
                    if (!inside(x)) continue;
                    const DensityMax m{x, map.density(x)};
                    if (better_strict(m, local)) local = m;
                }
            }
            next.push_back(local);
        }
        h /= 4.0;
        std::sort(next.begin(), next.end(), better);
        cand.clear();
        for (const auto& cd : next) {
            bool dup = false;
            for (const auto& kept : cand) dup = dup || std::abs(kept.point - cd.point) < h;
            if (!dup) cand.push_back(cd);
        }
        best = cand.front();
    }
    return best;
}

double image_diameter(const RationalCurve& c, const Region& region, int samples) {
    if (samples < 2) throw Error(ErrorKind::InvalidArgument, "need at least two samples");
    validate_region(region);
    const auto pts = sample_region(region, samples);
    std::vector<std::vector<cplx>> img;
    img.reserve(pts.size());
    for (const auto& p : pts) img.push_back(c(p));
    double best = 0.0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        for (std::size_t j = i + 1; j < img.size(); ++j) best = std::max(best, fs_distance(img[i], img[j]));
    }
    return best;
}

double boundary_length(const RationalCurve& c, const Circle& circle) {
    check_chart(circle.chart);
    check_radius(circle.r, "circle radius must be positive");
    const ChartMap map(c, circle.chart);
    auto speed = [&](double t) { return circle.r * std::sqrt(kPi * map.density(circle.center + std::polar(circle.r, t))); };
    std::size_t n = 64;
    NeumaierSum s;
    for (std::size_t i = 0; i < n; ++i) s.add(speed(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n)));
    double sum = s.value();
    double prev = 2.0 * kPi * sum / static_cast<double>(n);
    while (n < (std::size_t{1} << 22)) {
        NeumaierSum add;
        for (std::size_t i = 0; i < n; ++i) {
            add.add(speed(2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n)));
        }
        sum += add.value();
        n *= 2;
        const double cur = 2.0 * kPi * sum / static_cast<double>(n);
        if (std::abs(cur - prev) <= 1e-10 * std::abs(cur) || cur == 0.0) return cur;
        prev = cur;
    }
    throw Error(ErrorKind::QuadratureBudgetExceeded, "boundary length did not converge");
}

}  // namespace gromov
