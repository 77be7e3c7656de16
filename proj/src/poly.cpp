#include "gromov/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gromov/errors.hpp"

namespace gromov {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/// Ascending-power Taylor coefficients of q(c + y) given ascending q.
std::vector<cplx> taylor_shift(std::vector<cplx> asc, cplx c) {
    const std::size_t n = asc.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = n - 1; j > i; --j) {
            asc[j - 1] += c * asc[j];
        }
    }
    return asc;
}

std::vector<cplx> ascending(std::span<const cplx> desc) {
    return std::vector<cplx>(desc.rbegin(), desc.rend());
}

cplx horner_desc(std::span<const cplx> desc, cplx z) {
    cplx acc = 0.0;
    for (const cplx& c : desc) acc = acc * z + c;
    return acc;
}

struct RawRoot {
    P1Point pt;
    bool exact = false;
};

struct Cluster {
    P1Point pt;
    int mult = 0;
    double radius = 0.0;
};

/// Coordinate of pt in the given chart, or nullopt-like flag when it is the
/// pole of that chart.
bool chart_coordinate(const P1Point& pt, int chart, cplx& out) {
    const cplx num = chart == 0 ? pt.a() : pt.b();
    const cplx den = chart == 0 ? pt.b() : pt.a();
    if (den == 0.0) return false;
    out = num / den;
    return true;
}

P1Point from_chart(int chart, cplx x) {
    return chart == 0 ? P1Point(x, 1.0) : P1Point(1.0, x);
}

bool sort_key_less(const P1Point& p, const P1Point& q) {
    if (p.is_infinity() != q.is_infinity()) return q.is_infinity();
    if (p.is_infinity()) return false;
    const cplx zp = p.z();
    const cplx zq = q.z();
    if (zp.real() != zq.real()) return zp.real() < zq.real();
    return zp.imag() < zq.imag();
}

/// Elementary symmetric functions e_0..e_m of the given values.
std::vector<cplx> elementary_symmetric(const std::vector<cplx>& xs) {
    std::vector<cplx> e(xs.size() + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j > 0; --j) e[j] += e[j - 1] * xs[i];
    }
    return e;
}

/// Largest deviation tolerated for m roots forming one multiple root at c of
/// the chart polynomial q (descending coefficients).
double cluster_radius(std::span<const cplx> q_desc, cplx c, int m, double eta, double base) {
    const auto shifted = taylor_shift(ascending(q_desc), c);
    const double tm = std::abs(shifted[static_cast<std::size_t>(m)]);
    double sup = 0.0;
    for (const cplx& x : q_desc) sup = std::max(sup, std::abs(x));
    double powsum = 0.0;
    double pw = 1.0;
    for (std::size_t k = 0; k < q_desc.size(); ++k) {
        powsum += pw;
        pw *= std::abs(c);
    }
    const double floor = base * std::max(1.0, std::abs(c));
    if (tm == 0.0) return floor;
    return std::max(floor, 2.0 * std::pow(eta * sup * powsum / tm, 1.0 / m));
}

std::vector<Cluster> cluster_roots(const HomogPoly& p, std::vector<RawRoot> raw, const RootOptions& opts) {
    std::sort(raw.begin(), raw.end(), [](const RawRoot& x, const RawRoot& y) {
        return sort_key_less(x.pt, y.pt);
    });
    const double eta = std::max(opts.noise, 256.0 * kEps);
    const HomogPoly swapped = p.swapped();
    std::vector<bool> used(raw.size(), false);
    std::vector<Cluster> out;

    for (std::size_t s = 0; s < raw.size(); ++s) {
        if (used[s]) continue;
        const int chart = raw[s].pt.preferred_chart();
        cplx xs;
        chart_coordinate(raw[s].pt, chart, xs);
        const std::span<const cplx> q = chart == 0 ? p.coeffs() : swapped.coeffs();

        std::vector<std::pair<double, std::size_t>> cand;
        std::vector<cplx> coord(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (i == s || used[i]) continue;
            if (!chart_coordinate(raw[i].pt, chart, coord[i])) continue;
            cand.emplace_back(std::abs(coord[i] - xs), i);
        }
        std::sort(cand.begin(), cand.end());
        coord[s] = xs;

        std::vector<std::size_t> members{s};
        cplx centre = xs;
        double radius = opts.cluster_tol * std::max(1.0, std::abs(xs));
        for (int m = static_cast<int>(cand.size()) + 1; m >= 2; --m) {
            std::vector<std::size_t> group{s};
            for (int j = 0; j < m - 1; ++j) group.push_back(cand[static_cast<std::size_t>(j)].second);
            cplx c = 0.0;
            bool have_exact = false;
            for (std::size_t i : group) {
                if (raw[i].exact && !have_exact) {
                    c = coord[i];
                    have_exact = true;
                }
            }
            if (!have_exact) {
                for (std::size_t i : group) c += coord[i];
                c /= static_cast<double>(m);
            }
            std::vector<cplx> dev;
            double rho = 0.0;
            for (std::size_t i : group) {
                dev.push_back(coord[i] - c);
                rho = std::max(rho, std::abs(dev.back()));
            }
            const double r = cluster_radius(q, c, m, eta, opts.cluster_tol);
            if (rho > r) continue;
            bool symmetric = true;
            if (rho > 0.0) {
                const auto e = elementary_symmetric(dev);
                for (int j = have_exact ? 1 : 2; j <= m - 1; ++j) {
                    if (std::abs(e[static_cast<std::size_t>(j)]) > 0.1 * std::pow(rho, j)) {
                        symmetric = false;
                        break;
                    }
                }
            }
            if (!symmetric) continue;
            members = group;
            centre = c;
            radius = r;
            break;
        }
        for (std::size_t i : members) used[i] = true;
        out.push_back({from_chart(chart, centre), static_cast<int>(members.size()), radius});
        if (members.size() == 1 && !raw[s].exact) {
            // Guarded Newton polish for simple roots.
            cplx x = xs;
            cplx fx = horner_desc(q, x);
            for (int it = 0; it < 3 && fx != 0.0; ++it) {
                cplx df = 0.0;
                cplx f = 0.0;
                for (const cplx& cc : q) {
                    df = df * x + f;
                    f = f * x + cc;
                }
                if (df == 0.0) break;
                const cplx xn = x - f / df;
                const cplx fn = horner_desc(q, xn);
                if (!(std::abs(fn) < std::abs(fx))) break;
                x = xn;
                fx = fn;
            }
            out.back().pt = from_chart(chart, x);
        }
    }
    std::sort(out.begin(), out.end(), [](const Cluster& x, const Cluster& y) {
        return sort_key_less(x.pt, y.pt);
    });
    return out;
}

std::vector<Cluster> root_clusters(const HomogPoly& p, const RootOptions& opts) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "roots of the zero polynomial");
    const auto c = p.coeffs();
    const int d = p.degree();
    int lead = 0;
    while (c[static_cast<std::size_t>(lead)] == 0.0) ++lead;
    int trail = 0;
    while (c[static_cast<std::size_t>(d - trail)] == 0.0) ++trail;

    std::vector<RawRoot> raw;
    for (int i = 0; i < lead; ++i) raw.push_back({P1Point::infinity(), true});
    for (int i = 0; i < trail; ++i) raw.push_back({P1Point::affine(0.0), true});

    const int dd = d - lead - trail;
    if (dd >= 1) {
        const cplx first = c[static_cast<std::size_t>(lead)];
        const cplx last = c[static_cast<std::size_t>(d - trail)];
        const double scale = std::pow(std::abs(last / first), 1.0 / dd);
        // Monic polynomial in y = z / scale, ascending coefficients a_0..a_{dd-1}.
        std::vector<cplx> mon(static_cast<std::size_t>(dd));
        for (int j = 1; j <= dd; ++j) {
            const cplx cj = c[static_cast<std::size_t>(lead + j)];
            mon[static_cast<std::size_t>(dd - j)] = cj / (first * std::pow(scale, j));
        }
        if (dd == 1) {
            raw.push_back({P1Point::affine(-mon[0] * scale), false});
        } else {
            Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(dd, dd);
            for (int i = 1; i < dd; ++i) comp(i, i - 1) = 1.0;
            for (int i = 0; i < dd; ++i) comp(i, dd - 1) = -mon[static_cast<std::size_t>(i)];
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
            if (solver.info() != Eigen::Success) {
                throw Error(ErrorKind::NoConvergence, "companion eigenvalue iteration failed");
            }
            for (int i = 0; i < dd; ++i) {
                raw.push_back({P1Point::affine(solver.eigenvalues()(i) * scale), false});
            }
        }
    }
    return cluster_roots(p, std::move(raw), opts);
}

double tuple_scale(std::span<const cplx> x) {
    double s = 0.0;
    for (const cplx& v : x) s = std::max(s, std::abs(v));
    return s;
}

/// Nonzero 2x2 minors R_i x_j - R_j x_i; minors below rounding level count as zero.
std::vector<HomogPoly> preimage_minors(const MapTuple& t, std::span<const cplx> x) {
    const double xs = tuple_scale(x);
    if (xs == 0.0) throw Error(ErrorKind::ZeroVector, "target point has all coordinates zero");
    const double ts = t.sup_norm();
    const std::size_t m = static_cast<std::size_t>(t.degree()) + 1;
    std::vector<HomogPoly> out;
    for (int i = 0; i < t.n(); ++i) {
        for (int j = i + 1; j < t.n(); ++j) {
            std::vector<cplx> cf(m);
            double sup = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                cf[k] = t[static_cast<std::size_t>(i)][k] * x[static_cast<std::size_t>(j)] -
                        t[static_cast<std::size_t>(j)][k] * x[static_cast<std::size_t>(i)];
                sup = std::max(sup, std::abs(cf[k]));
            }
            if (sup <= 1e-13 * xs * ts) continue;
            out.emplace_back(std::move(cf));
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- P1Point

P1Point::P1Point(cplx a, cplx b) {
    const double s = std::max(std::abs(a), std::abs(b));
    if (s == 0.0 || !std::isfinite(s)) {
        throw Error(ErrorKind::ZeroVector, "projective point needs a nonzero finite coordinate");
    }
    a_ = a / s;
    b_ = b / s;
}

cplx P1Point::z() const {
    if (is_infinity()) throw Error(ErrorKind::InvalidArgument, "point at infinity has no chart 0 coordinate");
    return a_ / b_;
}

cplx P1Point::chart_coord(int chart) const {
    if (chart == 0) return z();
    if (a_ == 0.0) throw Error(ErrorKind::InvalidArgument, "point 0 has no chart 1 coordinate");
    return b_ / a_;
}

double P1Point::cross(const P1Point& other) const noexcept {
    return std::abs(a_ * other.b_ - other.a_ * b_);
}

// ---------------------------------------------------------------- HomogPoly

HomogPoly::HomogPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw Error(ErrorKind::InvalidArgument, "a polynomial needs degree + 1 coefficients");
}

HomogPoly HomogPoly::zero(int degree) {
    if (degree < 0) throw Error(ErrorKind::InvalidArgument, "negative degree");
    return HomogPoly(std::vector<cplx>(static_cast<std::size_t>(degree) + 1, 0.0));
}

HomogPoly HomogPoly::from_roots(std::span<const cplx> roots, cplx lead) {
    std::vector<cplx> c{lead};
    for (const cplx& r : roots) {
        std::vector<cplx> next(c.size() + 1, 0.0);
        for (std::size_t j = 0; j < c.size(); ++j) {
            next[j] += c[j];
            next[j + 1] -= r * c[j];
        }
        c = std::move(next);
    }
    return HomogPoly(std::move(c));
}

HomogPoly HomogPoly::monomial(int degree, int v_power) {
    if (v_power < 0 || v_power > degree) throw Error(ErrorKind::InvalidArgument, "monomial power out of range");
    auto p = zero(degree);
    p.coeffs_[static_cast<std::size_t>(v_power)] = 1.0;
    return p;
}

bool HomogPoly::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const cplx& c) { return c == 0.0; });
}

double HomogPoly::sup_norm() const noexcept { return tuple_scale(coeffs_); }

cplx HomogPoly::operator()(cplx u, cplx v) const {
    const int d = degree();
    std::vector<cplx> up(static_cast<std::size_t>(d) + 1, 1.0);
    std::vector<cplx> vp(static_cast<std::size_t>(d) + 1, 1.0);
    for (int i = 1; i <= d; ++i) {
        up[static_cast<std::size_t>(i)] = up[static_cast<std::size_t>(i - 1)] * u;
        vp[static_cast<std::size_t>(i)] = vp[static_cast<std::size_t>(i - 1)] * v;
    }
    cplx acc = 0.0;
    for (int j = 0; j <= d; ++j) {
        acc += coeffs_[static_cast<std::size_t>(j)] * up[static_cast<std::size_t>(d - j)] *
               vp[static_cast<std::size_t>(j)];
    }
    return acc;
}

cplx HomogPoly::eval_affine(cplx z) const { return horner_desc(coeffs_, z); }

std::pair<cplx, cplx> HomogPoly::eval_affine_with_derivative(cplx z) const {
    cplx f = 0.0;
    cplx df = 0.0;
    for (const cplx& c : coeffs_) {
        df = df * z + f;
        f = f * z + c;
    }
    return {f, df};
}

HomogPoly HomogPoly::swapped() const { return HomogPoly(std::vector<cplx>(coeffs_.rbegin(), coeffs_.rend())); }

HomogPoly HomogPoly::scaled(cplx s) const {
    auto c = coeffs_;
    for (auto& x : c) x *= s;
    return HomogPoly(std::move(c));
}

HomogPoly operator*(const HomogPoly& lhs, const HomogPoly& rhs) {
    std::vector<cplx> c(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
    for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) c[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
    }
    return HomogPoly(std::move(c));
}

HomogPoly operator+(const HomogPoly& lhs, const HomogPoly& rhs) {
    if (lhs.degree() != rhs.degree()) throw Error(ErrorKind::InvalidArgument, "sum of polynomials of different degree");
    auto c = lhs.coeffs_;
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += rhs.coeffs_[j];
    return HomogPoly(std::move(c));
}

cplx eval(const HomogPoly& p, const P1Point& pt) { return p.eval(pt); }

// ---------------------------------------------------------------- MapTuple

MapTuple::MapTuple(std::vector<HomogPoly> polys) : polys_(std::move(polys)) {
    if (polys_.size() < 2) throw Error(ErrorKind::InvalidArgument, "a map tuple needs at least two entries");
    const int d = polys_.front().degree();
    for (const auto& p : polys_) {
        if (p.degree() != d) throw Error(ErrorKind::InvalidArgument, "entries must share a common degree");
    }
    if (std::all_of(polys_.begin(), polys_.end(), [](const HomogPoly& p) { return p.is_zero(); })) {
        throw Error(ErrorKind::ZeroTuple, "all entries are zero");
    }
}

std::vector<cplx> MapTuple::eval(const P1Point& pt) const {
    std::vector<cplx> out;
    out.reserve(polys_.size());
    for (const auto& p : polys_) out.push_back(p.eval(pt));
    return out;
}

double MapTuple::sup_norm() const noexcept {
    double s = 0.0;
    for (const auto& p : polys_) s = std::max(s, p.sup_norm());
    return s;
}

MapTuple MapTuple::swapped() const {
    std::vector<HomogPoly> out;
    for (const auto& p : polys_) out.push_back(p.swapped());
    return MapTuple(std::move(out));
}

MapTuple MapTuple::scaled(cplx s) const {
    std::vector<HomogPoly> out;
    for (const auto& p : polys_) out.push_back(p.scaled(s));
    return MapTuple(std::move(out));
}

std::vector<cplx> MapTuple::flat() const {
    std::vector<cplx> out;
    for (const auto& p : polys_) out.insert(out.end(), p.coeffs().begin(), p.coeffs().end());
    return out;
}

MapTuple MapTuple::from_flat(int n, int degree, std::span<const cplx> flat) {
    const std::size_t m = static_cast<std::size_t>(degree) + 1;
    if (flat.size() != static_cast<std::size_t>(n) * m) {
        throw Error(ErrorKind::InvalidArgument, "flat coefficient vector has the wrong length");
    }
    std::vector<HomogPoly> polys;
    for (int i = 0; i < n; ++i) {
        polys.emplace_back(std::vector<cplx>(flat.begin() + static_cast<std::ptrdiff_t>(i * m),
                                             flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * m)));
    }
    return MapTuple(std::move(polys));
}

// ---------------------------------------------------------------- RationalCurve

RationalCurve::RationalCurve(MapTuple tuple) : tuple_(std::move(tuple)) {
    if (tuple_.degree() > 0 && !common_roots(tuple_.polys()).empty()) {
        throw Error(ErrorKind::NotCoprime, "entries share a common root");
    }
}

RationalCurve RationalCurve::swapped() const { return RationalCurve(tuple_.swapped(), Trusted{}); }

// ---------------------------------------------------------------- algorithms

std::vector<RootMult> roots(const HomogPoly& p, const RootOptions& opts) {
    std::vector<RootMult> out;
    for (const auto& c : root_clusters(p, opts)) out.push_back({c.pt, c.mult});
    return out;
}

std::vector<RootMult> common_roots(std::span<const HomogPoly> polys, const RootOptions& opts) {
    std::vector<std::vector<Cluster>> per;
    for (const auto& p : polys) {
        if (!p.is_zero()) per.push_back(root_clusters(p, opts));
    }
    if (per.empty()) throw Error(ErrorKind::ZeroTuple, "all entries are zero");

    std::vector<RootMult> out;
    for (const Cluster& cand : per.front()) {
        int mult = cand.mult;
        const int chart = cand.pt.preferred_chart();
        cplx xc;
        chart_coordinate(cand.pt, chart, xc);
        cplx wsum = xc * static_cast<double>(cand.mult);
        double wtot = cand.mult;
        bool exact = cand.pt.is_infinity() || cand.pt.a() == 0.0;
        for (std::size_t e = 1; e < per.size() && mult > 0; ++e) {
            int here = 0;
            for (const Cluster& other : per[e]) {
                const double tol = std::max({kPointTol, cand.radius, other.radius});
                if (cand.pt.cross(other.pt) > tol) continue;
                here += other.mult;
                cplx xo;
                if (chart_coordinate(other.pt, chart, xo)) {
                    wsum += xo * static_cast<double>(other.mult);
                    wtot += other.mult;
                }
            }
            mult = std::min(mult, here);
        }
        if (mult <= 0) continue;
        out.push_back({exact ? cand.pt : from_chart(chart, wsum / wtot), mult});
    }
    return out;
}

MapTuple divide_linear(const MapTuple& t, const P1Point& root, double& remainder) {
    const int d = t.degree();
    if (d < 1) throw Error(ErrorKind::InvalidArgument, "cannot divide a constant tuple by a linear factor");
    const int chart = root.preferred_chart();
    const cplx x0 = root.chart_coord(chart);
    std::vector<HomogPoly> out;
    for (const auto& p : t.polys()) {
        const HomogPoly q = chart == 0 ? p : p.swapped();
        const auto c = q.coeffs();
        std::vector<cplx> quot(static_cast<std::size_t>(d));
        cplx acc = 0.0;
        for (int j = 0; j < d; ++j) {
            acc = acc * x0 + c[static_cast<std::size_t>(j)];
            quot[static_cast<std::size_t>(j)] = acc;
        }
        remainder += std::abs(acc * x0 + c[static_cast<std::size_t>(d)]);
        HomogPoly hq(std::move(quot));
        out.push_back(chart == 0 ? hq : hq.swapped());
    }
    return MapTuple(std::move(out));
}

Factorization common_factor(const MapTuple& t, const RootOptions& opts) {
    Factorization f{{}, t, 0.0};
    if (t.degree() == 0) return f;
    f.roots = common_roots(t.polys(), opts);
    for (const auto& r : f.roots) {
        for (int i = 0; i < r.multiplicity; ++i) f.residual = divide_linear(f.residual, r.point, f.discarded_remainder);
    }
    return f;
}

MapTuple normalize(const MapTuple& t) {
    const double sup = t.sup_norm();
    if (sup == 0.0) throw Error(ErrorKind::ZeroTuple, "cannot normalize the zero tuple");
    cplx pivot = 0.0;
    std::size_t pi = 0;
    std::size_t pj = 0;
    bool found = false;
    for (std::size_t i = 0; i < static_cast<std::size_t>(t.n()) && !found; ++i) {
        const auto c = t[i].coeffs();
        for (std::size_t j = 0; j < c.size(); ++j) {
            if (std::abs(c[j]) >= sup * (1.0 - 1e-12)) {
                pivot = c[j];
                pi = i;
                pj = j;
                found = true;
                break;
            }
        }
    }
    const double mag = std::abs(pivot);
    const cplx factor = std::conj(pivot) / (mag * sup);
    std::vector<HomogPoly> out;
    for (std::size_t i = 0; i < static_cast<std::size_t>(t.n()); ++i) {
        std::vector<cplx> c(t[i].coeffs().begin(), t[i].coeffs().end());
        for (auto& x : c) x *= factor;
        if (i == pi) c[pj] = mag / sup;
        out.emplace_back(std::move(c));
    }
    return MapTuple(std::move(out));
}

MapTuple substitute_affine(const MapTuple& t, cplx a, cplx b) {
    if (b == 0.0) throw Error(ErrorKind::ZeroScale, "affine substitution needs a nonzero scale");
    std::vector<HomogPoly> out;
    for (const auto& p : t.polys()) {
        auto asc = taylor_shift(ascending(p.coeffs()), a);
        cplx bk = 1.0;
        for (auto& x : asc) {
            x *= bk;
            bk *= b;
        }
        out.emplace_back(std::vector<cplx>(asc.rbegin(), asc.rend()));
    }
    return normalize(MapTuple(std::move(out)));
}

int local_order(const RationalCurve& c, const P1Point& z0) {
    if (c.is_constant()) return 0;
    const auto x = c(z0);
    const auto minors = preimage_minors(c.tuple(), x);
    if (minors.empty()) return 0;
    const auto common = common_roots(minors, RootOptions{1e-13, kRootClusterTol});
    int best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (const auto& r : common) {
        const double dist = r.point.cross(z0);
        if (dist < best_dist) {
            best_dist = dist;
            best = r.multiplicity;
        }
    }
    return best;
}

std::vector<RootMult> preimages(const RationalCurve& c, std::span<const cplx> x) {
    if (c.is_constant()) throw Error(ErrorKind::ConstantCurve, "preimages of a constant curve");
    if (static_cast<int>(x.size()) != c.n()) throw Error(ErrorKind::InvalidArgument, "target point dimension mismatch");
    const auto minors = preimage_minors(c.tuple(), x);
    if (minors.empty()) throw Error(ErrorKind::ConstantCurve, "curve is constant at the target point");
    return common_roots(minors, RootOptions{1e-13, kRootClusterTol});
}

bool projectively_equal(const MapTuple& s, const MapTuple& t, double tol) {
    if (s.n() != t.n() || s.degree() != t.degree()) return false;
    auto fs = s.flat();
    auto ft = t.flat();
    const double ss = tuple_scale(fs);
    std::size_t k = 0;
    for (std::size_t i = 0; i < ft.size(); ++i) {
        if (std::abs(ft[i]) > std::abs(ft[k])) k = i;
    }
    const cplx lambda = fs[k] / ft[k];
    if (std::abs(lambda) == 0.0) return false;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (std::abs(fs[i] - lambda * ft[i]) > tol * ss) return false;
    }
    return true;
}

}  // namespace gromov
