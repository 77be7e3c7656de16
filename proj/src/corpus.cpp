#include "gromov/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gromov/errors.hpp"
#include "gromov/fs_geometry.hpp"

namespace gromov {

cplx disk_uniform(std::mt19937_64& rng) {
    const double r = std::sqrt(unit_uniform(rng));
    const double t = 2.0 * std::numbers::pi * unit_uniform(rng);
    return std::polar(r, t);
}

namespace {

HomogPoly random_poly(std::mt19937_64& rng, int d) {
    std::vector<cplx> c(static_cast<std::size_t>(d + 1));
    for (auto& x : c) x = disk_uniform(rng);
    return HomogPoly(std::move(c));
}

bool coprime(const MapTuple& t) {
    try {
        RationalCurve c(t);
        return true;
    } catch (const Error&) {
        return false;
    }
}

double chordal(const P1Point& p, const P1Point& q) {
    const cplx x[2] = {p.a(), p.b()};
    const cplx y[2] = {q.a(), q.b()};
    return std::sin(fs_distance(x, y));
}

}  // namespace

MapTuple random_coprime_tuple(std::mt19937_64& rng, int n, int d) {
    for (;;) {
        std::vector<HomogPoly> ps;
        for (int i = 0; i < n; ++i) ps.push_back(random_poly(rng, d));
        MapTuple t(std::move(ps));
        if (d == 0 || coprime(t)) return t;
    }
}

std::vector<RationalCurve> Corpus::curves() const {
    std::mt19937_64 rng(seed);
    std::vector<RationalCurve> out;
    for (int i = 0; i < count; ++i) {
        const int n = min_n + static_cast<int>(rng() % static_cast<unsigned>(max_n - min_n + 1));
        const int d = min_degree + static_cast<int>(rng() % static_cast<unsigned>(max_degree - min_degree + 1));
        out.emplace_back(random_coprime_tuple(rng, n, d));
    }
    return out;
}

PlantedFamily planted_family(std::mt19937_64& rng, const PlantedOptions& opts) {
    for (;;) {
        const int n = 2 + static_cast<int>(rng() % static_cast<unsigned>(opts.max_n - 1));
        const int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(opts.max_degree));
        const int D = 1 + static_cast<int>(rng() % static_cast<unsigned>(d));
        const int d0 = d - D;

        // split D into multiplicities at separated points
        std::vector<PlantedPoint> pts;
        int left = D;
        bool ok = true;
        while (left > 0 && ok) {
            const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(left));
            P1Point p = P1Point::affine(0.0);
            bool placed = false;
            for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
                p = unit_uniform(rng) < opts.infinity_probability ? P1Point::infinity()
                                                                   : P1Point::affine(disk_uniform(rng));
                placed = true;
                for (const auto& q : pts) placed = placed && chordal(p, q.point) >= opts.min_separation;
            }
            if (!placed) ok = false;
            pts.push_back({p, m});
            left -= m;
        }
        if (!ok) continue;

        const MapTuple S = random_coprime_tuple(rng, n, d0);
        const MapTuple T = random_coprime_tuple(rng, n, d0);
        // S must not vanish at a planted point, or the multiplicity there grows
        bool clear = true;
        for (const auto& p : pts) {
            double v = 0.0;
            for (const cplx& x : S.eval(p.point)) v = std::max(v, std::abs(x));
            clear = clear && v > 0.1 * S.sup_norm();
        }
        if (!clear) continue;

        std::vector<std::vector<std::vector<cplx>>> shifts(static_cast<std::size_t>(n));
        for (auto& row : shifts) {
            for (const auto& p : pts) {
                std::vector<cplx> cs;
                for (int q = 0; q < p.multiplicity; ++q) cs.push_back(disk_uniform(rng));
                row.push_back(std::move(cs));
            }
        }

        auto sample = [&](double k) {
            std::vector<HomogPoly> ps;
            for (int i = 0; i < n; ++i) {
                std::vector<cplx> sc(S[static_cast<std::size_t>(i)].coeffs().begin(),
                                     S[static_cast<std::size_t>(i)].coeffs().end());
                const auto tc = T[static_cast<std::size_t>(i)].coeffs();
                for (std::size_t j = 0; j < sc.size(); ++j) sc[j] += tc[j] / k;
                HomogPoly poly(std::move(sc));
                for (std::size_t j = 0; j < pts.size(); ++j) {
                    for (const cplx& c : shifts[static_cast<std::size_t>(i)][j]) {
                        const HomogPoly lin = pts[j].point.is_infinity()
                                                  ? HomogPoly({-c / k, 1.0})
                                                  : HomogPoly({1.0, -(pts[j].point.z() + c / k)});
                        poly = poly * lin;
                    }
                }
                ps.push_back(std::move(poly));
            }
            return MapTuple(std::move(ps));
        };

        std::vector<double> ks = opts.ks;
        if (ks.empty()) {
            int m_max = 1;
            for (const auto& p : pts) m_max = std::max(m_max, p.multiplicity);
            const double k_max = std::min(1e5, std::pow(10.0, 9.0 / m_max));
            const double ratio = std::min(10.0, std::pow(k_max / 50.0, 0.25));
            for (int j = 4; j >= 0; --j) ks.push_back(k_max / std::pow(ratio, j));
        }

        CurveFamily fam;
        fam.n = n;
        fam.d = d;
        bool good = true;
        for (double k : ks) {
            MapTuple t = sample(k);
            if (!coprime(t)) {
                good = false;
                break;
            }
            fam.samples.push_back({k, std::move(t)});
        }
        if (!good) continue;
        return {std::move(fam), std::move(pts), normalize(S)};
    }
}

}  // namespace gromov
