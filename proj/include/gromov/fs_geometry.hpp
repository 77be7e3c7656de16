#ifndef GROMOV_FS_GEOMETRY_HPP
#define GROMOV_FS_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "gromov/poly.hpp"

namespace gromov {

/// Closed disk |x - center| <= r in chart coordinate x (z for chart 0, w = 1/z for chart 1).
struct Disk {
    cplx center = 0.0;
    double r = 1.0;
    int chart = 0;
};

struct Annulus {
    cplx center = 0.0;
    double r_in = 0.5;
    double r_out = 1.0;
    int chart = 0;
};

/// P^1 with pairwise disjoint disks removed.
struct SphereComplement {
    std::vector<Disk> holes;
};

struct FullSphere {};

using Region = std::variant<Disk, Annulus, SphereComplement, FullSphere>;

/// Throws InvalidArgument on nonpositive radii, bad charts or overlapping holes.
void validate_region(const Region& region);

struct EnergyResult {
    double value = 0.0;
    double err_estimate = 0.0;
    std::size_t cells = 0;
};

struct QuadratureOptions {
    std::size_t max_cells = std::size_t{1} << 20;
};

/// Round Fubini-Study distance arccos(|<p,q>| / (|p||q|)) in [0, pi/2].
double fs_distance(std::span<const cplx> p, std::span<const cplx> q);

/// Evaluates a curve and its derivative in one affine chart.
class ChartMap {
   public:
    ChartMap(const RationalCurve& c, int chart);

    int n() const noexcept { return static_cast<int>(desc_.size()); }
    /// Values r_i(x) and derivatives r_i'(x).
    void eval(cplx x, std::span<cplx> r, std::span<cplx> dr) const;
    /// Energy density per unit Lebesgue area in this chart.
    double density(cplx x) const;
    /// d/dx of log |r(x)|^2 (the holomorphic derivative).
    cplx dlog(cplx x) const;

   private:
    std::vector<std::vector<cplx>> desc_;
};

/// (1/pi) (|r|^2 |r'|^2 - |<r',r>|^2) / |r|^4; integrates to the degree over P^1.
double energy_density(const RationalCurve& c, cplx z, int chart);

/// Adaptive polar quadrature of the energy density with absolute error <= tol.
EnergyResult energy(const RationalCurve& c, const Region& region, double tol,
                    const QuadratureOptions& opts = {});

struct DensityMax {
    cplx point = 0.0;
    double value = 0.0;
};

/// Approximate argmax of the density over a Disk or Annulus.
DensityMax sup_density(const RationalCurve& c, const Region& region, int grid = 64, double rel_step = 1e-6);

/// Lower bound on the image diameter from a deterministic low-discrepancy sample.
double image_diameter(const RationalCurve& c, const Region& region, int samples);

struct Circle {
    cplx center = 0.0;
    double r = 1.0;
    int chart = 0;
};

/// Round Fubini-Study length of the image of the circle.
double boundary_length(const RationalCurve& c, const Circle& circle);

}  // namespace gromov

#endif
