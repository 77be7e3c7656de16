#ifndef GROMOV_LAB_HPP
#define GROMOV_LAB_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gromov/corpus.hpp"
#include "gromov/fs_geometry.hpp"
#include "gromov/numerics.hpp"
#include "gromov/poly.hpp"

namespace gromov {

struct Assertion {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool pass = false;
};

/// Raw table, optional least-squares fit on a log scale, and pass flags.
struct FitReport {
    std::string check;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::optional<LineFit> fit;
    /// 95% interval for the fitted slope.
    double slope_low = 0.0;
    double slope_high = 0.0;
    std::vector<Assertion> assertions;
    std::vector<std::string> notes;

    bool pass() const;
};

/// 2 rho(0) pi R^2 / (16 E(B_R)), or 0 when the curve is constant.
double mean_value_ratio(const RationalCurve& c, double R, double tol = 1e-10);

/// Each corpus curve is shrunk (z -> s z, s halving) until E(B_R) <= energy_cap.
FitReport mean_value_report(const Corpus& corpus, double R, double energy_cap = 0.1);

/// Energy of the preimage of the energy-metric ball B_delta(x), by quadrature
/// over star-shaped neighbourhoods of the preimage points.
double preimage_ball_energy(const RationalCurve& c, std::span<const cplx> x, double delta);

/// Largest radius up to 1e-2 at which the preimage neighbourhoods of x stay
/// well separated.
double order_limit_radius(const RationalCurve& c, std::span<const cplx> x);

/// Sum of local orders over the preimages of x.
int target_order(const RationalCurve& c, std::span<const cplx> x);

FitReport order_limit_check(const RationalCurve& c, std::span<const cplx> x, std::span<const double> deltas);

/// Profile E / (pi delta^2) with a fit of log R against delta^2 for the weight exp(-C delta^2).
FitReport monotonicity_profile(const RationalCurve& c, std::span<const cplx> x, std::span<const double> deltas);

/// Energy of the middle annulus exp(T) r_in <= |z - center| <= exp(-T) r_out for each T,
/// with the slope of log E against T.
FitReport cylinder_decay_fit(const RationalCurve& c, cplx center, double r_in, double r_out,
                             std::span<const double> T_values,
                             std::optional<std::pair<double, double>> slope_window = std::nullopt);

/// E(B_r) / l(gamma_r)^2 with lengths in the energy metric.
FitReport isoperimetric_report(const RationalCurve& c, cplx center, std::span<const double> radii);

/// Fourier coefficients a_k for k = -K..K, stored at index k + K.
FitReport poincare_check(std::span<const cplx> coeffs);

/// Corpus-level harnesses used by the verify command and the acceptance run.
FitReport verify_mean_value(std::uint64_t seed, int samples);
FitReport verify_order_limit(std::uint64_t seed, int samples);
FitReport verify_cylinder(std::uint64_t seed, int samples);
FitReport verify_isoperimetric(std::uint64_t seed, int samples);
FitReport verify_poincare(std::uint64_t seed, int samples);

}  // namespace gromov

#endif
