#ifndef GROMOV_NUMERICS_HPP
#define GROMOV_NUMERICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace gromov {

/// Neumaier compensated accumulator.
class NeumaierSum {
   public:
    void add(double x) noexcept;
    double value() const noexcept { return sum_ + comp_; }

   private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points; cached per n.
const GaussRule& gauss_legendre(int n);

/// Radical inverse of i in the given prime base (Halton sequence component).
double radical_inverse(std::size_t i, unsigned base) noexcept;

/// Least-squares line y = intercept + slope * x with the slope's standard error.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};
LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Neville evaluation at 0 of the interpolant through (h_i, f_i).
double neville_at_zero(std::span<const double> h, std::span<const double> f);

}  // namespace gromov

#endif
