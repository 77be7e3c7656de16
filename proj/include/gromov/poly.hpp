#ifndef GROMOV_POLY_HPP
#define GROMOV_POLY_HPP

#include <complex>
#include <span>
#include <utility>
#include <vector>

namespace gromov {

using cplx = std::complex<double>;

/// Projective point tolerance used for root matching and attachment points.
inline constexpr double kPointTol = 1e-6;
/// Base radius for grouping numerically computed roots into one multiple root.
inline constexpr double kRootClusterTol = 1e-6;

/// A point [a, b] of P^1, stored with max(|a|, |b|) = 1. The affine chart 0
/// coordinate is z = a / b, chart 1 is w = b / a.
class P1Point {
   public:
    P1Point() : a_(0.0), b_(1.0) {}
    P1Point(cplx a, cplx b);

    static P1Point affine(cplx z) { return P1Point(z, 1.0); }
    static P1Point infinity() { return P1Point(1.0, 0.0); }

    cplx a() const noexcept { return a_; }
    cplx b() const noexcept { return b_; }

    bool is_infinity() const noexcept { return b_ == 0.0; }
    /// Chart 0 coordinate; throws for the point at infinity.
    cplx z() const;
    cplx chart_coord(int chart) const;
    /// The chart in which this point has coordinate of modulus at most one.
    int preferred_chart() const noexcept { return std::abs(a_) <= std::abs(b_) ? 0 : 1; }

    /// |a b' - a' b| on max-normalized representatives.
    double cross(const P1Point& other) const noexcept;
    bool equals(const P1Point& other, double tol = kPointTol) const noexcept {
        return cross(other) <= tol;
    }

   private:
    cplx a_;
    cplx b_;
};

/// Degree-d homogeneous polynomial in (u, v); coeffs[j] multiplies u^(d-j) v^j.
/// The all-zero coefficient vector is the zero-polynomial sentinel.
class HomogPoly {
   public:
    HomogPoly() : coeffs_(1, cplx(0.0)) {}
    explicit HomogPoly(std::vector<cplx> coeffs);

    static HomogPoly zero(int degree);
    /// Product of linear factors (u - z_i v) times a constant.
    static HomogPoly from_roots(std::span<const cplx> roots, cplx lead = 1.0);
    static HomogPoly monomial(int degree, int v_power);

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    const cplx& operator[](std::size_t j) const { return coeffs_[j]; }
    bool is_zero() const noexcept;
    double sup_norm() const noexcept;

    cplx operator()(cplx u, cplx v) const;
    cplx eval(const P1Point& pt) const { return (*this)(pt.a(), pt.b()); }
    /// p(z, 1) and its z-derivative by Horner's scheme.
    cplx eval_affine(cplx z) const;
    std::pair<cplx, cplx> eval_affine_with_derivative(cplx z) const;

    /// p(v, u): the same polynomial seen from chart 1.
    HomogPoly swapped() const;
    HomogPoly scaled(cplx s) const;

    friend HomogPoly operator*(const HomogPoly& lhs, const HomogPoly& rhs);
    friend HomogPoly operator+(const HomogPoly& lhs, const HomogPoly& rhs);

   private:
    std::vector<cplx> coeffs_;
};

/// An n-tuple (n >= 2) of homogeneous polynomials of one common degree,
/// not all zero; a representative of a point of X_{n,d}.
class MapTuple {
   public:
    explicit MapTuple(std::vector<HomogPoly> polys);

    int n() const noexcept { return static_cast<int>(polys_.size()); }
    int degree() const noexcept { return polys_.front().degree(); }
    const std::vector<HomogPoly>& polys() const noexcept { return polys_; }
    const HomogPoly& operator[](std::size_t i) const { return polys_[i]; }

    std::vector<cplx> eval(const P1Point& pt) const;
    double sup_norm() const noexcept;
    MapTuple swapped() const;
    MapTuple scaled(cplx s) const;
    /// All coefficients, entry-major, u-descending.
    std::vector<cplx> flat() const;
    static MapTuple from_flat(int n, int degree, std::span<const cplx> flat);

   private:
    std::vector<HomogPoly> polys_;
};

/// A MapTuple whose entries have no common root on P^1: a holomorphic map
/// P^1 -> P^(n-1) of degree d.
class RationalCurve {
   public:
    /// Throws NotCoprime if the entries share a root.
    explicit RationalCurve(MapTuple tuple);

    const MapTuple& tuple() const noexcept { return tuple_; }
    int n() const noexcept { return tuple_.n(); }
    int degree() const noexcept { return tuple_.degree(); }
    bool is_constant() const noexcept { return tuple_.degree() == 0; }
    std::vector<cplx> operator()(const P1Point& pt) const { return tuple_.eval(pt); }
    /// The curve precomposed with z -> 1/z.
    RationalCurve swapped() const;
    /// Skips the coprimality test; for tuples coprime by construction, such
    /// as reparametrizations of a curve.
    static RationalCurve unchecked(MapTuple tuple) { return RationalCurve(std::move(tuple), Trusted{}); }

   private:
    struct Trusted {};
    RationalCurve(MapTuple tuple, Trusted) : tuple_(std::move(tuple)) {}
    MapTuple tuple_;
};

struct RootMult {
    P1Point point;
    int multiplicity = 0;
};

struct Factorization {
    std::vector<RootMult> roots;
    MapTuple residual;
    /// Sum of the remainders discarded by the synthetic divisions.
    double discarded_remainder = 0.0;
};

/// Options for root clustering. `noise` is the relative coefficient error of
/// the input (e.g. an extrapolation error estimate); rounding is always
/// accounted for.
struct RootOptions {
    double noise = 0.0;
    double cluster_tol = kRootClusterTol;
};

cplx eval(const HomogPoly& p, const P1Point& pt);

/// Exactly degree(p) roots counted with multiplicity, sorted deterministically.
std::vector<RootMult> roots(const HomogPoly& p, const RootOptions& opts = {});

/// Common roots of several polynomials with multiplicities = min over the
/// nonzero entries; zero entries impose no condition.
std::vector<RootMult> common_roots(std::span<const HomogPoly> polys, const RootOptions& opts = {});

Factorization common_factor(const MapTuple& t, const RootOptions& opts = {});

/// Sup-norm one, with the first coefficient attaining the sup real positive.
MapTuple normalize(const MapTuple& t);

/// R(b w_u + a w_v, w_v): the map precomposed with z = a + b w, renormalized.
MapTuple substitute_affine(const MapTuple& t, cplx a, cplx b);

/// Divide every entry once by the linear factor vanishing at `root`.
/// Returns the quotient and adds the remainder size to `remainder`.
MapTuple divide_linear(const MapTuple& t, const P1Point& root, double& remainder);

/// Smallest l >= 1 with a nonvanishing l-th derivative at z0; 0 for constants.
int local_order(const RationalCurve& c, const P1Point& z0);

/// Solutions of c(z) = x with multiplicities; their sum is ord_x c.
std::vector<RootMult> preimages(const RationalCurve& c, std::span<const cplx> x);

/// Projective equality of tuples: all 2x2 coefficient minors vanish to tol.
bool projectively_equal(const MapTuple& s, const MapTuple& t, double tol);

}  // namespace gromov

#endif
