#ifndef GROMOV_BUBBLE_HPP
#define GROMOV_BUBBLE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gromov/fs_geometry.hpp"
#include "gromov/poly.hpp"
#include "gromov/tree.hpp"

namespace gromov {

struct FamilySample {
    double k = 0.0;
    MapTuple tuple;
};

/// Samples k -> R_k of a sequence of degree-d maps, k strictly increasing.
struct CurveFamily {
    int n = 2;
    int d = 1;
    std::vector<FamilySample> samples;
    std::optional<MapTuple> declared_limit;

    /// Throws InvalidArgument / NotCoprime when the family is malformed.
    void validate() const;
};

struct LimitResult {
    MapTuple tuple;
    /// Sup-norm disagreement of the two last extrapolants (0 for a declared limit).
    double err = 0.0;
};

/// Coefficientwise Richardson extrapolation of the phase-aligned samples in 1/k.
LimitResult limit_with_error(const CurveFamily& fam, double tol = 1e-6);
MapTuple limit_tuple(const CurveFamily& fam, double tol = 1e-6);

struct BubbleMass {
    P1Point point;
    double mass = 0.0;
    int algebraic_mult = 0;
};

struct BubblePoints {
    std::vector<BubbleMass> bubbles;
    RationalCurve residual;
    double noise = 0.0;
};

BubblePoints bubble_points(const CurveFamily& fam, double tol = 1e-6);

struct MassProfile {
    std::vector<double> deltas;
    std::vector<double> ks;
    /// table[i][j] = E(f_{k_j}; B_{delta_i}(z*))
    std::vector<std::vector<double>> table;
    /// Per-delta limits in k from the two largest k.
    std::vector<double> per_delta;
    double estimate = 0.0;
    double uncertainty = 0.0;
};

MassProfile mass_profile(const CurveFamily& fam, const P1Point& z, std::span<const double> deltas, double tol);

struct DeltaOptions {
    double quad_tol = 1e-10;
    /// Starting radius for the bracket search.
    double guess = 1.0;
};

/// Radius delta with E(c; Disk(center, delta)) = mu, by safeguarded bisection in log delta.
double delta_for_mass(const RationalCurve& c, cplx center, double mu, double tol, const DeltaOptions& opts = {});

struct RescaleStep {
    std::vector<cplx> centers;
    std::vector<double> scales;
    double mu = 0.0;
    int chart = 0;
};

/// Per-sample substitution x = center_k + scale_k w in the given chart.
CurveFamily rescaled_family(const CurveFamily& fam, const RescaleStep& step);

struct BubbleConfig {
    double mass_tol = 0.05;
    double connect_tol = 1e-3;
    double quad_tol = 1e-7;
    double hbar = 1.0;
    double limit_tol = 1e-6;
    bool check_masses = true;
    std::vector<double> mass_deltas{0.2, 0.1, 0.05};
};

struct TreeComponent {
    int id = 0;
    int parent = -1;
    P1Point attach;
    RationalCurve map;
    int degree = 0;
    int mass = 0;  // energy carried by the whole branch
    double energy = 0.0;
    int depth = 0;
    RescaleStep step;
};

struct NodeGap {
    int child = 0;
    double gap = 0.0;
};

struct MassCheck {
    int component = 0;
    P1Point point;
    int algebraic_mult = 0;
    double estimate = 0.0;
    double uncertainty = 0.0;
    bool pass = false;
};

struct BubbleTree {
    int d = 0;
    SphereTree tree;
    std::vector<TreeComponent> components;
    std::vector<NodeGap> node_gaps;
    std::vector<MassCheck> mass_checks;
    int degree_sum = 0;
    double energy_sum = 0.0;
    double energy_tol = 0.0;
    StabilityResult stability;
    std::vector<std::string> diagnostics;

    bool degree_ok() const { return degree_sum == d; }
    bool energy_ok() const;
    bool gaps_ok(double connect_tol) const;
    bool masses_ok() const;
    /// Stability with the root exempt (reported as a diagnostic instead).
    bool stable_ok() const;
};

BubbleTree build_bubble_tree(const CurveFamily& fam, const BubbleConfig& cfg = {});

}  // namespace gromov

#endif
