#ifndef GROMOV_CORPUS_HPP
#define GROMOV_CORPUS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "gromov/bubble.hpp"
#include "gromov/poly.hpp"

namespace gromov {

/// Seeded generator of random curves with coefficients uniform in the unit disk.
struct Corpus {
    std::uint64_t seed = 1;
    int count = 100;
    int min_degree = 1;
    int max_degree = 4;
    int min_n = 2;
    int max_n = 3;

    std::vector<RationalCurve> curves() const;
};

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform point of the unit disk.
cplx disk_uniform(std::mt19937_64& rng);

/// Random coprime tuple of the given shape (retries until coprime).
MapTuple random_coprime_tuple(std::mt19937_64& rng, int n, int d);

struct PlantedPoint {
    P1Point point;
    int multiplicity = 1;
};

/// A family R_k whose limit has prescribed common roots.
struct PlantedFamily {
    CurveFamily family;
    std::vector<PlantedPoint> planted;
    MapTuple residual_limit;
};

struct PlantedOptions {
    int max_degree = 4;
    int max_n = 3;
    /// Empty: five values from 50 to min(1e5, 10^(9/m)) for the largest planted
    /// multiplicity m, so the clusters stay resolvable in double precision.
    std::vector<double> ks;
    double min_separation = 0.2;  // chordal
    double infinity_probability = 0.15;
};

/// Entry i is prod_j prod_p (u - (z_j + c_ijp/k) v) * (S_i + T_i/k), with
/// (v - (c/k) u) factors for a planted point at infinity.
PlantedFamily planted_family(std::mt19937_64& rng, const PlantedOptions& opts = {});

}  // namespace gromov

#endif
