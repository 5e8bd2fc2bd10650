#pragma once

#include <cstdint>

#include "pathlab/action.hpp"

namespace pathlab {

struct SolveOptions {
    double residual_tol = 1e-10;
    std::size_t max_iters = 50;
    // Halve a Newton step this many times at most when the action rises in
    // minimum-seeking mode.
    std::size_t max_halvings = 40;
    bool minimum_seeking = true;
    // Homotopy fallback: ramp the potential strength in this many stages
    // when the direct solve fails.
    std::size_t homotopy_stages = 4;
    // A stationary point counts as a conjugate point when the smallest
    // Hessian eigenvalue is this small relative to the free-particle
    // fundamental mode 4m/dt * sin^2(pi/(2n)).
    double conjugate_rel_tol = 1e-3;
};

struct MinimumCertificate {
    bool is_positive_definite_hessian = false;
    double smallest_eigenvalue = 0.0;
};

struct ClassicalPathResult {
    LatticePath path;            // continuous interior positions, fixed endpoints
    double action = 0.0;         // S at the solved path
    double stationarity_residual = 0.0;  // max |dS/dx_k|
    MinimumCertificate certificate;
    std::size_t iterations = 0;
};

/// Newton solve of the fixed-endpoint stationarity conditions dS/dx_k = 0
/// from the straight-line initial path, with step halving when the action
/// increases (minimum-seeking) and a potential-strength homotopy fallback.
ClassicalPathResult solve_classical_path(double x_initial, double x_final,
                                         const TimeGrid& tg, const Potential& pot,
                                         const PhysicalConstants& c,
                                         const SolveOptions& opts = {});

/// Max-norm of the action gradient.
double stationarity_residual(const LatticePath& path, const Potential& pot,
                             const TimeGrid& tg, const PhysicalConstants& c);

/// Fraction of random zero-endpoint perturbations of the solved path that
/// increase the action. 1.0 certifies an empirical minimum.
double perturbation_probe(const ClassicalPathResult& result, const Potential& pot,
                          const TimeGrid& tg, const PhysicalConstants& c,
                          double magnitude, std::size_t trials, std::uint64_t rng_seed);

/// Smallest eigenvalue of a symmetric tridiagonal matrix.
double smallest_eigenvalue(const TridiagonalMatrix& m);

/// Discrete energy per slice: kinetic from the segment velocity plus the
/// midpoint potential. Reported for conservation checks.
std::vector<double> slice_energies(const LatticePath& path, const Potential& pot,
                                   const TimeGrid& tg, const PhysicalConstants& c);

}  // namespace pathlab
