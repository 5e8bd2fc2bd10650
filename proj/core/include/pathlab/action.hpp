#pragma once

#include <vector>

#include "pathlab/constants.hpp"
#include "pathlab/grid.hpp"
#include "pathlab/path.hpp"
#include "pathlab/potential.hpp"

namespace pathlab {

/// Symmetric tridiagonal matrix over the interior path nodes.
struct TridiagonalMatrix {
    std::vector<double> diag;      // size n
    std::vector<double> off_diag;  // size n-1

    std::size_t size() const { return diag.size(); }
};

/// Discrete action of a lattice path:
///   S = sum_k [ (m/2) ((x_{k+1}-x_k)/dt)^2 - V((x_k+x_{k+1})/2) ] dt
/// with the potential evaluated at segment midpoints. The midpoint rule
/// matches the short-time propagator kernel, so brute-force path sums and
/// lattice convolutions use identical phases.
double discrete_action(const LatticePath& path, const Potential& pot,
                       const TimeGrid& tg, const PhysicalConstants& c);

/// dS/dx_k for the interior nodes k = 1..n-1 (endpoints held fixed).
std::vector<double> action_gradient(const LatticePath& path, const Potential& pot,
                                    const TimeGrid& tg, const PhysicalConstants& c);

/// Exact second derivatives of the discrete action over interior nodes;
/// tridiagonal because each action term couples adjacent nodes only.
TridiagonalMatrix action_hessian(const LatticePath& path, const Potential& pot,
                                 const TimeGrid& tg, const PhysicalConstants& c);

}  // namespace pathlab
