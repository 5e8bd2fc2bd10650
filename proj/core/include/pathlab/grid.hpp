#pragma once

#include <cstddef>
#include <vector>

#include "pathlab/errors.hpp"

namespace pathlab {

/// Uniform time lattice over [t_start, t_end] with n_slices intervals
/// (n_slices + 1 nodes).
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    std::size_t n_slices = 0;
    double dt = 0.0;

    std::size_t n_nodes() const { return n_slices + 1; }
    double node(std::size_t k) const { return t_start + static_cast<double>(k) * dt; }
    double duration() const { return t_end - t_start; }
};

TimeGrid build_time_grid(double t_start, double t_end, std::size_t n_slices);

/// Uniform spatial lattice over [x_min, x_max] with n_points nodes.
struct SpaceGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;
    double dx = 0.0;

    double point(std::size_t i) const { return x_min + static_cast<double>(i) * dx; }

    /// Index of the grid node nearest to x; throws if x is not a grid
    /// point to within tol*dx.
    std::size_t index_of(double x, double tol = 1e-9) const;

    /// Trapezoid quadrature weights: dx everywhere, dx/2 at the two ends.
    std::vector<double> trapezoid_weights() const;
};

SpaceGrid build_space_grid(double x_min, double x_max, std::size_t n_points);

}  // namespace pathlab
