#include "pathlab/grid.hpp"

#include <cmath>
#include <string>

namespace pathlab {

TimeGrid build_time_grid(double t_start, double t_end, std::size_t n_slices) {
    if (!(t_end > t_start)) {
        throw ValidationError("time grid: non-positive interval (t_end must exceed t_start)");
    }
    if (n_slices < 1) {
        throw ValidationError("time grid: n_slices must be at least 1");
    }
    TimeGrid tg;
    tg.t_start = t_start;
    tg.t_end = t_end;
    tg.n_slices = n_slices;
    tg.dt = (t_end - t_start) / static_cast<double>(n_slices);
    return tg;
}

SpaceGrid build_space_grid(double x_min, double x_max, std::size_t n_points) {
    if (!(x_max > x_min)) {
        throw ValidationError("space grid: x_max must exceed x_min");
    }
    if (n_points < 2) {
        throw ValidationError("space grid: n_points must be at least 2");
    }
    SpaceGrid sg;
    sg.x_min = x_min;
    sg.x_max = x_max;
    sg.n_points = n_points;
    sg.dx = (x_max - x_min) / static_cast<double>(n_points - 1);
    return sg;
}

std::size_t SpaceGrid::index_of(double x, double tol) const {
    const double pos = (x - x_min) / dx;
    const double rounded = std::round(pos);
    if (rounded < 0.0 || rounded > static_cast<double>(n_points - 1) ||
        std::abs(pos - rounded) > tol) {
        throw ValidationError("coordinate " + std::to_string(x) + " is not a grid point");
    }
    return static_cast<std::size_t>(rounded);
}

std::vector<double> SpaceGrid::trapezoid_weights() const {
    std::vector<double> w(n_points, dx);
    w.front() = 0.5 * dx;
    w.back() = 0.5 * dx;
    return w;
}

}  // namespace pathlab
