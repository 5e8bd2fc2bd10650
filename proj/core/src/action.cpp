#include "pathlab/action.hpp"

namespace pathlab {

namespace {

void check_path(const LatticePath& path, const TimeGrid& tg) {
    if (path.positions.size() != tg.n_slices + 1) {
        throw ValidationError("path has " + std::to_string(path.positions.size()) +
                              " nodes but time grid expects " + std::to_string(tg.n_slices + 1));
    }
}

void check_interior(const TimeGrid& tg) {
    if (tg.n_slices < 2) {
        throw ValidationError("no interior points: n_slices must be at least 2");
    }
}

}  // namespace

double discrete_action(const LatticePath& path, const Potential& pot,
                       const TimeGrid& tg, const PhysicalConstants& c) {
    check_path(path, tg);
    const double dt = tg.dt;
    const double m = c.mass;
    double action = 0.0;
    for (std::size_t k = 0; k < tg.n_slices; ++k) {
        const double v = (path.positions[k + 1] - path.positions[k]) / dt;
        const double mid = 0.5 * (path.positions[k] + path.positions[k + 1]);
        action += (0.5 * m * v * v - pot.value(mid)) * dt;
    }
    return action;
}

std::vector<double> action_gradient(const LatticePath& path, const Potential& pot,
                                    const TimeGrid& tg, const PhysicalConstants& c) {
    check_path(path, tg);
    check_interior(tg);
    const double dt = tg.dt;
    const double m = c.mass;
    const auto& x = path.positions;
    std::vector<double> grad(tg.n_slices - 1);
    for (std::size_t k = 1; k < tg.n_slices; ++k) {
        const double mid_prev = 0.5 * (x[k - 1] + x[k]);
        const double mid_next = 0.5 * (x[k] + x[k + 1]);
        grad[k - 1] = m * (2.0 * x[k] - x[k - 1] - x[k + 1]) / dt -
                      0.5 * dt * (pot.derivative(mid_prev) + pot.derivative(mid_next));
    }
    return grad;
}

TridiagonalMatrix action_hessian(const LatticePath& path, const Potential& pot,
                                 const TimeGrid& tg, const PhysicalConstants& c) {
    check_path(path, tg);
    check_interior(tg);
    const double dt = tg.dt;
    const double m = c.mass;
    const auto& x = path.positions;
    const std::size_t n_interior = tg.n_slices - 1;

    TridiagonalMatrix h;
    h.diag.resize(n_interior);
    h.off_diag.resize(n_interior - 1);
    for (std::size_t k = 1; k < tg.n_slices; ++k) {
        const double mid_prev = 0.5 * (x[k - 1] + x[k]);
        const double mid_next = 0.5 * (x[k] + x[k + 1]);
        h.diag[k - 1] = 2.0 * m / dt -
                        0.25 * dt * (pot.second_derivative(mid_prev) +
                                     pot.second_derivative(mid_next));
        if (k < tg.n_slices - 1) {
            h.off_diag[k - 1] = -m / dt - 0.25 * dt * pot.second_derivative(mid_next);
        }
    }
    return h;
}

}  // namespace pathlab
