#include "pathlab/classical_path.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace pathlab {

namespace {

// Thomas solve of (tridiagonal) h * x = rhs. Throws on a vanishing pivot.
std::vector<double> solve_tridiagonal(const TridiagonalMatrix& h, std::vector<double> rhs) {
    const std::size_t n = h.size();
    std::vector<double> diag = h.diag;
    double scale = 0.0;
    for (double d : diag) scale = std::max(scale, std::abs(d));
    for (std::size_t k = 1; k < n; ++k) {
        if (std::abs(diag[k - 1]) < 1e-14 * std::max(scale, 1.0)) {
            throw NumericalError("conjugate point encountered: singular Hessian pivot");
        }
        const double f = h.off_diag[k - 1] / diag[k - 1];
        diag[k] -= f * h.off_diag[k - 1];
        rhs[k] -= f * rhs[k - 1];
    }
    if (std::abs(diag[n - 1]) < 1e-14 * std::max(scale, 1.0)) {
        throw NumericalError("conjugate point encountered: singular Hessian pivot");
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t k = n - 1; k-- > 0;) {
        x[k] = (rhs[k] - h.off_diag[k] * x[k + 1]) / diag[k];
    }
    return x;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// One Newton run at fixed potential; returns false on non-convergence.
bool newton_run(LatticePath& path, const Potential& pot, const TimeGrid& tg,
                const PhysicalConstants& c, const SolveOptions& opts,
                std::size_t& iters_out, double& residual_out) {
    std::vector<double> grad = action_gradient(path, pot, tg, c);
    double residual = max_abs(grad);
    for (std::size_t iter = 0; iter < opts.max_iters; ++iter) {
        if (residual < opts.residual_tol) {
            iters_out = iter;
            residual_out = residual;
            return true;
        }
        const TridiagonalMatrix h = action_hessian(path, pot, tg, c);
        std::vector<double> rhs(grad.size());
        for (std::size_t k = 0; k < grad.size(); ++k) rhs[k] = -grad[k];
        const std::vector<double> step = solve_tridiagonal(h, std::move(rhs));

        const double action_before = discrete_action(path, pot, tg, c);
        LatticePath trial = path;
        double alpha = 1.0;
        bool accepted = false;
        for (std::size_t halving = 0; halving <= opts.max_halvings; ++halving) {
            for (std::size_t k = 0; k < step.size(); ++k) {
                trial.positions[k + 1] = path.positions[k + 1] + alpha * step[k];
            }
            const std::vector<double> trial_grad = action_gradient(trial, pot, tg, c);
            const double trial_residual = max_abs(trial_grad);
            // Always accept a gradient-norm decrease; that is what carries
            // Newton to stationary saddles past a conjugate point. In
            // minimum-seeking mode additionally back off while the action
            // rises without improving the residual.
            const bool action_ok = !opts.minimum_seeking ||
                                   discrete_action(trial, pot, tg, c) <= action_before ||
                                   trial_residual < residual;
            if (trial_residual < residual && action_ok) {
                path = trial;
                grad = trial_grad;
                residual = trial_residual;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) {
            iters_out = iter + 1;
            residual_out = residual;
            return false;
        }
    }
    iters_out = opts.max_iters;
    residual_out = residual;
    return residual < opts.residual_tol;
}

}  // namespace

double smallest_eigenvalue(const TridiagonalMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        dense(k, k) = m.diag[static_cast<std::size_t>(k)];
        if (k + 1 < n) {
            dense(k, k + 1) = m.off_diag[static_cast<std::size_t>(k)];
            dense(k + 1, k) = m.off_diag[static_cast<std::size_t>(k)];
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
    return solver.eigenvalues()(0);
}

double stationarity_residual(const LatticePath& path, const Potential& pot,
                             const TimeGrid& tg, const PhysicalConstants& c) {
    return max_abs(action_gradient(path, pot, tg, c));
}

ClassicalPathResult solve_classical_path(double x_initial, double x_final,
                                         const TimeGrid& tg, const Potential& pot,
                                         const PhysicalConstants& c,
                                         const SolveOptions& opts) {
    c.validate();
    if (tg.n_slices < 2) throw ValidationError("classical path solve needs n_slices >= 2");

    LatticePath path = make_straight_line_path(x_initial, x_final, tg.n_slices);
    std::size_t iters = 0;
    double residual = 0.0;
    bool ok = newton_run(path, pot, tg, c, opts, iters, residual);

    if (!ok && opts.homotopy_stages > 0) {
        // Ramp the potential strength from zero, warm-starting each stage.
        path = make_straight_line_path(x_initial, x_final, tg.n_slices);
        ok = true;
        for (std::size_t stage = 1; stage <= opts.homotopy_stages && ok; ++stage) {
            const double s = static_cast<double>(stage) / static_cast<double>(opts.homotopy_stages);
            ok = newton_run(path, pot.scaled(s), tg, c, opts, iters, residual);
        }
        if (ok) residual = stationarity_residual(path, pot, tg, c);
        ok = ok && residual < opts.residual_tol;
    }
    if (!ok) {
        throw NumericalError("classical path solve did not converge; last residual " +
                             std::to_string(residual));
    }

    const TridiagonalMatrix h = action_hessian(path, pot, tg, c);
    const double lambda_min = smallest_eigenvalue(h);
    const double n = static_cast<double>(tg.n_slices);
    const double s = std::sin(std::numbers::pi / (2.0 * n));
    const double fundamental = 4.0 * c.mass / tg.dt * s * s;
    if (std::abs(lambda_min) < opts.conjugate_rel_tol * fundamental) {
        throw NumericalError("conjugate point encountered: fluctuation Hessian is degenerate "
                             "(smallest eigenvalue " + std::to_string(lambda_min) + ")");
    }

    ClassicalPathResult result;
    result.path = std::move(path);
    result.action = discrete_action(result.path, pot, tg, c);
    result.stationarity_residual = residual;
    result.certificate.smallest_eigenvalue = lambda_min;
    result.certificate.is_positive_definite_hessian = lambda_min > 0.0;
    result.iterations = iters;
    return result;
}

double perturbation_probe(const ClassicalPathResult& result, const Potential& pot,
                          const TimeGrid& tg, const PhysicalConstants& c,
                          double magnitude, std::size_t trials, std::uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::size_t n_interior = tg.n_slices - 1;
    std::size_t increased = 0;
    LatticePath perturbed = result.path;
    for (std::size_t t = 0; t < trials; ++t) {
        for (std::size_t k = 0; k < n_interior; ++k) {
            perturbed.positions[k + 1] = result.path.positions[k + 1] + magnitude * unit(rng);
        }
        if (discrete_action(perturbed, pot, tg, c) > result.action) ++increased;
    }
    return trials > 0 ? static_cast<double>(increased) / static_cast<double>(trials) : 0.0;
}

std::vector<double> slice_energies(const LatticePath& path, const Potential& pot,
                                   const TimeGrid& tg, const PhysicalConstants& c) {
    std::vector<double> energies(tg.n_slices);
    for (std::size_t k = 0; k < tg.n_slices; ++k) {
        const double v = (path.positions[k + 1] - path.positions[k]) / tg.dt;
        const double mid = 0.5 * (path.positions[k] + path.positions[k + 1]);
        energies[k] = 0.5 * c.mass * v * v + pot.value(mid);
    }
    return energies;
}

}  // namespace pathlab
