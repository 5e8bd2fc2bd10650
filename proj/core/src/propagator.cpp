#include "pathlab/propagator.hpp"

#include <cmath>
#include <numbers>

#include "pathlab/action.hpp"

namespace pathlab {

namespace {

constexpr double kPi = std::numbers::pi;

// sqrt(m/(2*pi*i*hbar*dt)) on the -pi/4 branch.
Complex slice_prefactor(double dt, const PhysicalConstants& c) {
    const double modulus = std::sqrt(c.mass / (2.0 * kPi * c.hbar * dt));
    return std::polar(modulus, -kPi / 4.0);
}

// C-infinity step: 0 for u <= 0, 1 for u >= 1, exp(-1/u)-glued in between.
double smooth_rise(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / u);
    const double b = std::exp(-1.0 / (1.0 - u));
    return a / (a + b);
}

Eigen::MatrixXcd apply_column_weights(const Eigen::MatrixXcd& m, const SpaceGrid& sg) {
    const auto w = propagation_weights(sg);
    Eigen::MatrixXcd out = m;
    for (std::size_t j = 0; j < sg.n_points; ++j) out.col(j) *= w[j];
    return out;
}

// a^e * b by binary powering; e >= 0.
Eigen::MatrixXcd power_times(const Eigen::MatrixXcd& a, std::size_t e, Eigen::MatrixXcd b) {
    Eigen::MatrixXcd base = a;
    while (e > 0) {
        if (e & 1u) b = base * b;
        e >>= 1u;
        if (e > 0) base = base * base;
    }
    return b;
}

}  // namespace

std::vector<double> propagation_weights(const SpaceGrid& sg) {
    auto w = sg.trapezoid_weights();
    const double band = 0.1 * (sg.x_max - sg.x_min);
    for (std::size_t i = 0; i < sg.n_points; ++i) {
        const double x = sg.point(i);
        const double dist = std::min(x - sg.x_min, sg.x_max - x);
        if (dist < band) w[i] *= smooth_rise(dist / band);
    }
    return w;
}

double displacement_window(double displacement, double dt, double dx,
                           const PhysicalConstants& c) {
    // Ghost (aliased) stationary points of the sampled chirp sit at
    // multiples of delta_g; the stationary region itself has width sigma.
    const double delta_g = 2.0 * kPi * c.hbar * dt / (c.mass * dx);
    const double sigma = std::sqrt(c.hbar * dt / c.mass);
    if (delta_g < 12.0 * sigma) return 1.0;  // scales unseparable: stay exact
    const double flat = delta_g / 3.0;
    const double cut = 2.0 * delta_g / 3.0;
    const double d = std::abs(displacement);
    if (d <= flat) return 1.0;
    if (d >= cut) return 0.0;
    return smooth_rise((cut - d) / (cut - flat));
}

double Wavefunction::norm_squared(const SpaceGrid& sg) const {
    const auto w = sg.trapezoid_weights();
    double acc = 0.0;
    for (std::size_t i = 0; i < sg.n_points; ++i) acc += std::norm(values[i]) * w[i];
    return acc;
}

Complex short_time_kernel(double x_to, double x_from, double dt,
                          const Potential& pot, const PhysicalConstants& c) {
    if (!(dt > 0.0)) throw ValidationError("short_time_kernel: dt must be positive");
    const double disp = x_to - x_from;
    const double phase = (c.mass * disp * disp / (2.0 * dt) -
                          dt * pot.value(0.5 * (x_to + x_from))) / c.hbar;
    return slice_prefactor(dt, c) * std::polar(1.0, phase);
}

Eigen::MatrixXcd short_time_kernel_matrix(const SpaceGrid& sg, double dt,
                                          const Potential& pot, const PhysicalConstants& c) {
    const std::size_t n = sg.n_points;
    Eigen::MatrixXcd m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = short_time_kernel(sg.point(i), sg.point(j), dt, pot, c);
        }
    }
    return m;
}

Eigen::MatrixXcd propagation_step_matrix(const SpaceGrid& sg, double dt,
                                         const Potential& pot, const PhysicalConstants& c) {
    Eigen::MatrixXcd m = short_time_kernel_matrix(sg, dt, pot, c);
    for (std::size_t i = 0; i < sg.n_points; ++i) {
        for (std::size_t j = 0; j < sg.n_points; ++j) {
            m(i, j) *= displacement_window(sg.point(i) - sg.point(j), dt, sg.dx, c);
        }
    }
    return m;
}

Kernel lattice_kernel(const SpaceGrid& sg, const TimeGrid& tg,
                      const Potential& pot, const PhysicalConstants& c) {
    c.validate();
    if (sg.n_points < 2 || tg.n_slices < 1) {
        throw ValidationError("lattice_kernel: degenerate grid");
    }
    const Eigen::MatrixXcd m = propagation_step_matrix(sg, tg.dt, pot, c);

    Kernel k;
    k.t_start = tg.t_start;
    k.t_end = tg.t_end;
    k.provenance = KernelProvenance::Lattice;
    k.dt = tg.dt;
    k.dx = sg.dx;
    if (tg.n_slices == 1) {
        k.values = m;
    } else {
        // K = (M W)^(n-1) M; the potential is stationary so every slice
        // shares one matrix and binary powering applies.
        const Eigen::MatrixXcd weighted = apply_column_weights(m, sg);
        k.values = power_times(weighted, tg.n_slices - 1, m);
    }
    return k;
}

Complex brute_force_kernel(const SpaceGrid& sg, const TimeGrid& tg,
                           const Potential& pot, const PhysicalConstants& c,
                           double x_initial, double x_final, std::uint64_t cap) {
    const auto w = propagation_weights(sg);
    const Complex pref = slice_prefactor(tg.dt, c);
    Complex total = 0.0;
    for_each_lattice_path(sg, tg, x_initial, x_final, [&](const LatticePath& path) {
        const double action = discrete_action(path, pot, tg, c);
        Complex amp = std::polar(1.0, action / c.hbar);
        for (std::size_t s = 0; s < tg.n_slices; ++s) {
            amp *= pref * displacement_window(path.positions[s + 1] - path.positions[s],
                                              tg.dt, sg.dx, c);
        }
        for (std::size_t k = 1; k < tg.n_slices; ++k) {
            amp *= w[sg.index_of(path.positions[k])];
        }
        total += amp;
    }, cap);
    return total;
}

Complex analytic_kernel_free(double x_to, double x_from, double duration,
                             const PhysicalConstants& c) {
    if (!(duration > 0.0)) throw ValidationError("analytic_kernel_free: duration must be positive");
    const double disp = x_to - x_from;
    return slice_prefactor(duration, c) *
           std::polar(1.0, c.mass * disp * disp / (2.0 * c.hbar * duration));
}

Complex analytic_kernel_harmonic(double x_to, double x_from, double duration,
                                 double omega, const PhysicalConstants& c,
                                 double caustic_eps) {
    if (!(duration > 0.0)) {
        throw ValidationError("analytic_kernel_harmonic: duration must be positive");
    }
    const double s = std::sin(omega * duration);
    if (std::abs(s) < caustic_eps) {
        throw NumericalError("focal point: sin(omega*T) vanishes at omega*T = " +
                             std::to_string(omega * duration));
    }
    const Complex i(0.0, 1.0);
    // Principal branch of the prefactor square root.
    const Complex pref = std::sqrt(c.mass * omega / (2.0 * kPi * c.hbar * s) / i);
    const double phase = c.mass * omega / (2.0 * c.hbar * s) *
                         ((x_from * x_from + x_to * x_to) * std::cos(omega * duration) -
                          2.0 * x_from * x_to);
    return pref * std::polar(1.0, phase);
}

Wavefunction evolve_wavefunction(const Wavefunction& psi, const Kernel& kernel,
                                 const SpaceGrid& sg) {
    if (psi.values.size() != kernel.values.cols() ||
        static_cast<std::size_t>(psi.values.size()) != sg.n_points) {
        throw ValidationError("evolve_wavefunction: grid mismatch");
    }
    const auto w = propagation_weights(sg);
    Eigen::VectorXcd weighted = psi.values;
    for (std::size_t i = 0; i < sg.n_points; ++i) weighted[i] *= w[i];

    Wavefunction out;
    out.values = kernel.values * weighted;
    out.time = psi.time + (kernel.t_end - kernel.t_start);
    return out;
}

Kernel compose_kernels(const Kernel& later, const Kernel& earlier, const SpaceGrid& sg) {
    if (later.values.cols() != earlier.values.rows() ||
        static_cast<std::size_t>(later.values.cols()) != sg.n_points) {
        throw ValidationError("compose_kernels: grid mismatch");
    }
    if (later.t_start != earlier.t_end) {
        throw ValidationError("compose_kernels: intervals do not share an endpoint");
    }
    Kernel k;
    k.values = apply_column_weights(later.values, sg) * earlier.values;
    k.t_start = earlier.t_start;
    k.t_end = later.t_end;
    k.provenance = KernelProvenance::Lattice;
    k.dt = earlier.dt;
    k.dx = sg.dx;
    return k;
}

double kernel_edge_leak(const Kernel& kernel, const SpaceGrid& sg) {
    const double band = 0.1 * (sg.x_max - sg.x_min);
    const double lo = sg.x_min + band;
    const double hi = sg.x_max - band;
    const auto w = sg.trapezoid_weights();
    double outer = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < sg.n_points; ++i) {
        for (std::size_t j = 0; j < sg.n_points; ++j) {
            const double mass = std::abs(kernel.values(i, j)) * w[i] * w[j];
            total += mass;
            if (sg.point(i) < lo || sg.point(i) > hi || sg.point(j) < lo || sg.point(j) > hi) {
                outer += mass;
            }
        }
    }
    return total > 0.0 ? outer / total : 0.0;
}

std::string provenance_name(KernelProvenance p) {
    switch (p) {
        case KernelProvenance::Lattice: return "lattice";
        case KernelProvenance::BruteForce: return "brute_force";
        case KernelProvenance::Analytic: return "analytic";
    }
    return "unknown";
}

}  // namespace pathlab
