#include "pathlab/transition.hpp"

#include <cmath>
#include <numbers>

#include "pathlab/action.hpp"

namespace pathlab {

KinematicQuantity KinematicQuantity::unit() {
    return KinematicQuantity(Tag::Unit, {1.0});
}
KinematicQuantity KinematicQuantity::position() {
    return KinematicQuantity(Tag::Position, {0.0, 1.0});
}
KinematicQuantity KinematicQuantity::position_squared() {
    return KinematicQuantity(Tag::PositionSquared, {0.0, 0.0, 1.0});
}
KinematicQuantity KinematicQuantity::potential_energy(const Potential& pot) {
    return KinematicQuantity(Tag::PotentialEnergy, pot.coefficients());
}
KinematicQuantity KinematicQuantity::polynomial(std::vector<double> coefficients) {
    return KinematicQuantity(Tag::Polynomial, std::move(coefficients));
}

double KinematicQuantity::evaluate(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string KinematicQuantity::name() const {
    switch (tag_) {
        case Tag::Unit: return "unit";
        case Tag::Position: return "position";
        case Tag::PositionSquared: return "position_squared";
        case Tag::PotentialEnergy: return "potential_energy";
        case Tag::Polynomial: return "polynomial";
    }
    return "unknown";
}

namespace {

void check_interior_slice(std::size_t slice_index, const TimeGrid& tg) {
    if (slice_index == 0 || slice_index >= tg.n_slices) {
        throw ValidationError("tau must be interior: slice index " +
                              std::to_string(slice_index) + " of " +
                              std::to_string(tg.n_slices) + " slices");
    }
}

// Forward vectors u_k(y) = K(y, tau_k; x_initial, t_start) for
// k = 1..n-1 and the matching backward vectors
// b_k(y) = K(x_final, t_end; y, tau_k), via single-slice sweeps.
struct Sweeps {
    std::vector<Eigen::VectorXcd> forward;   // index k-1 holds slice k
    std::vector<Eigen::VectorXcd> backward;  // index k-1 holds slice k
};

Sweeps make_sweeps(double x_initial, double x_final,
                   const SpaceGrid& sg, const TimeGrid& tg,
                   const Potential& pot, const PhysicalConstants& c) {
    const std::size_t i1 = sg.index_of(x_initial);
    const std::size_t i2 = sg.index_of(x_final);
    const Eigen::MatrixXcd m = propagation_step_matrix(sg, tg.dt, pot, c);
    const auto w = propagation_weights(sg);
    Eigen::MatrixXcd weighted = m;
    for (std::size_t j = 0; j < sg.n_points; ++j) weighted.col(j) *= w[j];

    const std::size_t n_interior = tg.n_slices - 1;
    Sweeps s;
    s.forward.resize(n_interior);
    s.backward.resize(n_interior);

    Eigen::VectorXcd u = m.col(static_cast<Eigen::Index>(i1));
    s.forward[0] = u;
    for (std::size_t k = 2; k <= n_interior; ++k) {
        u = weighted * u;
        s.forward[k - 1] = u;
    }

    // m is symmetric in (x_to, x_from); the backward sweep still uses the
    // transpose so the arithmetic mirrors the forward convolution.
    Eigen::VectorXcd b = m.transpose().col(static_cast<Eigen::Index>(i2));
    s.backward[n_interior - 1] = b;
    for (std::size_t k = n_interior - 1; k >= 1; --k) {
        Eigen::VectorXcd wb = b;
        for (std::size_t j = 0; j < sg.n_points; ++j) wb[j] *= w[j];
        b = m.transpose() * wb;
        s.backward[k - 1] = b;
    }
    return s;
}

Complex contract(const Eigen::VectorXcd& backward, const Eigen::VectorXcd& forward,
                 const KinematicQuantity& f, const SpaceGrid& sg) {
    const auto w = propagation_weights(sg);
    Complex acc = 0.0;
    for (std::size_t y = 0; y < sg.n_points; ++y) {
        acc += backward[y] * f.evaluate(sg.point(y)) * w[y] * forward[y];
    }
    return acc;
}

}  // namespace

Complex transition_quantity_insertion(const KinematicQuantity& f, std::size_t slice_index,
                                      double x_initial, double x_final,
                                      const SpaceGrid& sg, const TimeGrid& tg,
                                      const Potential& pot, const PhysicalConstants& c) {
    check_interior_slice(slice_index, tg);
    const Sweeps s = make_sweeps(x_initial, x_final, sg, tg, pot, c);
    return contract(s.backward[slice_index - 1], s.forward[slice_index - 1], f, sg);
}

Complex transition_quantity_brute_force(const KinematicQuantity& f, std::size_t slice_index,
                                        double x_initial, double x_final,
                                        const SpaceGrid& sg, const TimeGrid& tg,
                                        const Potential& pot, const PhysicalConstants& c,
                                        std::uint64_t cap) {
    check_interior_slice(slice_index, tg);
    const auto w = propagation_weights(sg);
    const Complex pref = std::polar(std::sqrt(c.mass / (2.0 * std::numbers::pi * c.hbar * tg.dt)),
                                    -std::numbers::pi / 4.0);
    Complex total = 0.0;
    for_each_lattice_path(sg, tg, x_initial, x_final, [&](const LatticePath& path) {
        Complex amp = std::polar(1.0, discrete_action(path, pot, tg, c) / c.hbar);
        for (std::size_t sl = 0; sl < tg.n_slices; ++sl) {
            amp *= pref * displacement_window(path.positions[sl + 1] - path.positions[sl],
                                              tg.dt, sg.dx, c);
        }
        for (std::size_t k = 1; k < tg.n_slices; ++k) {
            amp *= w[sg.index_of(path.positions[k])];
        }
        total += f.evaluate(path.positions[slice_index]) * amp;
    }, cap);
    return total;
}

TransitionQuantity transition_quantity_path(const KinematicQuantity& f,
                                            double x_initial, double x_final,
                                            const SpaceGrid& sg, const TimeGrid& tg,
                                            const Potential& pot, const PhysicalConstants& c) {
    if (tg.n_slices < 2) throw ValidationError("transition quantity needs n_slices >= 2");
    const Sweeps s = make_sweeps(x_initial, x_final, sg, tg, pot, c);
    const std::size_t n_interior = tg.n_slices - 1;

    TransitionQuantity tq;
    tq.x_initial = x_initial;
    tq.x_final = x_final;
    tq.provenance = KernelProvenance::Lattice;
    tq.tau.resize(n_interior);
    tq.samples.resize(n_interior);
    const KinematicQuantity one = KinematicQuantity::unit();
    for (std::size_t k = 1; k <= n_interior; ++k) {
        tq.tau[k - 1] = tg.node(k);
        tq.samples[k - 1] = contract(s.backward[k - 1], s.forward[k - 1], f, sg);
    }
    tq.kernel_value = contract(s.backward[0], s.forward[0], one, sg);
    return tq;
}

TransitionQuantity transition_coordinate_path(double x_initial, double x_final,
                                              const SpaceGrid& sg, const TimeGrid& tg,
                                              const Potential& pot, const PhysicalConstants& c) {
    return transition_quantity_path(KinematicQuantity::position(),
                                    x_initial, x_final, sg, tg, pot, c);
}

ModulusPhase modulus_and_phase(const TransitionQuantity& tq, double zero_eps) {
    ModulusPhase mp;
    mp.modulus.reserve(tq.samples.size());
    mp.phase.reserve(tq.samples.size());
    std::optional<double> prev;
    for (const Complex& z : tq.samples) {
        const double mod = std::abs(z);
        mp.modulus.push_back(mod);
        if (mod <= zero_eps) {
            mp.phase.push_back(std::nullopt);
            continue;
        }
        double phi = std::arg(z);
        if (prev) {
            // Nearest-branch continuation; ties keep the previous value's side.
            const double two_pi = 2.0 * std::numbers::pi;
            phi += two_pi * std::round((*prev - phi) / two_pi);
        }
        mp.phase.push_back(phi);
        prev = phi;
    }
    return mp;
}

}  // namespace pathlab
