#pragma once

#include <optional>
#include <vector>

#include "pathlab/propagator.hpp"

namespace pathlab {

/// Classical kinematic quantity f(x), restricted to functions of the
/// coordinate. Stored as a polynomial in x.
class KinematicQuantity {
public:
    enum class Tag { Unit, Position, PositionSquared, PotentialEnergy, Polynomial };

    static KinematicQuantity unit();
    static KinematicQuantity position();
    static KinematicQuantity position_squared();
    static KinematicQuantity potential_energy(const Potential& pot);
    static KinematicQuantity polynomial(std::vector<double> coefficients);

    double evaluate(double x) const;
    Tag tag() const { return tag_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    std::string name() const;

private:
    KinematicQuantity(Tag tag, std::vector<double> coeffs)
        : tag_(tag), coeffs_(std::move(coeffs)) {}

    Tag tag_;
    std::vector<double> coeffs_;
};

/// Transition quantity <f(tau)> for fixed endpoints: one complex sample
/// per interior time node, with the kernel K for the same endpoints and
/// discretization attached.
struct TransitionQuantity {
    double x_initial = 0.0;
    double x_final = 0.0;
    std::vector<double> tau;       // interior node times
    std::vector<Complex> samples;  // <f(tau_k)>, size n_slices - 1
    Complex kernel_value;          // K(x_final, x_initial)
    KernelProvenance provenance = KernelProvenance::Lattice;
};

/// <f(tau)> by operator insertion: propagate from x_initial up to the
/// slice, weight by f at the intermediate point, propagate to x_final.
Complex transition_quantity_insertion(const KinematicQuantity& f, std::size_t slice_index,
                                      double x_initial, double x_final,
                                      const SpaceGrid& sg, const TimeGrid& tg,
                                      const Potential& pot, const PhysicalConstants& c);

/// Literal path-sum oracle for the same quantity.
Complex transition_quantity_brute_force(const KinematicQuantity& f, std::size_t slice_index,
                                        double x_initial, double x_final,
                                        const SpaceGrid& sg, const TimeGrid& tg,
                                        const Potential& pot, const PhysicalConstants& c,
                                        std::uint64_t cap = kDefaultEnumerationCap);

/// <f(tau_k)> for every interior node at once (shared forward/backward
/// sweeps), kernel attached.
TransitionQuantity transition_quantity_path(const KinematicQuantity& f,
                                            double x_initial, double x_final,
                                            const SpaceGrid& sg, const TimeGrid& tg,
                                            const Potential& pot, const PhysicalConstants& c);

/// Transition coordinate <x(tau)>.
TransitionQuantity transition_coordinate_path(double x_initial, double x_final,
                                              const SpaceGrid& sg, const TimeGrid& tg,
                                              const Potential& pot, const PhysicalConstants& c);

struct ModulusPhase {
    std::vector<double> modulus;
    // Unwrapped phase per node; empty optional where the sample is zero.
    std::vector<std::optional<double>> phase;
};

/// Modulus and continuously unwrapped phase of the samples. Unwrapping
/// continues from the nearest branch; zero samples leave the phase
/// undefined at that node.
ModulusPhase modulus_and_phase(const TransitionQuantity& tq, double zero_eps = 0.0);

}  // namespace pathlab
