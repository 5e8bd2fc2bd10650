#pragma once

#include <string>
#include <vector>

#include "pathlab/constants.hpp"

namespace pathlab {

/// Stationary 1D potential V(x). All families are stored as polynomial
/// coefficients (ascending powers), so evaluation and derivatives share
/// one rule. harmonic(omega) is the polynomial with c2 = m*omega^2/2;
/// free is the zero polynomial.
class Potential {
public:
    enum class Family { Free, Harmonic, Polynomial };

    static Potential free_particle();
    static Potential harmonic(double omega, const PhysicalConstants& c);
    static Potential polynomial(std::vector<double> coefficients);

    double value(double x) const;
    double derivative(double x) const;
    double second_derivative(double x) const;

    Family family() const { return family_; }
    /// Angular frequency; only meaningful for the harmonic family.
    double omega() const { return omega_; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    std::string family_name() const;

    /// Potential with every coefficient multiplied by s (homotopy in
    /// potential strength). s=0 is the free particle.
    Potential scaled(double s) const;

private:
    Potential(Family family, std::vector<double> coeffs, double omega)
        : family_(family), coeffs_(std::move(coeffs)), omega_(omega) {}

    Family family_ = Family::Free;
    std::vector<double> coeffs_;
    double omega_ = 0.0;
};

}  // namespace pathlab
