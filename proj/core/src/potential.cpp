#include "pathlab/potential.hpp"

#include <cmath>

namespace pathlab {

Potential Potential::free_particle() {
    return Potential(Family::Free, {}, 0.0);
}

Potential Potential::harmonic(double omega, const PhysicalConstants& c) {
    c.validate();
    if (!(omega > 0.0)) throw ValidationError("harmonic potential: omega must be positive");
    return Potential(Family::Harmonic, {0.0, 0.0, 0.5 * c.mass * omega * omega}, omega);
}

Potential Potential::polynomial(std::vector<double> coefficients) {
    for (double ci : coefficients) {
        if (!std::isfinite(ci)) throw ValidationError("polynomial potential: non-finite coefficient");
    }
    return Potential(Family::Polynomial, std::move(coefficients), 0.0);
}

// Horner evaluation of sum_k c_k x^k.
double Potential::value(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double Potential::derivative(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) {
        acc = acc * x + static_cast<double>(k) * coeffs_[k];
    }
    return acc;
}

double Potential::second_derivative(double x) const {
    double acc = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 2;) {
        acc = acc * x + static_cast<double>(k) * static_cast<double>(k - 1) * coeffs_[k];
    }
    return acc;
}

std::string Potential::family_name() const {
    switch (family_) {
        case Family::Free: return "free";
        case Family::Harmonic: return "harmonic";
        case Family::Polynomial: return "polynomial";
    }
    return "unknown";
}

Potential Potential::scaled(double s) const {
    std::vector<double> c = coeffs_;
    for (double& ci : c) ci *= s;
    return Potential(Family::Polynomial, std::move(c), 0.0);
}

}  // namespace pathlab
