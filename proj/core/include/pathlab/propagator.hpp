#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>

#include "pathlab/constants.hpp"
#include "pathlab/grid.hpp"
#include "pathlab/path.hpp"
#include "pathlab/potential.hpp"

namespace pathlab {

using Complex = std::complex<double>;

enum class KernelProvenance { Lattice, BruteForce, Analytic };

/// Transition-amplitude matrix K(x_to, x_from) over a space grid for a
/// time interval. Row index is the final coordinate, column the initial.
struct Kernel {
    Eigen::MatrixXcd values;
    double t_start = 0.0;
    double t_end = 0.0;
    KernelProvenance provenance = KernelProvenance::Lattice;
    // Discretization of origin, recorded for lattice kernels.
    double dt = 0.0;
    double dx = 0.0;
};

struct Wavefunction {
    Eigen::VectorXcd values;
    double time = 0.0;

    /// Trapezoid-rule norm: sum |psi|^2 w(x).
    double norm_squared(const SpaceGrid& sg) const;
};

/// Quadrature weights for the intermediate path-integral integrals:
/// trapezoid weights multiplied by a smooth (Planck) taper that rolls off
/// to zero over the outer 10% bands of the domain. The taper removes the
/// O(1) boundary artifacts a sharp cutoff leaves in the conditionally
/// convergent oscillatory integrals; it is identically 1 on the inner 80%.
std::vector<double> propagation_weights(const SpaceGrid& sg);

/// Smooth per-slice displacement cutoff for the short-time kernel matrix.
/// The sampled chirp exp(i m d^2 / (2 hbar dt)) aliases once its local
/// frequency exceeds the grid Nyquist rate, at |d| > pi*hbar*dt/(m*dx);
/// beyond that the iterated convolution is unstable. The window is 1 on
/// the physically relevant displacements (several sqrt(hbar dt / m)) and
/// rolls off smoothly before the Nyquist limit. On grids too coarse to
/// separate the two scales the window stays identically 1 (small
/// enumeration lattices rely on exact lattice/brute-force equivalence,
/// not on continuum accuracy).
double displacement_window(double displacement, double dt, double dx,
                           const PhysicalConstants& c);

/// One-slice propagator amplitude:
///   sqrt(m/(2*pi*i*hbar*dt)) * exp((i/hbar)[m (x_to-x_from)^2/(2 dt) - dt V((x_to+x_from)/2)])
/// The complex square root takes the branch with phase -pi/4.
Complex short_time_kernel(double x_to, double x_from, double dt,
                          const Potential& pot, const PhysicalConstants& c);

/// Single short-time kernel matrix on the grid (no quadrature weights).
Eigen::MatrixXcd short_time_kernel_matrix(const SpaceGrid& sg, double dt,
                                          const Potential& pot, const PhysicalConstants& c);

/// Short-time kernel matrix with the displacement window applied entrywise.
/// This is the per-slice step used by lattice_kernel, the sweep-based
/// transition quantities, and (as a per-step factor) the brute-force sums,
/// so all three stay exactly equivalent.
Eigen::MatrixXcd propagation_step_matrix(const SpaceGrid& sg, double dt,
                                         const Potential& pot, const PhysicalConstants& c);

/// Kernel over the whole time grid by iterated short-time convolution with
/// the propagation weights at each intermediate integral.
Kernel lattice_kernel(const SpaceGrid& sg, const TimeGrid& tg,
                      const Potential& pot, const PhysicalConstants& c);

/// Literal path sum: sum over all lattice paths of exp(iS/hbar) times the
/// per-slice prefactors and the interior quadrature weights. Equals the
/// matching lattice_kernel entry up to rounding; serves as its oracle.
Complex brute_force_kernel(const SpaceGrid& sg, const TimeGrid& tg,
                           const Potential& pot, const PhysicalConstants& c,
                           double x_initial, double x_final,
                           std::uint64_t cap = kDefaultEnumerationCap);

/// Closed-form free-particle kernel over an interval of length duration.
Complex analytic_kernel_free(double x_to, double x_from, double duration,
                             const PhysicalConstants& c);

/// Closed-form harmonic-oscillator kernel. Throws NumericalError near a
/// focal point (|sin(omega T)| < caustic_eps).
Complex analytic_kernel_harmonic(double x_to, double x_from, double duration,
                                 double omega, const PhysicalConstants& c,
                                 double caustic_eps = 1e-8);

/// psi_out(x_to) = sum_{x_from} K(x_to, x_from) psi(x_from) w(x_from).
Wavefunction evolve_wavefunction(const Wavefunction& psi, const Kernel& kernel,
                                 const SpaceGrid& sg);

/// Kernel over (t1,t3) from kernels over (t2,t3) and (t1,t2): matrix
/// product through the shared intermediate grid with propagation weights.
Kernel compose_kernels(const Kernel& later, const Kernel& earlier, const SpaceGrid& sg);

/// Fraction of summed |K| mass carried by entries whose row or column
/// coordinate lies in the outer 10% bands of the domain.
double kernel_edge_leak(const Kernel& kernel, const SpaceGrid& sg);

std::string provenance_name(KernelProvenance p);

}  // namespace pathlab
