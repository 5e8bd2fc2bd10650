#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pathlab/classical_path.hpp"
#include "pathlab/csv_io.hpp"
#include "pathlab/transition.hpp"

namespace pathlab {

inline constexpr std::string_view kToolVersion = "pathlab 0.1.0";

struct WavepacketSpec {
    double x0 = 0.0;
    double sigma0 = 1.0;
    double k0 = 0.0;
};

/// One experiment run: constants, discretization, endpoints, tolerances.
/// Parsed from a JSON config file; every field has a natural-units default.
struct ExperimentConfig {
    PhysicalConstants constants;
    Potential potential = Potential::free_particle();
    double t_start = 0.0;
    double t_end = 1.0;
    // Defaults sit where the windowed convolution is both stable and
    // accurate: dx well below the per-slice sampling limit for every
    // hbar in the default scan, dt coarse enough that the per-slice
    // edge taper does not compound into a sharp cutoff.
    std::size_t n_slices = 32;
    double x_min = -8.0;
    double x_max = 8.0;
    std::size_t n_points = 801;
    double x_initial = 0.0;
    double x_final = 1.0;
    std::vector<std::string> quantities = {"position", "position_squared"};
    double quadratic_tol_scale = 1.0;
    double newton_residual_tol = 1e-10;
    std::filesystem::path output_dir = "out";
    std::uint64_t rng_seed = 0;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::optional<WavepacketSpec> wavepacket;
    std::vector<double> hbar_scan = {1.0, 0.5, 0.25};
    std::size_t convergence_levels = 4;
    double probe_magnitude = 0.1;
    std::size_t probe_trials = 200;

    static ExperimentConfig from_json_file(const std::filesystem::path& path);
    static ExperimentConfig from_json_text(const std::string& text);

    TimeGrid time_grid() const;
    SpaceGrid space_grid() const;
    void validate() const;

    /// Canonical key-sorted JSON rendering; basis of the config hash.
    std::string canonical_text() const;
    std::uint64_t config_hash() const;

    /// Metadata block embedded at the top of every emitted file.
    std::vector<std::pair<std::string, std::string>> metadata() const;
};

/// Discretization-aware tolerance for the quadratic-action exactness
/// checks: max(10 dt^2, 10 dx^2, 1e-8) * scale.
double quadratic_tolerance(double dt, double dx, double scale);

/// Gaussian packet sampled on the grid: (pi sigma0^2)^(-1/4)
/// exp(-(x-x0)^2/(2 sigma0^2) + i k0 (x-x0)).
Wavefunction make_gaussian_packet(const WavepacketSpec& spec, const SpaceGrid& sg);

/// Closed-form free evolution of the same packet (dispersion oracle).
Complex analytic_free_gaussian(double x, double t, const WavepacketSpec& spec,
                               const PhysicalConstants& c);

/// Analytic harmonic boundary-value trajectory
/// x(tau) = [x1 sin w(t2-tau) + x2 sin w(tau-t1)] / sin w(t2-t1).
double harmonic_bvp_position(double tau, double x_initial, double x_final,
                             double omega, double t_start, double t_end);

struct KernelCommandReport {
    double edge_leak = 0.0;
    // One row per resolution: n_slices, max mid-domain relative error vs
    // the closed-form oracle (free/harmonic only).
    std::vector<std::pair<std::size_t, double>> convergence;
};

struct TheoremHbarPoint {
    double hbar = 0.0;
    double max_deviation = 0.0;           // max_tau |<x>/K - x_m|
    double max_fluctuation_residual = 0.0;  // max_tau |<x^2>/K - x_m^2|
};

struct TheoremReport {
    std::vector<double> tau;
    std::vector<double> x_m;
    std::vector<Complex> r_x;             // <x(tau)>/K
    std::vector<double> deviation;        // |r_x - x_m|
    std::vector<double> phase_diff;       // unwrapped arg<x> - arg K
    std::vector<double> phase_gap;        // distance of phase_diff to {0, pi} mod 2pi
    std::vector<Complex> r_x2;            // <x^2(tau)>/K
    std::vector<double> fluctuation_residual;  // |r_x2 - x_m^2|
    double max_deviation = 0.0;
    double tol_quadratic = 0.0;
    bool quadratic_family = false;
    bool quadratic_pass = false;
    double edge_leak = 0.0;
    std::vector<TheoremHbarPoint> hbar_points;
};

struct VariationalReport {
    double action = 0.0;
    double residual = 0.0;
    MinimumCertificate certificate;
    double probe_fraction = 0.0;
    bool minimal = false;
    double energy_drift = 0.0;  // max spread of the per-slice energies
};

struct EvolveReport {
    std::vector<double> norms;      // per step, trapezoid norm
    double norm_drift = 0.0;        // max |norm - norm_0|
    double final_l2_error = 0.0;    // vs free-Gaussian oracle, NaN if n/a
};

// Each command validates its config, computes everything, then writes its
// report files into config.output_dir in one atomic pass.
KernelCommandReport cmd_kernel(const ExperimentConfig& config);
EvolveReport cmd_evolve(const ExperimentConfig& config);
void cmd_transition(const ExperimentConfig& config);
ClassicalPathResult cmd_classical_path(const ExperimentConfig& config);
TheoremReport cmd_theorem_check(const ExperimentConfig& config);
VariationalReport cmd_variational_check(const ExperimentConfig& config);

}  // namespace pathlab
