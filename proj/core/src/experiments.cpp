#include "pathlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace pathlab {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : s) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

Potential potential_from_json(const json& j, const PhysicalConstants& c) {
    const std::string family = j.value("family", "free");
    if (family == "free") return Potential::free_particle();
    if (family == "harmonic") {
        if (!j.contains("omega")) throw ValidationError("harmonic potential requires omega");
        return Potential::harmonic(j.at("omega").get<double>(), c);
    }
    if (family == "polynomial") {
        if (!j.contains("coefficients")) {
            throw ValidationError("polynomial potential requires coefficients");
        }
        return Potential::polynomial(j.at("coefficients").get<std::vector<double>>());
    }
    throw ValidationError("unknown potential family '" + family + "'");
}

json potential_to_json(const Potential& p) {
    json j;
    j["family"] = p.family_name();
    if (p.family() == Potential::Family::Harmonic) j["omega"] = p.omega();
    if (p.family() == Potential::Family::Polynomial) j["coefficients"] = p.coefficients();
    return j;
}

KinematicQuantity quantity_by_name(const std::string& name, const Potential& pot) {
    if (name == "unit") return KinematicQuantity::unit();
    if (name == "position") return KinematicQuantity::position();
    if (name == "position_squared") return KinematicQuantity::position_squared();
    if (name == "potential_energy") return KinematicQuantity::potential_energy(pot);
    throw ValidationError("unknown kinematic quantity '" + name + "'");
}

// Inner 80% band of the domain; inputs must keep their mass here.
std::pair<double, double> truncation_band(const SpaceGrid& sg) {
    const double band = 0.1 * (sg.x_max - sg.x_min);
    return {sg.x_min + band, sg.x_max - band};
}

// Inner 50% of the domain, used for mid-domain comparisons where edge
// truncation artifacts are excluded.
bool mid_domain(double x, const SpaceGrid& sg) {
    const double quarter = 0.25 * (sg.x_max - sg.x_min);
    return x >= sg.x_min + quarter && x <= sg.x_max - quarter;
}

// Gaussian tail mass outside [lo, hi] for a packet centered at c with
// standard deviation sigma (in |psi|^2).
double gaussian_outside_mass(double center, double sigma, double lo, double hi) {
    const double s = sigma * std::numbers::sqrt2;
    return 0.5 * (std::erfc((hi - center) / s) + std::erfc((center - lo) / s));
}

void check_endpoint_policy(double x, const SpaceGrid& sg, const char* label) {
    const auto [lo, hi] = truncation_band(sg);
    if (x < lo || x > hi) {
        throw ValidationError(std::string(label) + " " + format_double(x) +
                              " violates the truncation policy (must lie in [" +
                              format_double(lo) + ", " + format_double(hi) + "])");
    }
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

void write_json_atomic(const std::filesystem::path& path, const json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

json metadata_json(const ExperimentConfig& cfg) {
    json j;
    for (const auto& [k, v] : cfg.metadata()) j[k] = v;
    return j;
}

double max_energy_spread(const std::vector<double>& energies) {
    if (energies.empty()) return 0.0;
    const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
    return *hi - *lo;
}

}  // namespace

double quadratic_tolerance(double dt, double dx, double scale) {
    return std::max({10.0 * dt * dt, 10.0 * dx * dx, 1e-8}) * scale;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    if (j.contains("constants")) {
        cfg.constants.hbar = j["constants"].value("hbar", 1.0);
        cfg.constants.mass = j["constants"].value("mass", 1.0);
    }
    if (j.contains("potential")) cfg.potential = potential_from_json(j["potential"], cfg.constants);
    if (j.contains("time_grid")) {
        cfg.t_start = j["time_grid"].value("t_start", 0.0);
        cfg.t_end = j["time_grid"].value("t_end", 1.0);
        cfg.n_slices = j["time_grid"].value("n_slices", std::size_t{32});
    }
    if (j.contains("space_grid")) {
        cfg.x_min = j["space_grid"].value("x_min", -8.0);
        cfg.x_max = j["space_grid"].value("x_max", 8.0);
        cfg.n_points = j["space_grid"].value("n_points", std::size_t{801});
    }
    if (j.contains("endpoints")) {
        cfg.x_initial = j["endpoints"].value("x_initial", 0.0);
        cfg.x_final = j["endpoints"].value("x_final", 1.0);
    }
    if (j.contains("quantities")) cfg.quantities = j["quantities"].get<std::vector<std::string>>();
    if (j.contains("tolerances")) {
        cfg.quadratic_tol_scale = j["tolerances"].value("quadratic_scale", 1.0);
        cfg.newton_residual_tol = j["tolerances"].value("newton_residual", 1e-10);
    }
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    cfg.rng_seed = j.value("rng_seed", std::uint64_t{0});
    cfg.enumeration_cap = j.value("enumeration_cap", kDefaultEnumerationCap);
    if (j.contains("wavepacket")) {
        WavepacketSpec w;
        w.x0 = j["wavepacket"].value("x0", 0.0);
        w.sigma0 = j["wavepacket"].value("sigma0", 1.0);
        w.k0 = j["wavepacket"].value("k0", 0.0);
        cfg.wavepacket = w;
    }
    if (j.contains("hbar_scan")) cfg.hbar_scan = j["hbar_scan"].get<std::vector<double>>();
    cfg.convergence_levels = j.value("convergence_levels", std::size_t{4});
    if (j.contains("probe")) {
        cfg.probe_magnitude = j["probe"].value("magnitude", 0.1);
        cfg.probe_trials = j["probe"].value("trials", std::size_t{200});
    }
    cfg.validate();
    return cfg;
}

TimeGrid ExperimentConfig::time_grid() const { return build_time_grid(t_start, t_end, n_slices); }
SpaceGrid ExperimentConfig::space_grid() const { return build_space_grid(x_min, x_max, n_points); }

void ExperimentConfig::validate() const {
    constants.validate();
    (void)time_grid();
    (void)space_grid();
    if (x_initial < x_min || x_initial > x_max || x_final < x_min || x_final > x_max) {
        throw ValidationError("endpoints must lie inside the spatial domain");
    }
    if (enumeration_cap == 0) throw ValidationError("enumeration_cap must be positive");
    if (quantities.empty()) throw ValidationError("quantity list must not be empty");
    for (const auto& q : quantities) (void)quantity_by_name(q, potential);
    if (wavepacket && !(wavepacket->sigma0 > 0.0)) {
        throw ValidationError("wavepacket sigma0 must be positive");
    }
    if (hbar_scan.empty()) throw ValidationError("hbar_scan must not be empty");
    for (double h : hbar_scan) {
        if (!(h > 0.0)) throw ValidationError("hbar_scan values must be positive");
    }
}

std::string ExperimentConfig::canonical_text() const {
    json j;
    j["constants"] = {{"hbar", constants.hbar}, {"mass", constants.mass}};
    j["potential"] = potential_to_json(potential);
    j["time_grid"] = {{"t_start", t_start}, {"t_end", t_end}, {"n_slices", n_slices}};
    j["space_grid"] = {{"x_min", x_min}, {"x_max", x_max}, {"n_points", n_points}};
    j["endpoints"] = {{"x_initial", x_initial}, {"x_final", x_final}};
    j["quantities"] = quantities;
    j["tolerances"] = {{"quadratic_scale", quadratic_tol_scale},
                       {"newton_residual", newton_residual_tol}};
    j["rng_seed"] = rng_seed;
    j["enumeration_cap"] = enumeration_cap;
    if (wavepacket) {
        j["wavepacket"] = {{"x0", wavepacket->x0},
                           {"sigma0", wavepacket->sigma0},
                           {"k0", wavepacket->k0}};
    }
    j["hbar_scan"] = hbar_scan;
    j["convergence_levels"] = convergence_levels;
    j["probe"] = {{"magnitude", probe_magnitude}, {"trials", probe_trials}};
    return j.dump();
}

std::uint64_t ExperimentConfig::config_hash() const { return fnv1a(canonical_text()); }

std::vector<std::pair<std::string, std::string>> ExperimentConfig::metadata() const {
    const TimeGrid tg = time_grid();
    const SpaceGrid sg = space_grid();
    std::vector<std::pair<std::string, std::string>> m;
    m.emplace_back("tool_version", std::string(kToolVersion));
    m.emplace_back("config_hash", hex64(config_hash()));
    m.emplace_back("hbar", format_double(constants.hbar));
    m.emplace_back("mass", format_double(constants.mass));
    m.emplace_back("potential", potential.family_name());
    m.emplace_back("t_start", format_double(t_start));
    m.emplace_back("t_end", format_double(t_end));
    m.emplace_back("n_slices", std::to_string(n_slices));
    m.emplace_back("dt", format_double(tg.dt));
    m.emplace_back("x_min", format_double(x_min));
    m.emplace_back("x_max", format_double(x_max));
    m.emplace_back("n_points", std::to_string(n_points));
    m.emplace_back("dx", format_double(sg.dx));
    m.emplace_back("x_initial", format_double(x_initial));
    m.emplace_back("x_final", format_double(x_final));
    m.emplace_back("rng_seed", std::to_string(rng_seed));
    return m;
}

Wavefunction make_gaussian_packet(const WavepacketSpec& spec, const SpaceGrid& sg) {
    const double norm = std::pow(kPi * spec.sigma0 * spec.sigma0, -0.25);
    Wavefunction psi;
    psi.values.resize(static_cast<Eigen::Index>(sg.n_points));
    for (std::size_t i = 0; i < sg.n_points; ++i) {
        const double x = sg.point(i);
        const double d = x - spec.x0;
        psi.values[static_cast<Eigen::Index>(i)] =
            norm * std::exp(-d * d / (2.0 * spec.sigma0 * spec.sigma0)) *
            std::polar(1.0, spec.k0 * d);
    }
    psi.time = 0.0;
    return psi;
}

Complex analytic_free_gaussian(double x, double t, const WavepacketSpec& spec,
                               const PhysicalConstants& c) {
    const double norm = std::pow(kPi * spec.sigma0 * spec.sigma0, -0.25);
    if (t == 0.0) {
        const double d = x - spec.x0;
        return norm * std::exp(-d * d / (2.0 * spec.sigma0 * spec.sigma0)) *
               std::polar(1.0, spec.k0 * d);
    }
    // Gaussian integral of the free kernel against the initial packet.
    const Complex i(0.0, 1.0);
    const double s2 = spec.sigma0 * spec.sigma0;
    const Complex a = 1.0 / (2.0 * s2) - i * c.mass / (2.0 * c.hbar * t);
    const Complex b = spec.x0 / s2 + i * spec.k0 - i * c.mass * x / (c.hbar * t);
    const Complex c0 = i * c.mass * x * x / (2.0 * c.hbar * t) -
                       spec.x0 * spec.x0 / (2.0 * s2) - i * spec.k0 * spec.x0;
    const Complex pref = std::polar(std::sqrt(c.mass / (2.0 * kPi * c.hbar * t)), -kPi / 4.0);
    return norm * pref * std::sqrt(kPi / a) * std::exp(b * b / (4.0 * a) + c0);
}

double harmonic_bvp_position(double tau, double x_initial, double x_final,
                             double omega, double t_start, double t_end) {
    const double s = std::sin(omega * (t_end - t_start));
    if (std::abs(s) < 1e-12) {
        throw NumericalError("focal point: harmonic boundary-value problem is degenerate");
    }
    return (x_initial * std::sin(omega * (t_end - tau)) +
            x_final * std::sin(omega * (tau - t_start))) / s;
}

KernelCommandReport cmd_kernel(const ExperimentConfig& config) {
    config.validate();
    const SpaceGrid sg = config.space_grid();
    const bool has_oracle = config.potential.family() == Potential::Family::Free ||
                            config.potential.family() == Potential::Family::Harmonic;

    // Resolutions: n_slices halved per level as far as divisibility allows.
    std::vector<std::size_t> slice_counts;
    {
        std::size_t n = config.n_slices;
        for (std::size_t level = 0; level < config.convergence_levels; ++level) {
            slice_counts.insert(slice_counts.begin(), n);
            if (n % 2 != 0 || n == 1) break;
            n /= 2;
        }
    }

    KernelCommandReport report;
    Kernel finest;
    for (std::size_t n : slice_counts) {
        const TimeGrid tg = build_time_grid(config.t_start, config.t_end, n);
        Kernel k = lattice_kernel(sg, tg, config.potential, config.constants);
        if (has_oracle) {
            double max_rel = 0.0;
            const double duration = tg.duration();
            for (std::size_t ito = 0; ito < sg.n_points; ++ito) {
                if (!mid_domain(sg.point(ito), sg)) continue;
                for (std::size_t ifrom = 0; ifrom < sg.n_points; ++ifrom) {
                    if (!mid_domain(sg.point(ifrom), sg)) continue;
                    const Complex oracle =
                        config.potential.family() == Potential::Family::Free
                            ? analytic_kernel_free(sg.point(ito), sg.point(ifrom), duration,
                                                   config.constants)
                            : analytic_kernel_harmonic(sg.point(ito), sg.point(ifrom), duration,
                                                       config.potential.omega(), config.constants);
                    const double rel = std::abs(k.values(ito, ifrom) - oracle) / std::abs(oracle);
                    max_rel = std::max(max_rel, rel);
                }
            }
            report.convergence.emplace_back(n, max_rel);
        }
        if (n == config.n_slices) finest = std::move(k);
    }
    report.edge_leak = kernel_edge_leak(finest, sg);

    CsvTable matrix = kernel_to_csv(finest, sg);
    auto meta = config.metadata();
    meta.emplace_back("edge_leak", format_double(report.edge_leak));
    matrix.metadata.insert(matrix.metadata.begin(), meta.begin(), meta.end());
    write_csv_atomic(config.output_dir / "kernel_matrix.csv", matrix);

    if (has_oracle) {
        CsvTable conv;
        conv.metadata = meta;
        conv.columns = {"n_slices", "max_mid_domain_rel_error"};
        for (const auto& [n, err] : report.convergence) {
            conv.rows.push_back({static_cast<double>(n), err});
        }
        write_csv_atomic(config.output_dir / "kernel_convergence.csv", conv);
    }
    return report;
}

EvolveReport cmd_evolve(const ExperimentConfig& config) {
    config.validate();
    if (!config.wavepacket) throw ValidationError("evolve requires a wavepacket spec");
    const SpaceGrid sg = config.space_grid();
    const TimeGrid tg = config.time_grid();
    const WavepacketSpec& wp = *config.wavepacket;
    const bool free_oracle = config.potential.family() == Potential::Family::Free;

    // Truncation policy: the packet must keep essentially all of its mass
    // inside the inner 80% of the domain over the whole run.
    const auto [lo, hi] = truncation_band(sg);
    const double leak0 = gaussian_outside_mass(wp.x0, wp.sigma0 / std::numbers::sqrt2, lo, hi);
    double leak_final = leak0;
    if (free_oracle) {
        const double t = tg.duration();
        const double spread = wp.sigma0 *
            std::sqrt(1.0 + std::pow(config.constants.hbar * t /
                                     (config.constants.mass * wp.sigma0 * wp.sigma0), 2));
        const double center = wp.x0 + config.constants.hbar * wp.k0 / config.constants.mass * t;
        leak_final = gaussian_outside_mass(center, spread / std::numbers::sqrt2, lo, hi);
    }
    if (leak0 > 1e-6 || leak_final > 1e-6) {
        throw ValidationError("wavepacket violates the truncation policy: outside mass " +
                              format_double(std::max(leak0, leak_final)) + " exceeds 1e-6");
    }

    const TimeGrid step_grid = build_time_grid(tg.t_start, tg.t_start + tg.dt, 1);
    const Kernel step = lattice_kernel(sg, step_grid, config.potential, config.constants);

    Wavefunction psi = make_gaussian_packet(wp, sg);
    EvolveReport report;
    report.norms.push_back(psi.norm_squared(sg));

    CsvTable series;
    series.metadata = config.metadata();
    series.columns = {"step", "t", "x", "re", "im", "abs2"};
    CsvTable norms;
    norms.metadata = config.metadata();
    norms.columns = {"step", "t", "norm", "l2_error_vs_analytic"};

    auto emit_state = [&](std::size_t stepno, const Wavefunction& w) {
        const double t = tg.t_start + static_cast<double>(stepno) * tg.dt;
        for (std::size_t i = 0; i < sg.n_points; ++i) {
            const Complex v = w.values[static_cast<Eigen::Index>(i)];
            series.rows.push_back({static_cast<double>(stepno), t, sg.point(i),
                                   v.real(), v.imag(), std::norm(v)});
        }
        double l2 = std::numeric_limits<double>::quiet_NaN();
        if (free_oracle) {
            double num = 0.0;
            double den = 0.0;
            const auto wq = sg.trapezoid_weights();
            for (std::size_t i = 0; i < sg.n_points; ++i) {
                const Complex oracle = analytic_free_gaussian(
                    sg.point(i), t - tg.t_start, wp, config.constants);
                num += std::norm(w.values[static_cast<Eigen::Index>(i)] - oracle) * wq[i];
                den += std::norm(oracle) * wq[i];
            }
            l2 = std::sqrt(num / den);
        }
        norms.rows.push_back({static_cast<double>(stepno), t, w.norm_squared(sg), l2});
        return l2;
    };

    emit_state(0, psi);
    double last_l2 = 0.0;
    for (std::size_t s = 1; s <= tg.n_slices; ++s) {
        psi = evolve_wavefunction(psi, step, sg);
        report.norms.push_back(psi.norm_squared(sg));
        last_l2 = emit_state(s, psi);
    }
    report.final_l2_error = last_l2;
    for (double n : report.norms) {
        report.norm_drift = std::max(report.norm_drift, std::abs(n - report.norms.front()));
    }

    write_csv_atomic(config.output_dir / "evolution.csv", series);
    write_csv_atomic(config.output_dir / "norm_drift.csv", norms);
    write_text_atomic(config.output_dir / "plot_evolution.gp",
                      "set datafile separator ','\n"
                      "set xlabel 'x'\nset ylabel '|psi|^2'\n"
                      "plot 'evolution.csv' using 3:6 every :::0::0 with lines title 'initial', \\\n"
                      "     'evolution.csv' using 3:6 every :::" +
                          std::to_string(tg.n_slices) + "::" + std::to_string(tg.n_slices) +
                          " with lines title 'final'\n");
    return report;
}

void cmd_transition(const ExperimentConfig& config) {
    config.validate();
    const SpaceGrid sg = config.space_grid();
    const TimeGrid tg = config.time_grid();
    std::vector<std::pair<std::string, CsvTable>> outputs;
    for (const std::string& name : config.quantities) {
        const KinematicQuantity f = quantity_by_name(name, config.potential);
        const TransitionQuantity tq = transition_quantity_path(
            f, config.x_initial, config.x_final, sg, tg, config.potential, config.constants);
        CsvTable t = transition_to_csv(tq);
        auto meta = config.metadata();
        meta.emplace_back("quantity", name);
        t.metadata.insert(t.metadata.begin(), meta.begin(), meta.end());
        outputs.emplace_back("transition_" + name + ".csv", std::move(t));
    }
    for (auto& [name, table] : outputs) {
        write_csv_atomic(config.output_dir / name, table);
    }
}

ClassicalPathResult cmd_classical_path(const ExperimentConfig& config) {
    config.validate();
    const TimeGrid tg = config.time_grid();
    SolveOptions opts;
    opts.residual_tol = config.newton_residual_tol;
    const ClassicalPathResult result = solve_classical_path(
        config.x_initial, config.x_final, tg, config.potential, config.constants, opts);

    CsvTable path;
    path.metadata = config.metadata();
    path.columns = {"tau", "x_m"};
    for (std::size_t k = 0; k <= tg.n_slices; ++k) {
        path.rows.push_back({tg.node(k), result.path.positions[k]});
    }
    write_csv_atomic(config.output_dir / "classical_path.csv", path);

    const auto energies = slice_energies(result.path, config.potential, tg, config.constants);
    json summary;
    summary["metadata"] = metadata_json(config);
    summary["action"] = result.action;
    summary["stationarity_residual"] = result.stationarity_residual;
    summary["iterations"] = result.iterations;
    summary["certificate"] = {
        {"is_positive_definite_hessian", result.certificate.is_positive_definite_hessian},
        {"smallest_eigenvalue", result.certificate.smallest_eigenvalue}};
    summary["energy_drift"] = max_energy_spread(energies);
    write_json_atomic(config.output_dir / "classical_summary.json", summary);
    return result;
}

TheoremReport cmd_theorem_check(const ExperimentConfig& config) {
    config.validate();
    const SpaceGrid sg = config.space_grid();
    const TimeGrid tg = config.time_grid();

    const Kernel k = lattice_kernel(sg, tg, config.potential, config.constants);
    const double edge_leak = kernel_edge_leak(k, sg);
    try {
        check_endpoint_policy(config.x_initial, sg, "x_initial");
        check_endpoint_policy(config.x_final, sg, "x_final");
    } catch (const ValidationError& e) {
        throw ValidationError(std::string(e.what()) + " (kernel edge leak " +
                              format_double(edge_leak) + ")");
    }

    SolveOptions opts;
    opts.residual_tol = config.newton_residual_tol;
    const ClassicalPathResult classical = solve_classical_path(
        config.x_initial, config.x_final, tg, config.potential, config.constants, opts);

    TheoremReport report;
    report.edge_leak = edge_leak;
    report.quadratic_family = config.potential.family() == Potential::Family::Free ||
                              config.potential.family() == Potential::Family::Harmonic;
    report.tol_quadratic = quadratic_tolerance(tg.dt, sg.dx, config.quadratic_tol_scale);

    auto scan_point = [&](double hbar, TheoremReport* fill) {
        PhysicalConstants c = config.constants;
        c.hbar = hbar;
        const TransitionQuantity tq_x = transition_coordinate_path(
            config.x_initial, config.x_final, sg, tg, config.potential, c);
        const TransitionQuantity tq_x2 = transition_quantity_path(
            KinematicQuantity::position_squared(), config.x_initial, config.x_final,
            sg, tg, config.potential, c);
        TheoremHbarPoint point;
        point.hbar = hbar;
        const ModulusPhase mp = modulus_and_phase(tq_x);
        const double arg_k = std::arg(tq_x.kernel_value);
        for (std::size_t i = 0; i < tq_x.samples.size(); ++i) {
            const double xm = classical.path.positions[i + 1];
            const Complex rx = tq_x.samples[i] / tq_x.kernel_value;
            const Complex rx2 = tq_x2.samples[i] / tq_x2.kernel_value;
            const double dev = std::abs(rx - xm);
            const double fluct = std::abs(rx2 - xm * xm);
            point.max_deviation = std::max(point.max_deviation, dev);
            point.max_fluctuation_residual = std::max(point.max_fluctuation_residual, fluct);
            if (fill) {
                fill->tau.push_back(tq_x.tau[i]);
                fill->x_m.push_back(xm);
                fill->r_x.push_back(rx);
                fill->deviation.push_back(dev);
                double pd = std::numeric_limits<double>::quiet_NaN();
                double gap = pd;
                if (mp.phase[i]) {
                    pd = *mp.phase[i] - arg_k;
                    const double r = std::abs(std::remainder(pd, 2.0 * kPi));
                    gap = std::min(r, kPi - r);
                }
                fill->phase_diff.push_back(pd);
                fill->phase_gap.push_back(gap);
                fill->r_x2.push_back(rx2);
                fill->fluctuation_residual.push_back(fluct);
            }
        }
        return point;
    };

    const TheoremHbarPoint base = scan_point(config.constants.hbar, &report);
    report.max_deviation = base.max_deviation;
    for (double hbar : config.hbar_scan) {
        report.hbar_points.push_back(hbar == config.constants.hbar ? base
                                                                   : scan_point(hbar, nullptr));
    }
    report.quadratic_pass = report.max_deviation < report.tol_quadratic;

    auto meta = config.metadata();
    meta.emplace_back("edge_leak", format_double(edge_leak));
    meta.emplace_back("tol_quadratic", format_double(report.tol_quadratic));

    CsvTable table;
    table.metadata = meta;
    table.columns = {"tau", "x_m", "r_x_re", "r_x_im", "deviation",
                     "phase_diff", "phase_gap", "r_x2_re", "r_x2_im",
                     "fluctuation_residual"};
    for (std::size_t i = 0; i < report.tau.size(); ++i) {
        table.rows.push_back({report.tau[i], report.x_m[i],
                              report.r_x[i].real(), report.r_x[i].imag(),
                              report.deviation[i], report.phase_diff[i], report.phase_gap[i],
                              report.r_x2[i].real(), report.r_x2[i].imag(),
                              report.fluctuation_residual[i]});
    }

    CsvTable scan;
    scan.metadata = meta;
    scan.columns = {"hbar", "max_deviation", "max_fluctuation_residual"};
    for (const auto& p : report.hbar_points) {
        scan.rows.push_back({p.hbar, p.max_deviation, p.max_fluctuation_residual});
    }

    json summary;
    summary["metadata"] = metadata_json(config);
    summary["max_deviation"] = report.max_deviation;
    summary["tol_quadratic"] = report.tol_quadratic;
    summary["quadratic_family"] = report.quadratic_family;
    summary["quadratic_pass"] = report.quadratic_pass;
    summary["edge_leak"] = report.edge_leak;
    summary["classical_action"] = classical.action;
    summary["classical_residual"] = classical.stationarity_residual;

    write_csv_atomic(config.output_dir / "theorem_table.csv", table);
    write_csv_atomic(config.output_dir / "theorem_hbar_scan.csv", scan);
    write_json_atomic(config.output_dir / "theorem_summary.json", summary);
    write_text_atomic(config.output_dir / "plot_theorem.gp",
                      "set datafile separator ','\n"
                      "set xlabel 'tau'\n"
                      "plot 'theorem_table.csv' using 1:2 with lines title 'x_m', \\\n"
                      "     'theorem_table.csv' using 1:3 with points title 'Re <x>/K', \\\n"
                      "     'theorem_table.csv' using 1:5 with lines title 'deviation'\n");

    if (report.quadratic_family && !report.quadratic_pass) {
        throw NumericalError("quadratic-action exactness failed: max deviation " +
                             format_double(report.max_deviation) + " exceeds tolerance " +
                             format_double(report.tol_quadratic));
    }
    return report;
}

VariationalReport cmd_variational_check(const ExperimentConfig& config) {
    config.validate();
    const TimeGrid tg = config.time_grid();
    SolveOptions opts;
    opts.residual_tol = config.newton_residual_tol;
    const ClassicalPathResult result = solve_classical_path(
        config.x_initial, config.x_final, tg, config.potential, config.constants, opts);

    VariationalReport report;
    report.action = result.action;
    report.residual = result.stationarity_residual;
    report.certificate = result.certificate;
    report.probe_fraction = perturbation_probe(result, config.potential, tg, config.constants,
                                               config.probe_magnitude, config.probe_trials,
                                               config.rng_seed);
    report.minimal = result.certificate.is_positive_definite_hessian &&
                     report.probe_fraction == 1.0;
    report.energy_drift = max_energy_spread(
        slice_energies(result.path, config.potential, tg, config.constants));

    json summary;
    summary["metadata"] = metadata_json(config);
    summary["action"] = report.action;
    summary["stationarity_residual"] = report.residual;
    summary["certificate"] = {
        {"is_positive_definite_hessian", report.certificate.is_positive_definite_hessian},
        {"smallest_eigenvalue", report.certificate.smallest_eigenvalue}};
    summary["probe"] = {{"magnitude", config.probe_magnitude},
                        {"trials", config.probe_trials},
                        {"seed", config.rng_seed},
                        {"fraction_action_increasing", report.probe_fraction}};
    summary["verdict"] = report.minimal ? "minimum" : "stationary but not minimal";
    summary["energy_drift"] = report.energy_drift;
    write_json_atomic(config.output_dir / "variational_report.json", summary);
    return report;
}

}  // namespace pathlab
