#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "pathlab/experiments.hpp"

using namespace pathlab;

namespace {

const PhysicalConstants kUnits;

std::filesystem::path fresh_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("pathlab_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("quadratic tolerance takes the largest discretization penalty") {
    CHECK(quadratic_tolerance(0.1, 0.01, 1.0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(quadratic_tolerance(1e-3, 1e-3, 2.0) == doctest::Approx(2e-5).epsilon(1e-12));
    CHECK(quadratic_tolerance(1e-5, 1e-5, 1.0) == doctest::Approx(1e-8).epsilon(1e-12));
}

TEST_CASE("empty config picks the documented defaults") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text("{}");
    CHECK(cfg.n_slices == 32);
    CHECK(cfg.n_points == 801);
    CHECK(cfg.x_min == -8.0);
    CHECK(cfg.x_max == 8.0);
    CHECK(cfg.t_end == 1.0);
    CHECK(cfg.x_initial == 0.0);
    CHECK(cfg.x_final == 1.0);
    CHECK(cfg.constants.hbar == 1.0);
    CHECK(cfg.constants.mass == 1.0);
    CHECK(cfg.potential.family_name() == "free");
    CHECK(cfg.hbar_scan == std::vector<double>{1.0, 0.5, 0.25});
}

TEST_CASE("config fields parse from JSON") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "constants": {"hbar": 0.5, "mass": 2.0},
        "potential": {"family": "harmonic", "omega": 1.5},
        "time_grid": {"t_start": 0.25, "t_end": 1.25, "n_slices": 8},
        "space_grid": {"x_min": -4, "x_max": 4, "n_points": 101},
        "endpoints": {"x_initial": -1, "x_final": 2},
        "quantities": ["position"],
        "rng_seed": 17,
        "output_dir": "elsewhere"
    })");
    CHECK(cfg.constants.hbar == 0.5);
    CHECK(cfg.constants.mass == 2.0);
    CHECK(cfg.potential.family_name() == "harmonic");
    CHECK(cfg.n_slices == 8);
    CHECK(cfg.n_points == 101);
    CHECK(cfg.x_initial == -1.0);
    CHECK(cfg.x_final == 2.0);
    CHECK(cfg.rng_seed == 17);
    CHECK(cfg.output_dir == "elsewhere");
    CHECK(cfg.time_grid().dt == doctest::Approx(0.125));
    CHECK(cfg.space_grid().dx == doctest::Approx(0.08));
}

TEST_CASE("config validation rejects malformed inputs") {
    CHECK_THROWS_AS(ExperimentConfig::from_json_text("not json"), ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"potential":{"family":"nope"}})"),
                    ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"potential":{"family":"harmonic"}})"),
                    ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"endpoints":{"x_final":99}})"),
                    ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"quantities":[]})"), ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"quantities":["momentum"]})"),
                    ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"hbar_scan":[1.0,-0.5]})"),
                    ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"constants":{"hbar":0}})"),
                    ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_text(R"({"wavepacket":{"sigma0":0}})"),
                    ValidationError);
    CHECK_THROWS_AS(ExperimentConfig::from_json_file("/no/such/config.json"), IoError);
}

TEST_CASE("config hash ignores key order and whitespace, tracks values") {
    const ExperimentConfig a = ExperimentConfig::from_json_text(
        R"({"rng_seed": 5, "time_grid": {"n_slices": 8}})");
    const ExperimentConfig b = ExperimentConfig::from_json_text(
        R"({ "time_grid" : { "n_slices" : 8 } , "rng_seed" : 5 })");
    CHECK(a.config_hash() == b.config_hash());
    const ExperimentConfig c = ExperimentConfig::from_json_text(
        R"({"rng_seed": 6, "time_grid": {"n_slices": 8}})");
    CHECK(a.config_hash() != c.config_hash());
    // The canonical rendering round-trips to the same hash.
    const ExperimentConfig rt = ExperimentConfig::from_json_text(a.canonical_text());
    CHECK(rt.config_hash() == a.config_hash());
}

TEST_CASE("metadata carries the tool version and the config hash") {
    const ExperimentConfig cfg = ExperimentConfig::from_json_text("{}");
    bool saw_version = false;
    bool saw_hash = false;
    for (const auto& [k, v] : cfg.metadata()) {
        if (k == "tool_version") {
            saw_version = true;
            CHECK(v == std::string(kToolVersion));
        }
        if (k == "config_hash") {
            saw_hash = true;
            CHECK_FALSE(v.empty());
        }
    }
    CHECK(saw_version);
    CHECK(saw_hash);
}

TEST_CASE("doubles render with round-trip precision") {
    for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("csv rendering: metadata lines, header, commas, LF endings") {
    CsvTable t;
    t.metadata = {{"alpha", "1"}, {"beta", "two"}};
    t.columns = {"x", "y"};
    t.rows = {{1.5, -2.0}, {0.25, 3.0}};
    const std::string s = render_csv(t);
    CHECK(s.find("# alpha=1\n") != std::string::npos);
    CHECK(s.find("# beta=two\n") != std::string::npos);
    CHECK(s.find("x,y\n") != std::string::npos);
    CHECK(s.find("1.5,-2\n") != std::string::npos);
    CHECK(s.find('\r') == std::string::npos);
    CHECK(s.back() == '\n');
}

TEST_CASE("atomic csv write leaves only the final file") {
    const auto dir = fresh_dir("atomic");
    CsvTable t;
    t.columns = {"v"};
    t.rows = {{42.0}};
    write_csv_atomic(dir / "out.csv", t);
    CHECK(slurp(dir / "out.csv") == render_csv(t));
    std::size_t entries = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        (void)e;
        ++entries;
    }
    CHECK(entries == 1);  // no temp files left behind
}

TEST_CASE("harmonic boundary-value trajectory hits its endpoints") {
    const double omega = 1.3;
    CHECK(harmonic_bvp_position(0.0, -0.5, 2.0, omega, 0.0, 1.0) == doctest::Approx(-0.5));
    CHECK(harmonic_bvp_position(1.0, -0.5, 2.0, omega, 0.0, 1.0) == doctest::Approx(2.0));
    CHECK_THROWS_AS(harmonic_bvp_position(0.5, 0.0, 1.0, std::numbers::pi, 0.0, 1.0),
                    NumericalError);
}

TEST_CASE("analytic free gaussian: initial slice and norm conservation") {
    const WavepacketSpec wp{0.3, 1.0, 1.0};
    const SpaceGrid sg = build_space_grid(-8.0, 8.0, 401);
    const Wavefunction psi0 = make_gaussian_packet(wp, sg);
    for (std::size_t i = 100; i <= 300; i += 40) {
        const Complex exact = analytic_free_gaussian(sg.point(i), 0.0, wp, kUnits);
        CHECK(std::abs(psi0.values[static_cast<Eigen::Index>(i)] - exact) < 1e-14);
    }
    // The dispersed packet at t = 1 still integrates to unit probability.
    double norm = 0.0;
    const auto w = sg.trapezoid_weights();
    for (std::size_t i = 0; i < sg.n_points; ++i) {
        norm += std::norm(analytic_free_gaussian(sg.point(i), 1.0, wp, kUnits)) * w[i];
    }
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("kernel command writes the matrix and a convergence ladder") {
    const auto dir = fresh_dir("kernel");
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "space_grid": {"x_min": -8, "x_max": 8, "n_points": 201},
        "time_grid": {"n_slices": 8},
        "convergence_levels": 3
    })");
    cfg.output_dir = dir;
    const KernelCommandReport report = cmd_kernel(cfg);
    CHECK(report.convergence.size() == 3);
    CHECK(report.convergence.front().first == 2);
    CHECK(report.convergence.back().first == 8);
    CHECK(report.edge_leak >= 0.0);
    CHECK(report.edge_leak <= 1.0);
    CHECK(std::filesystem::exists(dir / "kernel_matrix.csv"));
    CHECK(std::filesystem::exists(dir / "kernel_convergence.csv"));
    const std::string head = slurp(dir / "kernel_matrix.csv").substr(0, 200);
    CHECK(head.find("# tool_version=") != std::string::npos);
    CHECK(head.find("# config_hash=") != std::string::npos);
}

TEST_CASE("evolve command enforces the truncation policy up front") {
    const auto dir = fresh_dir("evolve_policy");
    ExperimentConfig cfg = ExperimentConfig::from_json_text(
        R"({"wavepacket": {"x0": 7.5, "sigma0": 1.0}})");
    cfg.output_dir = dir;
    CHECK_THROWS_AS(cmd_evolve(cfg), ValidationError);
    CHECK_FALSE(std::filesystem::exists(dir / "evolution.csv"));

    ExperimentConfig bare = ExperimentConfig::from_json_text("{}");
    bare.output_dir = dir;
    CHECK_THROWS_AS(cmd_evolve(bare), ValidationError);  // no wavepacket given
}

TEST_CASE("evolve command reports small norm drift for a centered free packet") {
    const auto dir = fresh_dir("evolve");
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "space_grid": {"n_points": 401},
        "time_grid": {"n_slices": 16},
        "wavepacket": {"x0": 0.0, "sigma0": 1.0, "k0": 1.0}
    })");
    cfg.output_dir = dir;
    const EvolveReport report = cmd_evolve(cfg);
    CHECK(report.norms.size() == 17);
    CHECK(report.norm_drift < 2e-2);
    CHECK(report.final_l2_error < 2e-2);
    CHECK(std::filesystem::exists(dir / "evolution.csv"));
    CHECK(std::filesystem::exists(dir / "norm_drift.csv"));
    CHECK(std::filesystem::exists(dir / "plot_evolution.gp"));
}

TEST_CASE("transition command output is byte-identical across reruns") {
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "space_grid": {"n_points": 161},
        "time_grid": {"n_slices": 8},
        "quantities": ["position", "position_squared"]
    })");
    const auto dir1 = fresh_dir("trans1");
    const auto dir2 = fresh_dir("trans2");
    cfg.output_dir = dir1;
    cmd_transition(cfg);
    cfg.output_dir = dir2;
    cmd_transition(cfg);
    for (const char* name : {"transition_position.csv", "transition_position_squared.csv"}) {
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));
    }
}

TEST_CASE("classical-path command emits the trajectory and its summary") {
    const auto dir = fresh_dir("classical");
    ExperimentConfig cfg = ExperimentConfig::from_json_text(
        R"({"potential": {"family": "harmonic", "omega": 1.0}})");
    cfg.output_dir = dir;
    const ClassicalPathResult r = cmd_classical_path(cfg);
    CHECK(r.stationarity_residual < 1e-10);
    const std::string csv = slurp(dir / "classical_path.csv");
    CHECK(csv.find("tau,x_m") != std::string::npos);
    const std::string summary = slurp(dir / "classical_summary.json");
    CHECK(summary.find("stationarity_residual") != std::string::npos);
    CHECK(summary.find("smallest_eigenvalue") != std::string::npos);
}

TEST_CASE("variational command certifies the default harmonic path as minimal") {
    const auto dir = fresh_dir("variational");
    ExperimentConfig cfg = ExperimentConfig::from_json_text(
        R"({"potential": {"family": "harmonic", "omega": 1.0}})");
    cfg.output_dir = dir;
    const VariationalReport report = cmd_variational_check(cfg);
    CHECK(report.residual < 1e-10);
    CHECK(report.probe_fraction == 1.0);
    CHECK(report.minimal);
    CHECK(slurp(dir / "variational_report.json").find("\"minimum\"") != std::string::npos);
}

TEST_CASE("theorem command passes the exactness gate for the free default") {
    const auto dir = fresh_dir("theorem");
    ExperimentConfig cfg = ExperimentConfig::from_json_text("{}");
    cfg.output_dir = dir;
    const TheoremReport report = cmd_theorem_check(cfg);
    CHECK(report.quadratic_family);
    CHECK(report.quadratic_pass);
    CHECK(report.max_deviation < report.tol_quadratic);
    CHECK(report.hbar_points.size() == 3);
    CHECK(std::filesystem::exists(dir / "theorem_table.csv"));
    CHECK(std::filesystem::exists(dir / "theorem_hbar_scan.csv"));
    CHECK(std::filesystem::exists(dir / "theorem_summary.json"));
    CHECK(std::filesystem::exists(dir / "plot_theorem.gp"));
}

TEST_CASE("theorem command rejects endpoints in the truncation band") {
    const auto dir = fresh_dir("theorem_policy");
    ExperimentConfig cfg = ExperimentConfig::from_json_text(R"({
        "space_grid": {"n_points": 81},
        "time_grid": {"n_slices": 8},
        "endpoints": {"x_initial": 0.0, "x_final": 7.5}
    })");
    cfg.output_dir = dir;
    CHECK_THROWS_AS(cmd_theorem_check(cfg), ValidationError);
}
