#include <doctest.h>

#include <cmath>

#include "pathlab/action.hpp"

using namespace pathlab;

namespace {

double fd_gradient(const LatticePath& path, const Potential& pot, const TimeGrid& tg,
                   const PhysicalConstants& c, std::size_t k, double step) {
    LatticePath plus = path;
    LatticePath minus = path;
    plus.positions[k] += step;
    minus.positions[k] -= step;
    return (discrete_action(plus, pot, tg, c) - discrete_action(minus, pot, tg, c)) /
           (2.0 * step);
}

}  // namespace

TEST_CASE("free straight-line action is (m/2) v^2 T for any slicing") {
    const PhysicalConstants c;
    const Potential pot = Potential::free_particle();
    for (std::size_t ns : {1ul, 2ul, 4ul, 7ul, 16ul}) {
        const TimeGrid tg = build_time_grid(0.0, 1.0, ns);
        const LatticePath p = make_straight_line_path(0.0, 1.0, ns);
        CHECK(discrete_action(p, pot, tg, c) == doctest::Approx(0.5).epsilon(1e-14));
    }
}

TEST_CASE("harmonic straight-line action on four slices matches hand value") {
    // m = omega = 1, path 0 -> 1 over T = 1, n = 4.
    // Kinetic: 4 * (1/2)(0.25/0.25)^2 * 0.25 = 0.5.
    // Potential (midpoint rule): 0.25 * sum_{x in .125,.375,.625,.875} x^2/2
    //   = 0.125 * 1.3125 = 0.1640625.
    const PhysicalConstants c;
    const TimeGrid tg = build_time_grid(0.0, 1.0, 4);
    const LatticePath p = make_straight_line_path(0.0, 1.0, 4);
    const double s = discrete_action(p, Potential::harmonic(1.0, c), tg, c);
    CHECK(s == doctest::Approx(0.3359375).epsilon(1e-15));
}

TEST_CASE("action is invariant under translation when the potential is flat") {
    const PhysicalConstants c{1.0, 1.7};
    const TimeGrid tg = build_time_grid(0.0, 2.0, 5);
    const Potential pot = Potential::free_particle();
    LatticePath p = make_straight_line_path(-0.5, 1.5, 5);
    p.positions[2] += 0.3;
    p.positions[3] -= 0.4;
    LatticePath shifted = p;
    for (double& x : shifted.positions) x += 2.25;
    CHECK(discrete_action(p, pot, tg, c) ==
          doctest::Approx(discrete_action(shifted, pot, tg, c)).epsilon(1e-14));
}

TEST_CASE("free action scales quadratically with the path amplitude") {
    const PhysicalConstants c;
    const TimeGrid tg = build_time_grid(0.0, 1.0, 6);
    LatticePath p = make_straight_line_path(0.0, 1.0, 6);
    p.positions[3] += 0.5;
    LatticePath scaled = p;
    for (double& x : scaled.positions) x *= 3.0;
    const Potential pot = Potential::free_particle();
    CHECK(discrete_action(scaled, pot, tg, c) ==
          doctest::Approx(9.0 * discrete_action(p, pot, tg, c)).epsilon(1e-13));
}

TEST_CASE("gradient matches central finite differences across families") {
    const PhysicalConstants c{1.0, 1.3};
    const TimeGrid tg = build_time_grid(0.0, 1.5, 6);
    const Potential pots[] = {Potential::free_particle(), Potential::harmonic(1.2, c),
                              Potential::polynomial({0.0, 0.0, 0.0, 0.0, 0.1})};
    LatticePath p = make_straight_line_path(-0.4, 0.9, 6);
    p.positions[1] += 0.17;
    p.positions[3] -= 0.25;
    p.positions[5] += 0.08;
    const double step = 1e-6;
    for (const Potential& pot : pots) {
        const auto g = action_gradient(p, pot, tg, c);
        REQUIRE(g.size() == 5);
        for (std::size_t k = 1; k <= 5; ++k) {
            const double fd = fd_gradient(p, pot, tg, c, k, step);
            CHECK(std::abs(g[k - 1] - fd) < 1e-6);
        }
    }
}

TEST_CASE("gradient vanishes on the free straight line") {
    const PhysicalConstants c;
    const TimeGrid tg = build_time_grid(0.0, 1.0, 8);
    const LatticePath p = make_straight_line_path(-1.0, 2.0, 8);
    for (double gk : action_gradient(p, Potential::free_particle(), tg, c)) {
        CHECK(std::abs(gk) < 1e-13);
    }
}

TEST_CASE("hessian matches finite differences of the gradient") {
    const PhysicalConstants c;
    const TimeGrid tg = build_time_grid(0.0, 1.0, 5);
    const Potential pot = Potential::polynomial({0.2, -0.5, 0.7, 0.0, 0.1});
    LatticePath p = make_straight_line_path(0.0, 1.0, 5);
    p.positions[2] += 0.3;
    const TridiagonalMatrix h = action_hessian(p, pot, tg, c);
    REQUIRE(h.size() == 4);
    const double step = 1e-5;
    for (std::size_t k = 1; k <= 4; ++k) {
        LatticePath plus = p;
        LatticePath minus = p;
        plus.positions[k] += step;
        minus.positions[k] -= step;
        const auto gp = action_gradient(plus, pot, tg, c);
        const auto gm = action_gradient(minus, pot, tg, c);
        for (std::size_t j = 1; j <= 4; ++j) {
            const double fd = (gp[j - 1] - gm[j - 1]) / (2.0 * step);
            double exact = 0.0;
            if (j == k) exact = h.diag[k - 1];
            else if (j + 1 == k) exact = h.off_diag[j - 1];
            else if (j == k + 1) exact = h.off_diag[k - 1];
            CHECK(std::abs(exact - fd) < 1e-7);
        }
    }
}

TEST_CASE("free hessian has the discrete Laplacian stencil") {
    const PhysicalConstants c{1.0, 2.0};
    const TimeGrid tg = build_time_grid(0.0, 1.0, 4);
    const LatticePath p = make_straight_line_path(0.0, 1.0, 4);
    const TridiagonalMatrix h = action_hessian(p, Potential::free_particle(), tg, c);
    for (double d : h.diag) CHECK(d == doctest::Approx(2.0 * c.mass / tg.dt).epsilon(1e-14));
    for (double o : h.off_diag) CHECK(o == doctest::Approx(-c.mass / tg.dt).epsilon(1e-14));
}

TEST_CASE("action rejects paths inconsistent with the time grid") {
    const PhysicalConstants c;
    const TimeGrid tg = build_time_grid(0.0, 1.0, 4);
    const LatticePath p = make_straight_line_path(0.0, 1.0, 3);
    CHECK_THROWS_AS(discrete_action(p, Potential::free_particle(), tg, c), ValidationError);
    CHECK_THROWS_AS(action_gradient(p, Potential::free_particle(), tg, c), ValidationError);
    CHECK_THROWS_AS(action_hessian(p, Potential::free_particle(), tg, c), ValidationError);
}
