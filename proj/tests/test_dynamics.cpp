#include <cmath>

#include "doctest.h"
#include "fptm/dynamics.hpp"
#include "fptm/errors.hpp"

using namespace fptm;

namespace {

const double kPhi = golden_mean();

FrequencyVector omega2() {
    FrequencyVector v(2);
    v << kPhi, 1.0;
    return v;
}

MapFamily example_map(double a, double d1, double d2, double eps, double alpha = 1.0) {
    TrigSeries g = TrigSeries::constant(2, a);
    g += TrigSeries::sin_mode(2, {1, 0}, d1);
    g += TrigSeries::sin_mode(2, {0, 1}, d2);
    MapFamily m;
    m.kind = MapFamily::Kind::foliation;
    m.dim = 2;
    m.Omega = omega2();
    m.alpha = alpha;
    m.eps = eps;
    m.f_jets = {g};
    return m;
}

}  // namespace

TEST_CASE("rotations compose additively") {
    TrigSeries f = TrigSeries::constant(2, 0.25);
    TrigSeries g = TrigSeries::constant(2, 0.5);
    TrigSeries h = compose_fptm(f, g, omega2(), 16, 4);
    CHECK(h.mean_scalar() == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(h.band() == 0);

    TrigSeries zero(2, 1);
    CHECK(compose_fptm(zero, zero, omega2(), 16, 4).empty());
}

TEST_CASE("composition matches the pointwise group law") {
    TrigSeries f = TrigSeries::sin_mode(2, {1, 0}, 0.1);
    TrigSeries g = TrigSeries::cos_mode(2, {1, 0}, 0.2);
    TrigSeries h = compose_fptm(f, g, omega2(), 64, 16);

    Eigen::MatrixXd P = grid_points(2, 32);
    for (int i = 0; i < P.rows(); i += 7) {
        Eigen::VectorXd x = P.row(i).transpose();
        Eigen::VectorXd inner = x + g.eval_scalar(x) * omega2();
        Eigen::VectorXd expect = inner + f.eval_scalar(inner) * omega2();
        Eigen::VectorXd got = x + h.eval_scalar(x) * omega2();
        CHECK(torus_distance(expect, got) < 1e-10);
    }
}

TEST_CASE("constant displacements invert to their negatives") {
    TrigSeries f = TrigSeries::constant(2, 0.37);
    TrigSeries g = invert_fptm(f, omega2(), 16, 4);
    CHECK(g.mean_scalar() == doctest::Approx(-0.37).epsilon(1e-14));
}

TEST_CASE("inverse round-trips to the zero displacement") {
    TrigSeries f = TrigSeries::sin_mode(2, {1, 0}, 0.05);
    TrigSeries g = invert_fptm(f, omega2(), 64, 16);
    TrigSeries round = compose_fptm(g, f, omega2(), 64, 16);
    CHECK(round.coeff_abs_sum() < 1e-9);
    // group law: also T_f o T_g = Id
    TrigSeries round2 = compose_fptm(f, g, omega2(), 64, 16);
    CHECK(round2.coeff_abs_sum() < 1e-8);
}

TEST_CASE("folds are rejected") {
    // 1 + grad f . Omega changes sign for a large amplitude
    TrigSeries f = TrigSeries::sin_mode(2, {1, 0}, 1.0);
    CHECK_THROWS_AS(invert_fptm(f, omega2(), 64, 16), NotInvertible);
}

TEST_CASE("rigid rotations have zero exponents") {
    MapFamily m = example_map(0.0, 0.0, 0.0, 0.0);
    Eigen::VectorXd x0(2);
    x0 << 0.1, 0.2;
    OrbitDiagnostics d = lyapunov(m, x0, 500);
    CHECK(std::abs(d.lyapunov_along_Omega) < 1e-12);
    for (double t : d.qr_exponents) CHECK(std::abs(t) < 1e-12);
}

TEST_CASE("constant f keeps the derivative at identity") {
    MapFamily m = example_map(0.3, 0.0, 0.0, 0.05);
    Eigen::VectorXd x0(2);
    x0 << 0.0, 0.0;
    OrbitDiagnostics d = lyapunov(m, x0, 500);
    CHECK(std::abs(d.lyapunov_along_Omega) < 1e-12);
    for (double t : d.transverse_exponents) CHECK(std::abs(t) < 1e-12);
}

TEST_CASE("rotation number of rigid rotations is exact") {
    TrigSeries disp = TrigSeries::constant(1, kPhi);
    RotationNumber rn = rotation_number(circle_map_from_series(disp), 0.2, 4000);
    CHECK(rn.value == doctest::Approx(kPhi).epsilon(1e-12));
    CHECK(rn.error < 1e-12);

    TrigSeries zero_disp = TrigSeries::constant(1, 0.0);
    RotationNumber z = rotation_number(circle_map_from_series(zero_disp), 0.0, 1000);
    CHECK(z.value == 0.0);
}

TEST_CASE("rotation number converges for a perturbed circle map") {
    TrigSeries disp = TrigSeries::constant(1, kPhi);
    disp += TrigSeries::sin_mode(1, {1}, 0.05);
    CircleMap cm = circle_map_from_series(disp);
    RotationNumber coarse = rotation_number(cm, 0.0, 20000);
    RotationNumber fine = rotation_number(cm, 0.0, 160000);
    CHECK(std::abs(coarse.value - fine.value) < 20.0 * (coarse.error + fine.error) + 1e-10);
}

TEST_CASE("non-monotone lifts are rejected") {
    TrigSeries disp = TrigSeries::sin_mode(1, {1}, 0.5);  // derivative pi cos > 1 somewhere
    CHECK_THROWS_AS(rotation_number(circle_map_from_series(disp), 0.0, 1000), NonMonotone);
}

TEST_CASE("irrational translations never return") {
    MapFamily m = example_map(0.0, 0.0, 0.0, 0.0, kPhi);  // rotation by phi*(phi,1)
    double dmin = periodicity_probe(m, 2, 1000);
    CHECK(dmin > 1e-5);
}

TEST_CASE("positive displacement keeps orbits from returning") {
    MapFamily m = example_map(0.7, 0.1, 0.5, 0.1);  // a > |d1| + |d2| * eps margin
    double dmin = periodicity_probe(m, 4, 300);
    CHECK(dmin > 1e-6);
}

TEST_CASE("a zero of the displacement is a fixed point") {
    // alpha = 0, f = sin(2 pi x1): phi vanishes on {x1 = 0} so those points
    // are fixed.
    MapFamily m;
    m.kind = MapFamily::Kind::foliation;
    m.dim = 2;
    m.Omega = omega2();
    m.alpha = 0.0;
    m.eps = 1.0;
    m.f_jets = {TrigSeries::sin_mode(2, {1, 0}, 0.2)};
    double dmin = periodicity_probe(m, 4, 10);
    CHECK(dmin == 0.0);
}

TEST_CASE("foliation displacement stays parallel to Omega") {
    MapFamily m = example_map(0.3, 0.1, 0.5, 0.02);
    Eigen::MatrixXd P = grid_points(2, 8);
    for (int i = 0; i < P.rows(); ++i) {
        Eigen::VectorXd x = P.row(i).transpose();
        Eigen::VectorXd d = m.apply(x) - x;
        // component of d orthogonal to Omega (2-d cross product test)
        double cross = d(0) * m.Omega(1) - d(1) * m.Omega(0);
        CHECK(std::abs(cross) < 1e-12);
    }
}
