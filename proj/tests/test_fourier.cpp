#include <cmath>

#include "doctest.h"
#include "fptm/errors.hpp"
#include "fptm/fourier.hpp"

using namespace fptm;

namespace {

const double kPhi = golden_mean();

// g(x, y) = a + d1 sin(2 pi x) + d2 sin(2 pi y)  (the worked 2-torus field)
TrigSeries example_g(double a, double d1, double d2) {
    TrigSeries g = TrigSeries::constant(2, a);
    g += TrigSeries::sin_mode(2, {1, 0}, d1);
    g += TrigSeries::sin_mode(2, {0, 1}, d2);
    return g;
}

Eigen::VectorXd pt2(double x, double y) {
    Eigen::VectorXd p(2);
    p << x, y;
    return p;
}

}  // namespace

TEST_CASE("eval basics") {
    TrigSeries zero(2, 1);
    CHECK(zero.eval(pt2(0.3, 0.7))(0) == 0.0);

    TrigSeries c = TrigSeries::cos_mode(1, {1}, 1.0);
    Eigen::VectorXd x0(1);
    x0 << 0.0;
    CHECK(c.eval(x0)(0) == doctest::Approx(1.0).epsilon(1e-15));

    TrigSeries g = example_g(0.3, 0.1, 0.5);
    CHECK(g.eval(pt2(0.25, 0.0))(0) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("grid round trip is coefficient-exact for band-limited input") {
    TrigSeries g = example_g(0.3, 0.1, 0.5);
    GridFn grid = sample_grid(g, 16);
    TrigSeries back = grid_to_series(grid, 1);
    TrigSeries diff = back - g;
    CHECK(diff.max_coeff_norm() < 1e-14);
}

TEST_CASE("product of cosines via collocation") {
    TrigSeries c = TrigSeries::cos_mode(1, {1}, 1.0);
    TrigSeries prod = grid_product(c, c, 8, 4);
    CHECK(prod.coeff({0})(0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(prod.coeff({2})(0).real() == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(std::abs(prod.coeff({1})(0)) < 1e-14);
}

TEST_CASE("composition refinement self-consistency") {
    // g(x + 0.3 + 0.01 sin(2 pi x), y) sampled at N=64 and N=128, band 16.
    TrigSeries g = example_g(0.3, 0.1, 0.5);
    TrigSeries s = TrigSeries::sin_mode(2, {1, 0}, 0.01);

    auto compose_at = [&](int N) {
        Eigen::MatrixXd P = grid_points(2, N);
        Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(P.rows(), 2);
        shift.col(0) = s.eval_many(P).col(0).array() + 0.3;
        Eigen::MatrixXd vals = g.eval_many(P + shift);
        return values_to_series(2, N, vals, 16);
    };
    TrigSeries a = compose_at(64);
    TrigSeries b = compose_at(128);
    CHECK((a - b).max_coeff_norm() < 1e-10);
}

TEST_CASE("aliasing risk is reported") {
    TrigSeries c = TrigSeries::cos_mode(1, {5}, 1.0);
    CompositionInfo info;
    grid_product(c, c, 16, 8, &info);
    CHECK(info.aliasing_risk);  // band 5 > 16/4
}

TEST_CASE("cohomology solve: zero input") {
    TrigSeries Q(1, 1);
    FrequencyVector om(1);
    om << kPhi;
    auto res = cohomology_solve(Q, om);
    CHECK(res.W.empty());
    CHECK(res.resonant_part.empty());
}

TEST_CASE("cohomology solve: golden-mean cosine has tiny residual") {
    TrigSeries Q = TrigSeries::cos_mode(1, {1}, 1.0);
    FrequencyVector om(1);
    om << kPhi;
    auto res = cohomology_solve(Q, om);
    CHECK(res.W.mean()(0) == Complex(0.0, 0.0));

    // residual oracle on a 64-grid: W(x) - W(x + om) - Q(x)
    Eigen::MatrixXd P = grid_points(1, 64);
    Eigen::VectorXd r = res.W.eval_many(P) - res.W.shifted(om).eval_many(P) -
                        Q.eval_many(P) + res.resonant_part.eval_many(P);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("cohomology solve: purely resonant mode is projected out") {
    // reduced frequency (phi, 0), Q = sin(2 pi x2): a pure m = 0 mode.
    FrequencyVector Omega(2);
    Omega << kPhi, 1.0;
    auto rd = intrinsic_decomposition(Omega, detect_resonances(Omega, 8, 1e-9));
    TrigSeries Q = TrigSeries::sin_mode(2, {0, 1}, 1.0);
    FrequencyVector om_full = rd.A_real() * Omega;  // = (phi, 1) ~ (phi, 0) mod 1
    auto res = cohomology_solve(Q, om_full, &rd);
    CHECK(res.W.empty());
    CHECK((res.resonant_part - Q).max_coeff_norm() < 1e-15);
}

TEST_CASE("cohomology solve: resonant divisor breaches the floor") {
    TrigSeries Q = TrigSeries::cos_mode(1, {2}, 1.0);
    FrequencyVector om(1);
    om << 0.5;  // 2 * 0.5 integer: |1 - e^{2 pi i}| = 0
    CHECK_THROWS_AS(cohomology_solve(Q, om), SmallDivisorBreach);
}

TEST_CASE("cohomology solve is linear") {
    TrigSeries Q1 = TrigSeries::cos_mode(1, {1}, 1.0);
    TrigSeries Q2 = TrigSeries::sin_mode(1, {3}, 1.0);
    FrequencyVector om(1);
    om << kPhi;
    const double a = 0.7, b = -1.3;
    auto lhs = cohomology_solve(a * Q1 + b * Q2, om);
    auto r1 = cohomology_solve(Q1, om);
    auto r2 = cohomology_solve(Q2, om);
    TrigSeries diff = lhs.W - (a * r1.W + b * r2.W);
    CHECK(diff.max_coeff_norm() < 1e-14);
}

TEST_CASE("solver identity on a dense band") {
    // band-8 real Q with exponentially decaying random-ish coefficients
    TrigSeries Q(2, 1);
    unsigned state = 12345u;
    auto next = [&state]() {
        state = state * 1664525u + 1013904223u;
        return (state >> 8) / 16777216.0 - 0.5;
    };
    for (int k1 = -8; k1 <= 8; ++k1)
        for (int k2 = -8; k2 <= 8; ++k2) {
            if (k1 < 0 || (k1 == 0 && k2 <= 0)) continue;
            double decay = std::exp(-0.4 * (std::abs(k1) + std::abs(k2)));
            Q.set_coeff({k1, k2}, Complex(next() * decay, next() * decay));
        }
    FrequencyVector om(2);
    om << kPhi, std::sqrt(2.0) - 1.0;
    auto res = cohomology_solve(Q, om);
    Eigen::MatrixXd P = grid_points(2, 48);
    Eigen::VectorXd r = res.W.eval_many(P) - res.W.shifted(om).eval_many(P) -
                        Q.eval_many(P) + res.resonant_part.eval_many(P);
    CHECK(r.cwiseAbs().maxCoeff() < 1e-10 * std::max(1.0, Q.coeff_abs_sum()));
    CHECK(std::abs(res.W.mean()(0)) == 0.0);
}

TEST_CASE("norm report") {
    TrigSeries zero(1, 1);
    NormReport z = norms(zero, 0.1, 2);
    CHECK(z.sup_norm_rho == 0.0);
    CHECK(z.c_norms[0] == 0.0);

    TrigSeries c = TrigSeries::cos_mode(1, {1}, 1.0);
    NormReport n = norms(c, 0.1, 1);
    CHECK(n.sup_norm_rho == doctest::Approx(std::exp(2.0 * M_PI * 0.1)).epsilon(1e-12));
    CHECK(n.c_norms[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(n.c_norms[1] == doctest::Approx(2.0 * M_PI).epsilon(1e-6));
}

TEST_CASE("cohomology estimate has the predicted shape") {
    // || W ||_{rho - sigma} <= C nu^{-1} sigma^{-tau} || Q ||_rho with a
    // fitted C of moderate size.
    TrigSeries Q = TrigSeries::cos_mode(1, {1}, 1.0);
    FrequencyVector om(1);
    om << kPhi;
    auto res = cohomology_solve(Q, om);
    const double rho = 0.1, sigma = 0.05, tau = 1.0;
    double nu = diophantine_estimate(om, tau, 1000).nu;
    double lhs = res.W.weighted_coeff_sum(rho - sigma);
    double rhs_base = (1.0 / nu) * std::pow(sigma, -tau) * Q.weighted_coeff_sum(rho);
    double fitted_C = lhs / rhs_base;
    CHECK(fitted_C < 10.0);
    CHECK(lhs <= std::max(1.0, fitted_C * 1.0000001) * rhs_base);
}
