#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fptm/fourier.hpp"
#include "fptm/frequency.hpp"
#include "fptm/trig_series.hpp"

namespace fptm {

// Parametric torus map family.
//   foliation: F(x) = x + alpha*Omega + eps * f_eps(x) * Omega, scalar jets
//   generic:   F(x) = x + alpha*Omega + eps * f_eps(x),        vector jets
// with f_eps = f^0 + eps f^1 + ...
struct MapFamily {
    enum class Kind { foliation, generic };

    Kind kind = Kind::foliation;
    int dim = 0;
    FrequencyVector Omega;
    double alpha = 1.0;
    double eps = 0.0;
    std::vector<TrigSeries> f_jets;

    // Scalar displacement phi = alpha + sum_j eps^{j+1} f^j (foliation only).
    TrigSeries displacement_scalar() const;
    // Vector displacement alpha*Omega + eps*f_eps (both kinds).
    TrigSeries displacement_vector() const;
    TrigSeries f_eps_series() const;  // f_eps evaluated at this->eps

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd apply_many(const Eigen::MatrixXd& P) const;
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

    MapFamily with_alpha(double a) const;
    MapFamily with_eps(double e) const;
};

// Group law for foliation-preserving displacements:
// T_f o T_g = T_{g + f o T_g}.  Collocation at grid size N, band K.
TrigSeries compose_fptm(const TrigSeries& f, const TrigSeries& g,
                        const FrequencyVector& Omega, int N, int K,
                        CompositionInfo* info = nullptr);

// Displacement of T_f^{-1}; fixed-point iteration of g = -f o T_g.
TrigSeries invert_fptm(const TrigSeries& f, const FrequencyVector& Omega, int N, int K);

// Generic analogue: displacement of (Id + d)^{-1}.
TrigSeries invert_generic(const TrigSeries& disp, int N, int K);

struct OrbitDiagnostics {
    double lyapunov_along_Omega = 0.0;
    std::vector<double> transverse_exponents;
    std::vector<double> qr_exponents;  // all d exponents from the QR cross-check
    Eigen::VectorXd rotation_estimate;
    double min_return_distance = 0.0;
};

OrbitDiagnostics lyapunov(const MapFamily& map, const Eigen::VectorXd& x0, int horizon);

// Circle map given by its (1-periodic) displacement: lift(x) = x + disp(x).
struct CircleMap {
    std::function<double(double)> displacement;
};
CircleMap circle_map_from_series(const TrigSeries& disp);

struct RotationNumber {
    double value = 0.0;
    double error = 0.0;  // half the last extrapolation gap
};

// Birkhoff average with Richardson extrapolation over horizons
// horizon/2^{levels-1}, ..., horizon.
RotationNumber rotation_number(const CircleMap& map, double x0, long horizon,
                               int refinements = 4);

double torus_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

double periodicity_probe(const MapFamily& map, int grid_size, int n_max);

}  // namespace fptm
