#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fptm/lattice.hpp"

namespace fptm {

// Components are cycles per iterate.
using FrequencyVector = Eigen::VectorXd;

struct ResonanceRelation {
    IntVector k;     // nonzero integer vector
    std::int64_t n;  // nearest integer to k . Omega
    double defect;   // |k . Omega - n|
};

struct ResonanceData {
    std::vector<ResonanceRelation> relations;  // generating set (HNF rows)
    IntMatrix basis;                           // (d-r) x d
    IntMatrix A;                               // d x d, det = +1
    FrequencyVector omega;                     // intrinsic frequency, dim r
    IntVector L;                               // A*Omega = (omega, 0) + L
    int r = 0;
    int dim = 0;

    Eigen::MatrixXd A_real() const { return A.cast<double>(); }
    Eigen::MatrixXd A_inv_real() const {
        return int_inverse_unimodular(A).cast<double>();
    }
};

struct DiophantineEstimate {
    double tau = 0;
    double nu = 0;  // exact min of |k.omega - n| |k|_inf^tau over the box
    int k_max = 0;
    IntVector worst_k;
};

// Every generating relation k with 0 < |k|_inf <= k_max and
// dist(k.Omega, Z) <= tol, reduced to a lattice basis.  Empty result means
// numerically non-resonant up to k_max.
std::vector<ResonanceRelation> detect_resonances(const FrequencyVector& Omega,
                                                 int k_max, double tol);

// A*Omega = (omega, 0) + L with A in SL(d, Z); omega re-checked for
// resonances up to verify_k_max.  Throws NonSaturatedModule /
// ResidualResonance; empty relations are a precondition violation.
ResonanceData intrinsic_decomposition(const FrequencyVector& Omega,
                                      const std::vector<ResonanceRelation>& relations,
                                      int verify_k_max = 32, double tol = 1e-9);

DiophantineEstimate diophantine_estimate(const FrequencyVector& omega, double tau,
                                         int k_max);

// Accepts "golden", "sqrt(<int>)", "<p>/<q>" and plain decimals.
double parse_frequency_component(const std::string& text);
FrequencyVector parse_frequency_list(const std::vector<std::string>& parts);

inline double golden_mean() { return (std::sqrt(5.0) - 1.0) / 2.0; }

}  // namespace fptm
