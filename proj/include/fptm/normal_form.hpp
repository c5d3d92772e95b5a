#pragma once

#include <utility>
#include <vector>

#include "fptm/dynamics.hpp"
#include "fptm/frequency.hpp"
#include "fptm/jets.hpp"

namespace fptm {

// Order-N averaged data in the A-reduced coordinates (x1, x2) in
// T^r x T^{d-r}:
//   x1 <- x1 + omega + eps^n beta(x2, eps) + eps^{n+m} r1 + ...
//   x2 <- x2 + eps^n eta(x2, eps) + eps^{n+m} r2 + ...
struct NormalForm {
    MapFamily::Kind kind = MapFamily::Kind::foliation;
    ResonanceData resonance;
    int n = 0;  // first order with a nonvanishing resonant average
    int m = 0;  // retained resonant orders (N = n + m - 1)
    double alpha0 = 1.0;
    double threshold = 0.0;

    // Conjugacy jets h^0..h^{n+m-2} in original coordinates; scalar-valued
    // for the foliation kind (H = Id + sum eps^{j+1} h^j Omega), d-valued
    // for the generic kind.
    std::vector<TrigSeries> h_jets;
    // Resonant averages per jet order j (sits at eps^{j+1}), collapsed to
    // T^{d-r}; scalar for foliation, reduced d-vector for generic.
    std::vector<TrigSeries> resonant_sigma;

    // beta/eta expansion: index i multiplies eps^i relative to eps^n.
    std::vector<TrigSeries> beta_jets;  // values in R^r
    std::vector<TrigSeries> eta_jets;   // values in R^{d-r}

    double eps_probe = 0.0;
    TrigSeries r1, r2;            // measured remainders at eps_probe (reduced)
    double defect_at_probe = 0.0;

    Eigen::VectorXd reduced_direction;  // A * Omega

    TrigSeries beta_at(double eps) const;
    TrigSeries eta_at(double eps) const;
    // Displacement of H - Id at a concrete eps (scalar / vector).
    TrigSeries h_displacement_at(double eps) const;
};

// One step of the cohomology hierarchy: with h^0..h^{j-1} known, assembles
// the order-j right-hand side from the conjugation identity, solves for h^j
// and returns (h_j in original coordinates, resonant average on T^{d-r}).
std::pair<TrigSeries, TrigSeries> averaging_order(const MapFamily& F,
                                                  const ResonanceData& rd, int j,
                                                  const std::vector<TrigSeries>& lower_jets,
                                                  const JetContext& ctx);

NormalForm resonant_normal_form(const MapFamily& F, const ResonanceData& rd, int N,
                                double eps_probe, const JetContext& ctx);

// Sup-norm of (exact conjugated map - truncated normal form) at eps, in
// reduced coordinates.  Scales like eps^{n+m}.
double conjugation_defect(const MapFamily& F, const NormalForm& nf, double eps,
                          const JetContext& ctx);

struct DeltaModel {
    double slope = 0.0;  // fitted ||Delta(alpha)||_C0 per |Delta alpha|
    double bound = 0.0;  // measured ||D(H^{-1})||_C0 * |Omega|_inf
    std::vector<double> offsets;
    std::vector<double> norms;
};

DeltaModel delta_model(const MapFamily& F, const NormalForm& nf,
                       const std::vector<double>& probe_offsets, const JetContext& ctx);

// Exact conjugated reduced map at (alpha0 + alpha_offset, eps):
// W = A o H^{-1} o F o H o A^{-1}.  For the foliation kind W is again
// foliation-preserving with direction A*Omega and scalar displacement psi.
struct ReducedMap {
    MapFamily::Kind kind = MapFamily::Kind::foliation;
    int dim = 0;
    int r = 0;
    Eigen::VectorXd direction;  // A*Omega (foliation kind)
    TrigSeries psi;             // scalar displacement (foliation)
    TrigSeries disp;            // vector displacement incl. rotation (generic)

    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd apply_many(const Eigen::MatrixXd& P) const;
    // Displacement vector(s) at given points.
    Eigen::MatrixXd displacement_many(const Eigen::MatrixXd& P) const;
};

ReducedMap make_reduced_map(const MapFamily& F, const NormalForm& nf, double alpha,
                            double eps, const JetContext& ctx);

// Builds a reduced map directly from displacement data (synthetic tests).
ReducedMap reduced_map_from_displacement(const TrigSeries& disp, int r);

}  // namespace fptm
