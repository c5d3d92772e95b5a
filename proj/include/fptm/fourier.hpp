#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "fptm/frequency.hpp"
#include "fptm/trig_series.hpp"

namespace fptm {

// Values of a function on the uniform N^d grid x_j = j/N, odometer order
// with the first coordinate slowest.
struct GridFn {
    int dim = 0;
    int N = 0;
    int value_dim = 0;
    Eigen::MatrixXcd values;  // (N^d) x value_dim
};

// Row i of the returned matrix is the grid point with flat index i.
Eigen::MatrixXd grid_points(int dim, int N);

// Exact sampling of a band-limited series on the N^d grid.
GridFn sample_grid(const TrigSeries& w, int N);

// Collocation transform back to a series, keeping |k|_inf <= K_keep.
// tail_norm (if given) receives the summed magnitude of dropped modes.
TrigSeries grid_to_series(const GridFn& g, int K_keep, double* tail_norm = nullptr);
TrigSeries values_to_series(int dim, int N, const Eigen::MatrixXd& values, int K_keep,
                            double* tail_norm = nullptr);

struct CompositionInfo {
    double tail_norm = 0.0;    // coefficient mass dropped by re-truncation
    bool aliasing_risk = false;  // an input band exceeded N/4
};

// Pointwise product via collocation at size N, truncated to band K.
TrigSeries grid_product(const TrigSeries& a, const TrigSeries& b, int N, int K,
                        CompositionInfo* info = nullptr);

// w(x + shift(x)) sampled on the N^d grid; shift rows match grid rows.
Eigen::MatrixXd compose_shift_values(const TrigSeries& w, const Eigen::MatrixXd& base_points,
                                     const Eigen::MatrixXd& shifts);

struct CohomologyResult {
    TrigSeries W;              // zero-average, non-resonant modes only
    TrigSeries resonant_part;  // modes whose first-r components vanish (incl. mean)
    double min_divisor = 0.0;  // smallest |1 - e^{2 pi i k.omega}| among solved modes
};

// Solves W(x) - W(x + omega_full) = Q(x) - resonant_part(x) mode by mode:
// W^(k) = Q^(k) / (1 - e^{2 pi i k.omega_full}).  When `resonance` is given,
// coordinates are assumed already A-reduced, and modes with vanishing first-r
// components are projected out instead of solved.  Without it only the mean
// is projected out.
CohomologyResult cohomology_solve(const TrigSeries& Q, const FrequencyVector& omega_full,
                                  const ResonanceData* resonance = nullptr,
                                  double divisor_floor = 1e-12);

struct NormReport {
    double rho = 0.0;
    double sup_norm_rho = 0.0;           // sum_k |c_k| e^{2 pi |k|_1 rho}
    std::vector<double> c_norms;         // grid sup of |D^j w|, j = 0..j_max
};

NormReport norms(const TrigSeries& w, double rho, int j_max);

}  // namespace fptm
