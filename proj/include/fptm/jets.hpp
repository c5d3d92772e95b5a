#pragma once

#include <vector>

#include "fptm/fourier.hpp"
#include "fptm/trig_series.hpp"

namespace fptm {

// Collocation parameters shared by jet operations.
struct JetContext {
    int grid_N = 64;
    int band_K = 16;
    double coeff_floor = 1e-15;
};

// Truncated power series in eps with TrigSeries coefficients:
//   a(x; eps) = sum_{j<=order} eps^j a_j(x).
class SeriesJet {
public:
    SeriesJet() = default;
    SeriesJet(int order, int dim, int value_dim);

    int order() const { return static_cast<int>(terms_.size()) - 1; }
    int dim() const { return terms_.empty() ? 0 : terms_[0].dim(); }
    int value_dim() const { return terms_.empty() ? 0 : terms_[0].value_dim(); }

    TrigSeries& term(int j) { return terms_.at(j); }
    const TrigSeries& term(int j) const { return terms_.at(j); }

    SeriesJet& operator+=(const SeriesJet& o);
    SeriesJet& operator-=(const SeriesJet& o);
    SeriesJet& operator*=(double s);
    friend SeriesJet operator+(SeriesJet a, const SeriesJet& b) { return a += b; }
    friend SeriesJet operator-(SeriesJet a, const SeriesJet& b) { return a -= b; }
    friend SeriesJet operator*(SeriesJet a, double s) { return a *= s; }
    friend SeriesJet operator*(double s, SeriesJet a) { return a *= s; }

    SeriesJet component(int j) const;
    SeriesJet times_vector(const Eigen::VectorXd& v) const;

    // Numeric sum at a concrete eps.
    TrigSeries value_at(double eps) const;

    void prune(double floor = 1e-15);

private:
    std::vector<TrigSeries> terms_;
};

// Cauchy product of jets; scalar*scalar, scalar*vector or vector*scalar.
SeriesJet jet_mul(const SeriesJet& a, const SeriesJet& b, const JetContext& ctx);

// outer(x + s(x; eps) * dir) where s is a scalar jet whose order-0 term is a
// constant.  The workhorse for foliation-preserving compositions.
SeriesJet compose_directional(const SeriesJet& outer, const SeriesJet& shift,
                              const Eigen::VectorXd& dir, const JetContext& ctx);

// outer(x + delta(x; eps)) for a vector jet delta whose order-0 term is a
// constant vector (generic torus maps).
SeriesJet compose_displaced(const SeriesJet& outer, const SeriesJet& delta,
                            const JetContext& ctx);

// outer evaluated along an embedded jet curve: sigma in T^r maps to the point
// (sigma, tail0) + delta(sigma; eps) in T^d, where delta is a d-vector jet on
// T^r with delta.term(0) == 0.  Used by the Lindstedt recursion.
SeriesJet compose_embedded(const TrigSeries& outer, const Eigen::VectorXd& tail0,
                           const SeriesJet& delta, const JetContext& ctx);

}  // namespace fptm
