#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "fptm/lattice.hpp"

namespace fptm {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

// Finitely supported Fourier series on T^d with values in R^s:
//     w(x) = sum_k c_k e^{2 pi i <k, x>},   c_{-k} = conj(c_k).
// Coefficients are stored sparsely; real-valuedness is an invariant kept by
// set_coeff/symmetrize.
class TrigSeries {
public:
    TrigSeries() = default;
    TrigSeries(int dim, int value_dim);

    static TrigSeries constant(int dim, const Eigen::VectorXd& value);
    static TrigSeries constant(int dim, double value);
    // amp * sin(2 pi <k,x>)  /  amp * cos(2 pi <k,x>), scalar-valued
    static TrigSeries sin_mode(int dim, const MultiIndex& k, double amp);
    static TrigSeries cos_mode(int dim, const MultiIndex& k, double amp);

    int dim() const { return dim_; }
    int value_dim() const { return value_dim_; }
    bool empty() const { return coeffs_.empty(); }
    int band() const;  // max |k|_inf over stored support

    const std::map<MultiIndex, Eigen::VectorXcd>& coeffs() const { return coeffs_; }
    Eigen::VectorXcd coeff(const MultiIndex& k) const;  // zero when absent
    // Stores c at k and conj(c) at -k.
    void set_coeff(const MultiIndex& k, const Eigen::VectorXcd& c);
    void set_coeff(const MultiIndex& k, Complex c);  // scalar series
    void add_coeff(const MultiIndex& k, const Eigen::VectorXcd& c);
    // Writes only mode k.  For algorithms that visit k and -k separately;
    // the caller is responsible for overall reality.
    void set_coeff_single(const MultiIndex& k, const Eigen::VectorXcd& c);

    Eigen::VectorXcd mean() const { return coeff(MultiIndex(dim_, 0)); }
    double mean_scalar() const;

    TrigSeries& operator+=(const TrigSeries& o);
    TrigSeries& operator-=(const TrigSeries& o);
    TrigSeries& operator*=(double s);
    friend TrigSeries operator+(TrigSeries a, const TrigSeries& b) { return a += b; }
    friend TrigSeries operator-(TrigSeries a, const TrigSeries& b) { return a -= b; }
    friend TrigSeries operator*(TrigSeries a, double s) { return a *= s; }
    friend TrigSeries operator*(double s, TrigSeries a) { return a *= s; }
    TrigSeries operator-() const;

    TrigSeries component(int j) const;  // scalar series of value component j
    static TrigSeries stack(const std::vector<TrigSeries>& parts);
    // value' = M * value (real matrix acting on the value space)
    TrigSeries value_map(const Eigen::MatrixXd& M) const;
    // scalar series times a constant vector
    TrigSeries times_vector(const Eigen::VectorXd& v) const;

    TrigSeries derivative(int axis) const;
    TrigSeries directional_derivative(const Eigen::VectorXd& dir) const;
    // gradient of a scalar series: value components are d/dx_i
    TrigSeries gradient() const;
    TrigSeries shifted(const Eigen::VectorXd& delta) const;  // x -> w(x + delta)
    // Mode relabeling k -> M k (exact, integer).  Used for unimodular
    // changes of variables: (w o A^{-1}) = w.mode_map(A^{-T}).
    TrigSeries mode_map(const IntMatrix& M) const;
    // Fix the trailing coordinates at a point; returns a series on the
    // leading head_dims coordinates (exact slice).
    TrigSeries restrict_head(int head_dims, const Eigen::VectorXd& tail_point) const;
    // Embed a series on T^r as a series on T^{r + extra} (trailing
    // coordinates unused).
    TrigSeries promote_dims(int new_dim) const;
    // Embed a series in the trailing coordinates of T^{new_dim}.
    TrigSeries promote_dims_tail(int new_dim) const;

    void prune(double rel_floor = 1e-15);
    void symmetrize();
    double max_coeff_norm() const;
    double coeff_abs_sum() const;                 // sum_k |c_k|_inf, a C0 bound
    double weighted_coeff_sum(double rho) const;  // sum_k |c_k|_inf e^{2 pi |k|_1 rho}

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const;
    double eval_scalar(const Eigen::VectorXd& x) const;
    double eval_scalar1(double x) const;  // dim-1 convenience
    // Batched evaluation; points are rows of P ((n x dim) -> (n x value_dim)).
    Eigen::MatrixXd eval_many(const Eigen::MatrixXd& P) const;

private:
    void check_compatible(const TrigSeries& o) const;

    int dim_ = 0;
    int value_dim_ = 0;
    std::map<MultiIndex, Eigen::VectorXcd> coeffs_;
};

MultiIndex negate_index(const MultiIndex& k);
int index_linf(const MultiIndex& k);
int index_l1(const MultiIndex& k);

}  // namespace fptm
