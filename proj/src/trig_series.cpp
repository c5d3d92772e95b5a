#include "fptm/trig_series.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fptm/errors.hpp"

namespace fptm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

MultiIndex negate_index(const MultiIndex& k) {
    MultiIndex r(k.size());
    for (size_t i = 0; i < k.size(); ++i) r[i] = -k[i];
    return r;
}

int index_linf(const MultiIndex& k) {
    int m = 0;
    for (int v : k) m = std::max(m, std::abs(v));
    return m;
}

int index_l1(const MultiIndex& k) {
    int m = 0;
    for (int v : k) m += std::abs(v);
    return m;
}

TrigSeries::TrigSeries(int dim, int value_dim) : dim_(dim), value_dim_(value_dim) {
    if (dim < 1 || value_dim < 1)
        throw std::invalid_argument("TrigSeries: dim and value_dim must be >= 1");
}

TrigSeries TrigSeries::constant(int dim, const Eigen::VectorXd& value) {
    TrigSeries s(dim, static_cast<int>(value.size()));
    if (value.cwiseAbs().maxCoeff() > 0.0)
        s.coeffs_[MultiIndex(dim, 0)] = value.cast<Complex>();
    return s;
}

TrigSeries TrigSeries::constant(int dim, double value) {
    Eigen::VectorXd v(1);
    v << value;
    return constant(dim, v);
}

TrigSeries TrigSeries::sin_mode(int dim, const MultiIndex& k, double amp) {
    TrigSeries s(dim, 1);
    Eigen::VectorXcd c(1);
    c << Complex(0.0, -0.5 * amp);  // sin = (e^{i t} - e^{-i t}) / (2i)
    s.set_coeff(k, c);
    return s;
}

TrigSeries TrigSeries::cos_mode(int dim, const MultiIndex& k, double amp) {
    TrigSeries s(dim, 1);
    Eigen::VectorXcd c(1);
    c << Complex(0.5 * amp, 0.0);
    s.set_coeff(k, c);
    return s;
}

int TrigSeries::band() const {
    int b = 0;
    for (const auto& [k, c] : coeffs_) b = std::max(b, index_linf(k));
    return b;
}

Eigen::VectorXcd TrigSeries::coeff(const MultiIndex& k) const {
    auto it = coeffs_.find(k);
    if (it != coeffs_.end()) return it->second;
    return Eigen::VectorXcd::Zero(value_dim_);
}

void TrigSeries::set_coeff(const MultiIndex& k, const Eigen::VectorXcd& c) {
    if (static_cast<int>(k.size()) != dim_ || c.size() != value_dim_)
        throw std::invalid_argument("TrigSeries::set_coeff: shape mismatch");
    if (c.cwiseAbs().maxCoeff() == 0.0) {
        coeffs_.erase(k);
        coeffs_.erase(negate_index(k));
        return;
    }
    coeffs_[k] = c;
    coeffs_[negate_index(k)] = c.conjugate();
}

void TrigSeries::set_coeff(const MultiIndex& k, Complex c) {
    Eigen::VectorXcd v(1);
    v << c;
    set_coeff(k, v);
}

void TrigSeries::add_coeff(const MultiIndex& k, const Eigen::VectorXcd& c) {
    set_coeff(k, coeff(k) + c);
}

void TrigSeries::set_coeff_single(const MultiIndex& k, const Eigen::VectorXcd& c) {
    if (static_cast<int>(k.size()) != dim_ || c.size() != value_dim_)
        throw std::invalid_argument("TrigSeries::set_coeff_single: shape mismatch");
    if (c.cwiseAbs().maxCoeff() == 0.0) {
        coeffs_.erase(k);
        return;
    }
    coeffs_[k] = c;
}

double TrigSeries::mean_scalar() const {
    if (value_dim_ != 1) throw std::invalid_argument("mean_scalar: not a scalar series");
    return mean()(0).real();
}

void TrigSeries::check_compatible(const TrigSeries& o) const {
    if (dim_ != o.dim_ || value_dim_ != o.value_dim_)
        throw std::invalid_argument("TrigSeries: incompatible shapes");
}

TrigSeries& TrigSeries::operator+=(const TrigSeries& o) {
    if (empty() && coeffs_.empty() && dim_ == 0) {
        *this = o;
        return *this;
    }
    check_compatible(o);
    for (const auto& [k, c] : o.coeffs_) {
        auto it = coeffs_.find(k);
        if (it == coeffs_.end())
            coeffs_[k] = c;
        else {
            it->second += c;
            if (it->second.cwiseAbs().maxCoeff() == 0.0) coeffs_.erase(it);
        }
    }
    return *this;
}

TrigSeries& TrigSeries::operator-=(const TrigSeries& o) {
    return *this += (-o);
}

TrigSeries& TrigSeries::operator*=(double s) {
    if (s == 0.0) {
        coeffs_.clear();
        return *this;
    }
    for (auto& [k, c] : coeffs_) c *= s;
    return *this;
}

TrigSeries TrigSeries::operator-() const {
    TrigSeries r = *this;
    for (auto& [k, c] : r.coeffs_) c = -c;
    return r;
}

TrigSeries TrigSeries::component(int j) const {
    TrigSeries r(dim_, 1);
    for (const auto& [k, c] : coeffs_) {
        Eigen::VectorXcd v(1);
        v << c(j);
        if (std::abs(v(0)) > 0.0) r.coeffs_[k] = v;
    }
    return r;
}

TrigSeries TrigSeries::stack(const std::vector<TrigSeries>& parts) {
    if (parts.empty()) throw std::invalid_argument("stack: empty");
    int total = 0;
    for (const auto& p : parts) total += p.value_dim();
    TrigSeries r(parts[0].dim(), total);
    int off = 0;
    for (const auto& p : parts) {
        for (const auto& [k, c] : p.coeffs()) {
            auto it = r.coeffs_.find(k);
            if (it == r.coeffs_.end()) {
                Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total);
                v.segment(off, p.value_dim()) = c;
                r.coeffs_[k] = v;
            } else {
                it->second.segment(off, p.value_dim()) += c;
            }
        }
        off += p.value_dim();
    }
    return r;
}

TrigSeries TrigSeries::value_map(const Eigen::MatrixXd& M) const {
    TrigSeries r(dim_, static_cast<int>(M.rows()));
    for (const auto& [k, c] : coeffs_) {
        Eigen::VectorXcd v = M.cast<Complex>() * c;
        if (v.cwiseAbs().maxCoeff() > 0.0) r.coeffs_[k] = v;
    }
    return r;
}

TrigSeries TrigSeries::times_vector(const Eigen::VectorXd& v) const {
    if (value_dim_ != 1) throw std::invalid_argument("times_vector: scalar series required");
    TrigSeries r(dim_, static_cast<int>(v.size()));
    for (const auto& [k, c] : coeffs_) r.coeffs_[k] = c(0) * v.cast<Complex>();
    return r;
}

TrigSeries TrigSeries::derivative(int axis) const {
    TrigSeries r(dim_, value_dim_);
    for (const auto& [k, c] : coeffs_) {
        if (k[axis] == 0) continue;
        r.coeffs_[k] = Complex(0.0, kTwoPi * k[axis]) * c;
    }
    return r;
}

TrigSeries TrigSeries::directional_derivative(const Eigen::VectorXd& dir) const {
    TrigSeries r(dim_, value_dim_);
    for (const auto& [k, c] : coeffs_) {
        double kd = 0.0;
        for (int i = 0; i < dim_; ++i) kd += k[i] * dir(i);
        if (kd == 0.0) continue;
        r.coeffs_[k] = Complex(0.0, kTwoPi * kd) * c;
    }
    return r;
}

TrigSeries TrigSeries::gradient() const {
    if (value_dim_ != 1) throw std::invalid_argument("gradient: scalar series required");
    TrigSeries r(dim_, dim_);
    for (const auto& [k, c] : coeffs_) {
        Eigen::VectorXcd v(dim_);
        for (int i = 0; i < dim_; ++i) v(i) = Complex(0.0, kTwoPi * k[i]) * c(0);
        if (v.cwiseAbs().maxCoeff() > 0.0) r.coeffs_[k] = v;
    }
    return r;
}

TrigSeries TrigSeries::shifted(const Eigen::VectorXd& delta) const {
    TrigSeries r(dim_, value_dim_);
    for (const auto& [k, c] : coeffs_) {
        double kd = 0.0;
        for (int i = 0; i < dim_; ++i) kd += k[i] * delta(i);
        r.coeffs_[k] = std::polar(1.0, kTwoPi * kd) * c;
    }
    r.symmetrize();
    return r;
}

TrigSeries TrigSeries::mode_map(const IntMatrix& M) const {
    if (M.rows() != dim_ || M.cols() != dim_)
        throw std::invalid_argument("mode_map: matrix shape mismatch");
    TrigSeries r(dim_, value_dim_);
    for (const auto& [k, c] : coeffs_) {
        MultiIndex nk(dim_, 0);
        for (int i = 0; i < dim_; ++i) {
            std::int64_t acc = 0;
            for (int j = 0; j < dim_; ++j) acc += M(i, j) * k[j];
            nk[i] = static_cast<int>(acc);
        }
        auto it = r.coeffs_.find(nk);
        if (it == r.coeffs_.end())
            r.coeffs_[nk] = c;
        else
            it->second += c;
    }
    return r;
}

TrigSeries TrigSeries::restrict_head(int head_dims, const Eigen::VectorXd& tail_point) const {
    const int tail = dim_ - head_dims;
    if (tail < 0 || tail_point.size() != tail)
        throw std::invalid_argument("restrict_head: bad split");
    TrigSeries r(head_dims, value_dim_);
    for (const auto& [k, c] : coeffs_) {
        double phase = 0.0;
        for (int i = 0; i < tail; ++i) phase += k[head_dims + i] * tail_point(i);
        MultiIndex hk(k.begin(), k.begin() + head_dims);
        Eigen::VectorXcd add = std::polar(1.0, kTwoPi * phase) * c;
        auto it = r.coeffs_.find(hk);
        if (it == r.coeffs_.end())
            r.coeffs_[hk] = add;
        else
            it->second += add;
    }
    r.symmetrize();
    r.prune();
    return r;
}

TrigSeries TrigSeries::promote_dims(int new_dim) const {
    if (new_dim < dim_) throw std::invalid_argument("promote_dims: shrinking");
    TrigSeries r(new_dim, value_dim_);
    for (const auto& [k, c] : coeffs_) {
        MultiIndex nk(new_dim, 0);
        std::copy(k.begin(), k.end(), nk.begin());
        r.coeffs_[nk] = c;
    }
    return r;
}

TrigSeries TrigSeries::promote_dims_tail(int new_dim) const {
    if (new_dim < dim_) throw std::invalid_argument("promote_dims_tail: shrinking");
    const int off = new_dim - dim_;
    TrigSeries r(new_dim, value_dim_);
    for (const auto& [k, c] : coeffs_) {
        MultiIndex nk(new_dim, 0);
        std::copy(k.begin(), k.end(), nk.begin() + off);
        r.coeffs_[nk] = c;
    }
    return r;
}

void TrigSeries::prune(double rel_floor) {
    double top = max_coeff_norm();
    if (top == 0.0) {
        coeffs_.clear();
        return;
    }
    const double floor = rel_floor * top;
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second.cwiseAbs().maxCoeff() < floor)
            it = coeffs_.erase(it);
        else
            ++it;
    }
}

void TrigSeries::symmetrize() {
    std::map<MultiIndex, Eigen::VectorXcd> fixed;
    for (const auto& [k, c] : coeffs_) {
        if (fixed.count(k)) continue;
        MultiIndex nk = negate_index(k);
        auto itn = coeffs_.find(nk);
        Eigen::VectorXcd cn =
            itn != coeffs_.end() ? itn->second : Eigen::VectorXcd::Zero(value_dim_);
        Eigen::VectorXcd avg = 0.5 * (c + cn.conjugate());
        if (avg.cwiseAbs().maxCoeff() == 0.0) continue;
        fixed[k] = avg;
        fixed[nk] = avg.conjugate();
    }
    coeffs_ = std::move(fixed);
}

double TrigSeries::max_coeff_norm() const {
    double m = 0.0;
    for (const auto& [k, c] : coeffs_) m = std::max(m, c.cwiseAbs().maxCoeff());
    return m;
}

double TrigSeries::coeff_abs_sum() const {
    double s = 0.0;
    for (const auto& [k, c] : coeffs_) s += c.cwiseAbs().maxCoeff();
    return s;
}

double TrigSeries::weighted_coeff_sum(double rho) const {
    double s = 0.0;
    for (const auto& [k, c] : coeffs_)
        s += c.cwiseAbs().maxCoeff() * std::exp(kTwoPi * index_l1(k) * rho);
    return s;
}

Eigen::VectorXd TrigSeries::eval(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw std::invalid_argument("eval: wrong point dimension");
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(value_dim_);
    for (const auto& [k, c] : coeffs_) {
        double phase = 0.0;
        for (int i = 0; i < dim_; ++i) phase += k[i] * x(i);
        acc += std::polar(1.0, kTwoPi * phase) * c;
    }
    const double imag = acc.imag().cwiseAbs().maxCoeff();
    const double scale = coeff_abs_sum();
    if (imag > 1e-10 * std::max(scale, 1e-300))
        throw RealityViolation("imaginary residual " + std::to_string(imag) +
                               " exceeds 1e-10 bound in eval");
    return acc.real();
}

double TrigSeries::eval_scalar(const Eigen::VectorXd& x) const {
    return eval(x)(0);
}

double TrigSeries::eval_scalar1(double x) const {
    Eigen::VectorXd p(1);
    p << x;
    return eval(p)(0);
}

Eigen::MatrixXd TrigSeries::eval_many(const Eigen::MatrixXd& P) const {
    if (P.cols() != dim_) throw std::invalid_argument("eval_many: wrong point dimension");
    const Eigen::Index n = P.rows();
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, value_dim_);
    Eigen::VectorXd kd(dim_);
    for (const auto& [k, c] : coeffs_) {
        for (int i = 0; i < dim_; ++i) kd(i) = k[i];
        Eigen::ArrayXd phase = (P * kd).array() * kTwoPi;
        Eigen::ArrayXcd e(n);
        e.real() = phase.cos();
        e.imag() = phase.sin();
        acc.noalias() += e.matrix() * c.transpose();
    }
    const double imag = acc.imag().cwiseAbs().maxCoeff();
    const double scale = coeff_abs_sum();
    if (imag > 1e-10 * std::max(scale, 1e-300))
        throw RealityViolation("imaginary residual " + std::to_string(imag) +
                               " exceeds 1e-10 bound in eval_many");
    return acc.real();
}

}  // namespace fptm
