#include "fptm/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include "fptm/errors.hpp"

namespace fptm {

TrigSeries MapFamily::f_eps_series() const {
    const int vd = kind == Kind::foliation ? 1 : dim;
    TrigSeries s(dim, vd);
    double p = 1.0;
    for (const auto& jet : f_jets) {
        s += p * jet;
        p *= eps;
    }
    return s;
}

TrigSeries MapFamily::displacement_scalar() const {
    if (kind != Kind::foliation)
        throw std::invalid_argument("displacement_scalar: foliation kind only");
    TrigSeries s = TrigSeries::constant(dim, alpha);
    s += eps * f_eps_series();
    return s;
}

TrigSeries MapFamily::displacement_vector() const {
    if (kind == Kind::foliation) return displacement_scalar().times_vector(Omega);
    TrigSeries s = TrigSeries::constant(dim, Eigen::VectorXd(alpha * Omega));
    s += eps * f_eps_series();
    return s;
}

Eigen::VectorXd MapFamily::apply(const Eigen::VectorXd& x) const {
    if (kind == Kind::foliation) {
        double phi = alpha + eps * f_eps_series().eval_scalar(x);
        return x + phi * Omega;
    }
    return x + alpha * Omega + eps * f_eps_series().eval(x);
}

Eigen::MatrixXd MapFamily::apply_many(const Eigen::MatrixXd& P) const {
    if (kind == Kind::foliation) {
        Eigen::VectorXd phi =
            Eigen::VectorXd::Constant(P.rows(), alpha) + eps * f_eps_series().eval_many(P);
        return P + phi * Omega.transpose();
    }
    Eigen::MatrixXd shift = eps * f_eps_series().eval_many(P);
    shift.rowwise() += (alpha * Omega).transpose();
    return P + shift;
}

Eigen::MatrixXd MapFamily::jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd J = Eigen::MatrixXd::Identity(dim, dim);
    if (kind == Kind::foliation) {
        Eigen::VectorXd grad = eps * f_eps_series().gradient().eval(x);
        J += Omega * grad.transpose();
    } else {
        TrigSeries f = f_eps_series();
        for (int a = 0; a < dim; ++a) J.col(a) += eps * f.derivative(a).eval(x);
    }
    return J;
}

MapFamily MapFamily::with_alpha(double a) const {
    MapFamily m = *this;
    m.alpha = a;
    return m;
}

MapFamily MapFamily::with_eps(double e) const {
    MapFamily m = *this;
    m.eps = e;
    return m;
}

TrigSeries compose_fptm(const TrigSeries& f, const TrigSeries& g,
                        const FrequencyVector& Omega, int N, int K,
                        CompositionInfo* info) {
    if (f.value_dim() != 1 || g.value_dim() != 1)
        throw std::invalid_argument("compose_fptm: scalar displacements required");
    const int dim = f.dim();
    Eigen::MatrixXd P = grid_points(dim, N);
    Eigen::MatrixXd gv = g.eval_many(P);
    Eigen::MatrixXd shifted = P + gv * Omega.transpose();
    Eigen::MatrixXd fv = f.eval_many(shifted);
    double tail = 0.0;
    TrigSeries out = values_to_series(dim, N, gv + fv, K, &tail);
    if (info) {
        info->tail_norm += tail;
        if (std::max(f.band(), g.band()) > N / 4) info->aliasing_risk = true;
    }
    return out;
}

TrigSeries invert_fptm(const TrigSeries& f, const FrequencyVector& Omega, int N, int K) {
    const int dim = f.dim();
    Eigen::MatrixXd P = grid_points(dim, N);

    // T_f is a diffeomorphism along the foliation iff 1 + grad f . Omega
    // stays away from zero.
    TrigSeries df = f.directional_derivative(Omega);
    if (!df.empty()) {
        Eigen::VectorXd dv = df.eval_many(P);
        double lo = (1.0 + dv.array()).minCoeff();
        double hi = (1.0 + dv.array()).maxCoeff();
        if (lo * hi <= 0.0 || std::min(std::abs(lo), std::abs(hi)) < 1e-6)
            throw NotInvertible("1 + grad f . Omega reaches " + std::to_string(lo) +
                                "; fold along the foliation");
    }

    const double scale = std::max(1.0, f.coeff_abs_sum());
    Eigen::VectorXd v = -f.eval_many(P);
    for (int it = 0; it < 500; ++it) {
        Eigen::VectorXd next = -f.eval_many(P + v * Omega.transpose());
        double change = (next - v).cwiseAbs().maxCoeff();
        v = next;
        if (change < 1e-14 * scale) break;
    }
    TrigSeries g = values_to_series(dim, N, v, K);

    // Round-trip defect ||T_g o T_f - Id|| = ||f + g o T_f||.
    Eigen::MatrixXd fv = f.eval_many(P);
    Eigen::MatrixXd gv = g.eval_many(P + fv * Omega.transpose());
    double defect = (fv + gv).cwiseAbs().maxCoeff();
    if (defect > 1e-9 * scale)
        throw NotInvertible("inverse iteration stalled, defect " + std::to_string(defect));
    return g;
}

TrigSeries invert_generic(const TrigSeries& disp, int N, int K) {
    const int dim = disp.dim();
    if (disp.value_dim() != dim)
        throw std::invalid_argument("invert_generic: displacement must be d-valued");
    Eigen::MatrixXd P = grid_points(dim, N);
    const double scale = std::max(1.0, disp.coeff_abs_sum());
    Eigen::MatrixXd v = -disp.eval_many(P);
    for (int it = 0; it < 500; ++it) {
        Eigen::MatrixXd next = -disp.eval_many(P + v);
        double change = (next - v).cwiseAbs().maxCoeff();
        v = next;
        if (change < 1e-14 * scale) break;
    }
    TrigSeries g = values_to_series(dim, N, v, K);
    Eigen::MatrixXd dv = disp.eval_many(P);
    Eigen::MatrixXd gv = g.eval_many(P + dv);
    double defect = (dv + gv).cwiseAbs().maxCoeff();
    if (defect > 1e-9 * scale)
        throw NotInvertible("generic inverse iteration stalled, defect " +
                            std::to_string(defect));
    return g;
}

OrbitDiagnostics lyapunov(const MapFamily& map, const Eigen::VectorXd& x0, int horizon) {
    if (horizon < 100) throw std::invalid_argument("lyapunov: horizon >= 100 required");
    const int d = map.dim;
    OrbitDiagnostics diag;

    TrigSeries f = map.f_eps_series();
    TrigSeries fgrad_dir;  // eps * grad f_eps . Omega (foliation cocycle)
    if (map.kind == MapFamily::Kind::foliation && !f.empty())
        fgrad_dir = f.directional_derivative(map.Omega);

    Eigen::VectorXd x = x0;
    Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(d, d);
    Eigen::VectorXd logs = Eigen::VectorXd::Zero(d);
    double along = 0.0;
    Eigen::VectorXd drift = Eigen::VectorXd::Zero(d);
    double min_ret = std::numeric_limits<double>::infinity();

    for (int n = 0; n < horizon; ++n) {
        if (map.kind == MapFamily::Kind::foliation && !fgrad_dir.empty()) {
            along += std::log(std::abs(1.0 + map.eps * fgrad_dir.eval_scalar(x)));
        }
        Eigen::MatrixXd A = map.jacobian(x) * Q;
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
        Q = qr.householderQ();
        for (int i = 0; i < d; ++i) {
            logs(i) += std::log(std::abs(R(i, i)));
            if (R(i, i) < 0) Q.col(i) = -Q.col(i);
        }
        Eigen::VectorXd xn = map.apply(x);
        drift += xn - x;
        x = xn;
        // keep the orbit well-conditioned on the torus
        for (int i = 0; i < d; ++i) x(i) -= std::floor(x(i));
        min_ret = std::min(min_ret, torus_distance(x, x0));
    }

    diag.qr_exponents.resize(d);
    for (int i = 0; i < d; ++i) diag.qr_exponents[i] = logs(i) / horizon;
    diag.rotation_estimate = drift / horizon;
    diag.min_return_distance = min_ret;

    if (map.kind == MapFamily::Kind::foliation) {
        diag.lyapunov_along_Omega = along / horizon;
        // transverse = QR exponents minus the one matching the closed form
        int skip = 0;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 0; i < d; ++i) {
            double gap = std::abs(diag.qr_exponents[i] - diag.lyapunov_along_Omega);
            if (gap < best) {
                best = gap;
                skip = i;
            }
        }
        for (int i = 0; i < d; ++i)
            if (i != skip) diag.transverse_exponents.push_back(diag.qr_exponents[i]);
    } else {
        diag.lyapunov_along_Omega = *std::max_element(diag.qr_exponents.begin(),
                                                      diag.qr_exponents.end());
        std::vector<double> sorted = diag.qr_exponents;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        diag.transverse_exponents.assign(sorted.begin() + 1, sorted.end());
    }
    return diag;
}

CircleMap circle_map_from_series(const TrigSeries& disp) {
    if (disp.dim() != 1 || disp.value_dim() != 1)
        throw std::invalid_argument("circle_map_from_series: 1-d scalar series required");
    return CircleMap{[disp](double x) { return disp.eval_scalar1(x); }};
}

RotationNumber rotation_number(const CircleMap& map, double x0, long horizon,
                               int refinements) {
    if (refinements < 2) refinements = 2;
    // Degree-one monotone lift check on a sample grid.
    {
        const int M = 1024;
        const double h = 1.0 / M;
        for (int i = 0; i < M; ++i) {
            double x = static_cast<double>(i) / M;
            double deriv = 1.0 + (map.displacement(x + h) - map.displacement(x)) / h;
            if (deriv <= 0.0)
                throw NonMonotone("lift derivative non-positive near x = " + std::to_string(x));
        }
    }

    std::vector<long> marks(refinements);
    for (int i = 0; i < refinements; ++i)
        marks[i] = std::max<long>(1, horizon >> (refinements - 1 - i));

    std::vector<double> birkhoff(refinements);
    double x = x0;
    double total = 0.0;
    long n = 0;
    for (int level = 0; level < refinements; ++level) {
        for (; n < marks[level]; ++n) {
            double d = map.displacement(x - std::floor(x));
            total += d;
            x += d;
        }
        birkhoff[level] = total / static_cast<double>(marks[level]);
    }

    // Richardson in 1/n over the doubling ladder.
    std::vector<std::vector<double>> T(refinements);
    for (int i = 0; i < refinements; ++i) T[i] = {birkhoff[i]};
    for (int j = 1; j < refinements; ++j)
        for (int i = 0; i + j < refinements; ++i) {
            double factor = std::pow(2.0, j);
            T[i].push_back((factor * T[i + 1][j - 1] - T[i][j - 1]) / (factor - 1.0));
        }
    RotationNumber rn;
    rn.value = T[0][refinements - 1];
    rn.error = 0.5 * std::abs(T[0][refinements - 1] - T[1][refinements - 2]);
    return rn;
}

double torus_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double m = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        double d = a(i) - b(i);
        d -= std::round(d);
        m = std::max(m, std::abs(d));
    }
    return m;
}

double periodicity_probe(const MapFamily& map, int grid_size, int n_max) {
    const int d = map.dim;
    Eigen::MatrixXd seeds = grid_points(d, grid_size);
    double global_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index s = 0; s < seeds.rows(); ++s) {
        Eigen::VectorXd x0 = seeds.row(s).transpose();
        Eigen::VectorXd x = x0;
        for (int n = 1; n <= n_max; ++n) {
            x = map.apply(x);
            for (int i = 0; i < d; ++i) x(i) -= std::floor(x(i));
            global_min = std::min(global_min, torus_distance(x, x0));
        }
    }
    return global_min;
}

}  // namespace fptm
