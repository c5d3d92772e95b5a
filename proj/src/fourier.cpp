#include "fptm/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

#include "fptm/errors.hpp"

namespace fptm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// DFT matrix cache: E(N)[j,m] = e^{2 pi i j m / N}.
const Eigen::MatrixXcd& dft_matrix(int N) {
    static std::unordered_map<int, Eigen::MatrixXcd> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    Eigen::MatrixXcd E(N, N);
    for (int j = 0; j < N; ++j)
        for (int m = 0; m < N; ++m)
            E(j, m) = std::polar(1.0, kTwoPi * static_cast<double>((static_cast<std::int64_t>(j) * m) % N) / N);
    return cache.emplace(N, std::move(E)).first->second;
}

// Applies M (N x N) along `axis` of a flat odometer-ordered buffer.
void apply_along_axis(Eigen::MatrixXcd& buf, int dim, int N, int axis,
                      const Eigen::MatrixXcd& M) {
    const std::int64_t total = ipow(N, dim);
    const std::int64_t inner = ipow(N, dim - 1 - axis);  // stride of this axis
    const std::int64_t outer = total / (inner * N);
    const int vd = static_cast<int>(buf.cols());
    Eigen::MatrixXcd slice(N, inner * vd);
    for (std::int64_t o = 0; o < outer; ++o) {
        const std::int64_t base = o * N * inner;
        for (int a = 0; a < N; ++a)
            for (std::int64_t i = 0; i < inner; ++i)
                for (int v = 0; v < vd; ++v)
                    slice(a, i * vd + v) = buf(base + a * inner + i, v);
        Eigen::MatrixXcd out = M * slice;
        for (int a = 0; a < N; ++a)
            for (std::int64_t i = 0; i < inner; ++i)
                for (int v = 0; v < vd; ++v)
                    buf(base + a * inner + i, v) = out(a, i * vd + v);
    }
}

}  // namespace

Eigen::MatrixXd grid_points(int dim, int N) {
    const std::int64_t total = ipow(N, dim);
    Eigen::MatrixXd P(total, dim);
    for (std::int64_t f = 0; f < total; ++f) {
        std::int64_t rest = f;
        for (int a = dim - 1; a >= 0; --a) {
            P(f, a) = static_cast<double>(rest % N) / N;
            rest /= N;
        }
    }
    return P;
}

GridFn sample_grid(const TrigSeries& w, int N) {
    const int dim = w.dim();
    const std::int64_t total = ipow(N, dim);
    GridFn g;
    g.dim = dim;
    g.N = N;
    g.value_dim = w.value_dim();
    g.values = Eigen::MatrixXcd::Zero(total, g.value_dim);
    for (const auto& [k, c] : w.coeffs()) {
        std::int64_t flat = 0;
        for (int a = 0; a < dim; ++a) {
            int idx = ((k[a] % N) + N) % N;
            flat = flat * N + idx;
        }
        g.values.row(flat) += c.transpose();
    }
    const auto& E = dft_matrix(N);
    for (int a = 0; a < dim; ++a) apply_along_axis(g.values, dim, N, a, E);
    return g;
}

TrigSeries grid_to_series(const GridFn& g, int K_keep, double* tail_norm) {
    const int N = g.N;
    const int dim = g.dim;
    Eigen::MatrixXcd buf = g.values;
    const Eigen::MatrixXcd E_inv = dft_matrix(N).conjugate() / static_cast<double>(N);
    for (int a = 0; a < dim; ++a) apply_along_axis(buf, dim, N, a, E_inv);

    TrigSeries out(dim, g.value_dim);
    double tail = 0.0;
    const std::int64_t total = ipow(N, dim);
    MultiIndex k(dim);
    for (std::int64_t f = 0; f < total; ++f) {
        std::int64_t rest = f;
        bool keep = true;
        for (int a = dim - 1; a >= 0; --a) {
            int idx = static_cast<int>(rest % N);
            rest /= N;
            int kk = idx <= N / 2 ? idx : idx - N;
            if (N % 2 == 0 && idx == N / 2) keep = false;  // ambiguous Nyquist mode
            k[a] = kk;
            if (std::abs(kk) > K_keep) keep = false;
        }
        double mag = buf.row(f).cwiseAbs().maxCoeff();
        if (mag == 0.0) continue;
        if (keep)
            out.set_coeff_single(k, buf.row(f).transpose());
        else
            tail += mag;
    }
    out.symmetrize();
    out.prune();
    if (tail_norm) *tail_norm = tail;
    return out;
}

TrigSeries values_to_series(int dim, int N, const Eigen::MatrixXd& values, int K_keep,
                            double* tail_norm) {
    GridFn g;
    g.dim = dim;
    g.N = N;
    g.value_dim = static_cast<int>(values.cols());
    g.values = values.cast<Complex>();
    return grid_to_series(g, K_keep, tail_norm);
}

TrigSeries grid_product(const TrigSeries& a, const TrigSeries& b, int N, int K,
                        CompositionInfo* info) {
    if (a.dim() != b.dim()) throw std::invalid_argument("grid_product: dim mismatch");
    GridFn ga = sample_grid(a, N);
    GridFn gb = sample_grid(b, N);
    GridFn out;
    out.dim = a.dim();
    out.N = N;
    if (a.value_dim() == 1 && b.value_dim() >= 1) {
        out.value_dim = b.value_dim();
        out.values = gb.values.array().colwise() * ga.values.col(0).array();
    } else if (b.value_dim() == 1) {
        out.value_dim = a.value_dim();
        out.values = ga.values.array().colwise() * gb.values.col(0).array();
    } else if (a.value_dim() == b.value_dim()) {
        out.value_dim = a.value_dim();
        out.values = ga.values.cwiseProduct(gb.values);
    } else {
        throw std::invalid_argument("grid_product: incompatible value dims");
    }
    double tail = 0.0;
    TrigSeries res = grid_to_series(out, K, &tail);
    if (info) {
        info->tail_norm += tail;
        if (std::max(a.band(), b.band()) > N / 4) info->aliasing_risk = true;
    }
    return res;
}

Eigen::MatrixXd compose_shift_values(const TrigSeries& w, const Eigen::MatrixXd& base_points,
                                     const Eigen::MatrixXd& shifts) {
    return w.eval_many(base_points + shifts);
}

CohomologyResult cohomology_solve(const TrigSeries& Q, const FrequencyVector& omega_full,
                                  const ResonanceData* resonance, double divisor_floor) {
    if (omega_full.size() != Q.dim())
        throw std::invalid_argument("cohomology_solve: frequency dimension mismatch");
    const int r = resonance ? resonance->r : Q.dim();

    CohomologyResult res;
    res.W = TrigSeries(Q.dim(), Q.value_dim());
    res.resonant_part = TrigSeries(Q.dim(), Q.value_dim());
    res.min_divisor = std::numeric_limits<double>::infinity();

    for (const auto& [k, c] : Q.coeffs()) {
        bool resonant;
        if (resonance) {
            resonant = true;
            for (int i = 0; i < r; ++i)
                if (k[i] != 0) {
                    resonant = false;
                    break;
                }
        } else {
            resonant = index_linf(k) == 0;
        }
        if (resonant) {
            res.resonant_part.set_coeff_single(k, c);
            continue;
        }
        double phase = 0.0;
        for (int i = 0; i < Q.dim(); ++i) phase += k[i] * omega_full(i);
        Complex divisor = 1.0 - std::polar(1.0, kTwoPi * phase);
        double mag = std::abs(divisor);
        if (mag < divisor_floor) {
            std::string ks;
            for (int v : k) ks += std::to_string(v) + " ";
            throw SmallDivisorBreach("divisor " + std::to_string(mag) + " at k = ( " + ks +
                                     ") below floor " + std::to_string(divisor_floor));
        }
        res.min_divisor = std::min(res.min_divisor, mag);
        res.W.set_coeff_single(k, (c / divisor).eval());
    }
    res.W.symmetrize();
    res.resonant_part.symmetrize();
    return res;
}

NormReport norms(const TrigSeries& w, double rho, int j_max) {
    if (rho < 0) throw std::invalid_argument("norms: rho >= 0 required");
    NormReport rep;
    rep.rho = rho;
    rep.sup_norm_rho = w.weighted_coeff_sum(rho);

    const int N = std::max(16, 4 * std::max(1, w.band()));
    Eigen::MatrixXd P = grid_points(w.dim(), N);

    // j-th entry: max over multi-indices |a| = j of the grid sup of D^a w.
    std::function<void(const TrigSeries&, int, int, double&)> walk =
        [&](const TrigSeries& cur, int remaining, int min_axis, double& best) {
            if (remaining == 0) {
                double sup = cur.empty() ? 0.0 : cur.eval_many(P).cwiseAbs().maxCoeff();
                best = std::max(best, sup);
                return;
            }
            for (int a = min_axis; a < w.dim(); ++a)
                walk(cur.derivative(a), remaining - 1, a, best);
        };
    for (int j = 0; j <= j_max; ++j) {
        double best = 0.0;
        walk(w, j, 0, best);
        rep.c_norms.push_back(best);
    }
    return rep;
}

}  // namespace fptm
