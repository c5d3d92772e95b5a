#include "fptm/jets.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace fptm {

SeriesJet::SeriesJet(int order, int dim, int value_dim) {
    if (order < 0) throw std::invalid_argument("SeriesJet: order >= 0 required");
    terms_.assign(order + 1, TrigSeries(dim, value_dim));
}

SeriesJet& SeriesJet::operator+=(const SeriesJet& o) {
    if (o.order() != order()) throw std::invalid_argument("SeriesJet: order mismatch");
    for (size_t j = 0; j < terms_.size(); ++j) terms_[j] += o.terms_[j];
    return *this;
}

SeriesJet& SeriesJet::operator-=(const SeriesJet& o) {
    if (o.order() != order()) throw std::invalid_argument("SeriesJet: order mismatch");
    for (size_t j = 0; j < terms_.size(); ++j) terms_[j] -= o.terms_[j];
    return *this;
}

SeriesJet& SeriesJet::operator*=(double s) {
    for (auto& t : terms_) t *= s;
    return *this;
}

SeriesJet SeriesJet::component(int j) const {
    SeriesJet r(order(), dim(), 1);
    for (int i = 0; i <= order(); ++i) r.term(i) = terms_[i].component(j);
    return r;
}

SeriesJet SeriesJet::times_vector(const Eigen::VectorXd& v) const {
    SeriesJet r(order(), dim(), static_cast<int>(v.size()));
    for (int i = 0; i <= order(); ++i) r.term(i) = terms_[i].times_vector(v);
    return r;
}

TrigSeries SeriesJet::value_at(double eps) const {
    TrigSeries s(dim(), value_dim());
    double p = 1.0;
    for (const auto& t : terms_) {
        s += p * t;
        p *= eps;
    }
    return s;
}

void SeriesJet::prune(double floor) {
    for (auto& t : terms_) t.prune(floor);
}

SeriesJet jet_mul(const SeriesJet& a, const SeriesJet& b, const JetContext& ctx) {
    if (a.order() != b.order()) throw std::invalid_argument("jet_mul: order mismatch");
    if (a.dim() != b.dim()) throw std::invalid_argument("jet_mul: dim mismatch");
    const int order = a.order();
    const int N = ctx.grid_N;
    const int vd = std::max(a.value_dim(), b.value_dim());
    if (a.value_dim() != b.value_dim() && a.value_dim() != 1 && b.value_dim() != 1)
        throw std::invalid_argument("jet_mul: incompatible value dims");

    std::vector<Eigen::MatrixXcd> ga(order + 1), gb(order + 1);
    for (int j = 0; j <= order; ++j) {
        ga[j] = sample_grid(a.term(j), N).values;
        gb[j] = sample_grid(b.term(j), N).values;
    }
    SeriesJet out(order, a.dim(), vd);
    for (int j = 0; j <= order; ++j) {
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(ga[0].rows(), vd);
        for (int i = 0; i <= j; ++i) {
            const Eigen::MatrixXcd& A = ga[i];
            const Eigen::MatrixXcd& B = gb[j - i];
            if (a.value_dim() == 1 && vd > 1)
                acc += (B.array().colwise() * A.col(0).array()).matrix();
            else if (b.value_dim() == 1 && vd > 1)
                acc += (A.array().colwise() * B.col(0).array()).matrix();
            else
                acc += A.cwiseProduct(B);
        }
        GridFn g;
        g.dim = a.dim();
        g.N = N;
        g.value_dim = vd;
        g.values = acc;
        out.term(j) = grid_to_series(g, ctx.band_K);
    }
    return out;
}

namespace {

Eigen::VectorXd constant_part(const TrigSeries& s) {
    if (s.band() != 0)
        throw std::invalid_argument("jet composition: order-0 shift must be constant");
    return s.mean().real();
}

// Multi-indices a in N^d with 1 <= |a| <= max_total.
void enumerate_multi(int d, int max_total, std::vector<std::vector<int>>& out) {
    std::vector<int> a(d, 0);
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
        if (pos == d) {
            int total = 0;
            for (int v : a) total += v;
            if (total >= 1) out.push_back(a);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            a[pos] = v;
            rec(pos + 1, remaining - v);
        }
        a[pos] = 0;
    };
    rec(0, max_total);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

SeriesJet compose_directional(const SeriesJet& outer, const SeriesJet& shift,
                              const Eigen::VectorXd& dir, const JetContext& ctx) {
    if (shift.value_dim() != 1)
        throw std::invalid_argument("compose_directional: scalar shift required");
    const int order = outer.order();
    if (shift.order() != order)
        throw std::invalid_argument("compose_directional: order mismatch");

    const double c0 = shift.term(0).empty() ? 0.0 : constant_part(shift.term(0))(0);
    const Eigen::VectorXd delta0 = c0 * dir;

    SeriesJet stilde = shift;
    stilde.term(0) = TrigSeries(shift.dim(), 1);

    // Directional Taylor around the exact constant shift:
    //   F(x + s dir) = sum_m (1/m!) D_dir^m F(x + c0 dir) (s - c0)^m.
    SeriesJet result(order, outer.dim(), outer.value_dim());
    SeriesJet base = outer;  // holds (1/m!) D_dir^m outer
    SeriesJet spow = stilde;
    for (int m = 0; m <= order; ++m) {
        SeriesJet shifted(order, outer.dim(), outer.value_dim());
        for (int j = 0; j <= order; ++j) shifted.term(j) = base.term(j).shifted(delta0);
        if (m == 0) {
            result = shifted;
        } else {
            result += jet_mul(shifted, spow, ctx);
            if (m < order) spow = jet_mul(spow, stilde, ctx);
        }
        if (m < order)
            for (int j = 0; j <= order; ++j)
                base.term(j) = base.term(j).directional_derivative(dir) * (1.0 / (m + 1));
    }
    result.prune(ctx.coeff_floor);
    return result;
}

SeriesJet compose_displaced(const SeriesJet& outer, const SeriesJet& delta,
                            const JetContext& ctx) {
    const int order = outer.order();
    if (delta.order() != order)
        throw std::invalid_argument("compose_displaced: order mismatch");
    const int d = outer.dim();
    if (delta.value_dim() != d)
        throw std::invalid_argument("compose_displaced: displacement must be d-valued");

    Eigen::VectorXd delta0 =
        delta.term(0).empty() ? Eigen::VectorXd::Zero(d) : constant_part(delta.term(0));

    std::vector<SeriesJet> dt(d);
    for (int i = 0; i < d; ++i) {
        dt[i] = delta.component(i);
        dt[i].term(0) = TrigSeries(delta.dim(), 1);
    }

    SeriesJet result(order, outer.dim(), outer.value_dim());
    for (int j = 0; j <= order; ++j) result.term(j) = outer.term(j).shifted(delta0);

    std::vector<std::vector<int>> indices;
    enumerate_multi(d, order, indices);
    for (const auto& a : indices) {
        double fact = 1.0;
        for (int v : a) fact *= factorial(v);
        SeriesJet deriv = outer;
        for (int axis = 0; axis < d; ++axis)
            for (int rep = 0; rep < a[axis]; ++rep)
                for (int j = 0; j <= order; ++j)
                    deriv.term(j) = deriv.term(j).derivative(axis);
        SeriesJet shifted(order, outer.dim(), outer.value_dim());
        bool all_zero = true;
        for (int j = 0; j <= order; ++j) {
            shifted.term(j) = deriv.term(j).shifted(delta0) * (1.0 / fact);
            if (!shifted.term(j).empty()) all_zero = false;
        }
        if (all_zero) continue;

        SeriesJet powjet(order, delta.dim(), 1);
        bool started = false;
        for (int i = 0; i < d; ++i)
            for (int rep = 0; rep < a[i]; ++rep) {
                if (!started) {
                    powjet = dt[i];
                    started = true;
                } else {
                    powjet = jet_mul(powjet, dt[i], ctx);
                }
            }
        result += jet_mul(shifted, powjet, ctx);
    }
    result.prune(ctx.coeff_floor);
    return result;
}

SeriesJet compose_embedded(const TrigSeries& outer, const Eigen::VectorXd& tail0,
                           const SeriesJet& delta, const JetContext& ctx) {
    const int d = outer.dim();
    const int r = delta.dim();
    if (delta.value_dim() != d)
        throw std::invalid_argument("compose_embedded: displacement must be d-valued");
    if (tail0.size() != d - r)
        throw std::invalid_argument("compose_embedded: tail0 size mismatch");
    if (!delta.term(0).empty())
        throw std::invalid_argument("compose_embedded: delta must vanish at order 0");
    const int order = delta.order();

    std::vector<SeriesJet> dt(d);
    for (int i = 0; i < d; ++i) dt[i] = delta.component(i);

    SeriesJet result(order, r, outer.value_dim());
    result.term(0) = outer.restrict_head(r, tail0);

    std::vector<std::vector<int>> indices;
    enumerate_multi(d, order, indices);
    for (const auto& a : indices) {
        double fact = 1.0;
        for (int v : a) fact *= factorial(v);
        TrigSeries deriv = outer;
        for (int axis = 0; axis < d; ++axis)
            for (int rep = 0; rep < a[axis]; ++rep) deriv = deriv.derivative(axis);
        if (deriv.empty()) continue;
        SeriesJet sliced(order, r, outer.value_dim());
        sliced.term(0) = deriv.restrict_head(r, tail0) * (1.0 / fact);

        SeriesJet powjet(order, r, 1);
        bool started = false;
        for (int i = 0; i < d; ++i)
            for (int rep = 0; rep < a[i]; ++rep) {
                if (!started) {
                    powjet = dt[i];
                    started = true;
                } else {
                    powjet = jet_mul(powjet, dt[i], ctx);
                }
            }
        result += jet_mul(sliced, powjet, ctx);
    }
    result.prune(ctx.coeff_floor);
    return result;
}

}  // namespace fptm
