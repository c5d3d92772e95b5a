#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace fptm {

// Truncated Taylor polynomial sum_{i<=D} c_i t^i with graded arithmetic.
template <typename Scalar>
class TaylorPoly {
public:
    TaylorPoly() = default;
    explicit TaylorPoly(int degree) : c_(degree + 1, Scalar(0)) {}
    TaylorPoly(int degree, Scalar c0) : c_(degree + 1, Scalar(0)) { c_[0] = c0; }

    static TaylorPoly variable(int degree, Scalar c0 = Scalar(0)) {
        TaylorPoly p(degree);
        p.c_[0] = c0;
        if (degree >= 1) p.c_[1] = Scalar(1);
        return p;
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Scalar& operator[](int i) { return c_[i]; }
    const Scalar& operator[](int i) const { return c_[i]; }
    const std::vector<Scalar>& coeffs() const { return c_; }

    TaylorPoly& operator+=(const TaylorPoly& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    TaylorPoly& operator-=(const TaylorPoly& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    TaylorPoly& operator*=(Scalar s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    friend TaylorPoly operator+(TaylorPoly a, const TaylorPoly& b) { return a += b; }
    friend TaylorPoly operator-(TaylorPoly a, const TaylorPoly& b) { return a -= b; }
    friend TaylorPoly operator*(TaylorPoly a, Scalar s) { return a *= s; }
    friend TaylorPoly operator*(Scalar s, TaylorPoly a) { return a *= s; }

    friend TaylorPoly operator*(const TaylorPoly& a, const TaylorPoly& b) {
        a.check(b);
        const int D = a.degree();
        TaylorPoly r(D);
        for (int i = 0; i <= D; ++i) {
            if (a.c_[i] == Scalar(0)) continue;
            for (int j = 0; i + j <= D; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    // p(q(t)); q must have zero constant term.
    TaylorPoly compose(const TaylorPoly& q) const {
        check(q);
        if (q.c_[0] != Scalar(0))
            throw std::invalid_argument("TaylorPoly::compose: inner constant term != 0");
        const int D = degree();
        TaylorPoly r(D, c_[D]);
        for (int i = D - 1; i >= 0; --i) {  // Horner
            r = r * q;
            r.c_[0] += c_[i];
        }
        return r;
    }

    // Compositional inverse: B with B(p(t)) = t; needs p(0) = 0, p'(0) != 0.
    TaylorPoly reversion() const {
        const int D = degree();
        if (c_[0] != Scalar(0) || c_[1] == Scalar(0))
            throw std::invalid_argument("TaylorPoly::reversion: need p(0)=0, p'(0)!=0");
        TaylorPoly B(D);
        B.c_[1] = Scalar(1) / c_[1];
        // fixed point B = (t - (p - c1 t) o B) / c1, gains one order per pass
        TaylorPoly tail = *this;
        tail.c_[0] = Scalar(0);
        tail.c_[1] = Scalar(0);
        for (int pass = 0; pass < D; ++pass) {
            TaylorPoly t = tail.compose(B);
            TaylorPoly next(D);
            next.c_[1] = Scalar(1);
            next -= t;
            next *= Scalar(1) / c_[1];
            B = next;
        }
        return B;
    }

    TaylorPoly derivative() const {
        const int D = degree();
        TaylorPoly r(D);
        for (int i = 1; i <= D; ++i) r.c_[i - 1] = c_[i] * Scalar(i);
        return r;
    }

    // exp(p); the constant term of p must be 0 (multiply by exp(c0) outside).
    TaylorPoly exp_zero_const() const {
        if (c_[0] != Scalar(0))
            throw std::invalid_argument("TaylorPoly::exp_zero_const: constant term != 0");
        const int D = degree();
        TaylorPoly r(D, Scalar(1));
        TaylorPoly term(D, Scalar(1));
        for (int n = 1; n <= D; ++n) {
            term = term * (*this);
            term *= Scalar(1) / Scalar(n);
            r += term;
        }
        return r;
    }

    Scalar eval(Scalar t) const {
        Scalar acc(0);
        for (int i = degree(); i >= 0; --i) acc = acc * t + c_[i];
        return acc;
    }

    // sum_i |c_i| r^i, a sup bound on |t| <= r
    double abs_bound(double r) const {
        double acc = 0.0, p = 1.0;
        for (int i = 0; i <= degree(); ++i) {
            acc += std::abs(c_[i]) * p;
            p *= r;
        }
        return acc;
    }

private:
    void check(const TaylorPoly& o) const {
        if (o.c_.size() != c_.size())
            throw std::invalid_argument("TaylorPoly: degree mismatch");
    }
    std::vector<Scalar> c_;
};

using TaylorD = TaylorPoly<double>;
using TaylorC = TaylorPoly<std::complex<double>>;

}  // namespace fptm
