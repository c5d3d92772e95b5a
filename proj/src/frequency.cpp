#include "fptm/frequency.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "fptm/errors.hpp"

namespace fptm {

namespace {

double dist_to_integer(double x, std::int64_t* nearest = nullptr) {
    double n = std::round(x);
    if (nearest) *nearest = static_cast<std::int64_t>(n);
    return std::abs(x - n);
}

// Odometer over the box |k|_inf <= k_max, canonical half (first nonzero
// component positive); k and -k carry the same relation.
class HalfBoxIter {
public:
    HalfBoxIter(int dim, int k_max) : dim_(dim), k_max_(k_max), k_(dim, -k_max) {
        if (!canonical()) advance();
    }
    bool done() const { return done_; }
    const std::vector<int>& value() const { return k_; }
    void advance() {
        do {
            int i = dim_ - 1;
            while (i >= 0) {
                if (k_[i] < k_max_) {
                    ++k_[i];
                    break;
                }
                k_[i] = -k_max_;
                --i;
            }
            if (i < 0) {
                done_ = true;
                return;
            }
        } while (!canonical());
    }

private:
    bool canonical() const {
        for (int v : k_) {
            if (v > 0) return true;
            if (v < 0) return false;
        }
        return false;  // k = 0 excluded
    }
    int dim_;
    int k_max_;
    std::vector<int> k_;
    bool done_ = false;
};

}  // namespace

std::vector<ResonanceRelation> detect_resonances(const FrequencyVector& Omega,
                                                 int k_max, double tol) {
    if (k_max < 1) throw std::invalid_argument("detect_resonances: k_max >= 1 required");
    if (tol <= 0) throw std::invalid_argument("detect_resonances: tol > 0 required");
    const int d = static_cast<int>(Omega.size());

    std::vector<IntVector> hits;
    for (HalfBoxIter it(d, k_max); !it.done(); it.advance()) {
        const auto& k = it.value();
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += k[i] * Omega(i);
        if (dist_to_integer(dot) <= tol) {
            IntVector kv(d);
            for (int i = 0; i < d; ++i) kv(i) = k[i];
            hits.push_back(kv);
        }
    }
    if (hits.empty()) return {};

    IntMatrix M(static_cast<int>(hits.size()), d);
    for (size_t i = 0; i < hits.size(); ++i) M.row(static_cast<int>(i)) = hits[i].transpose();
    IntMatrix basis = row_hermite_basis(M);

    std::vector<ResonanceRelation> rels;
    for (int i = 0; i < basis.rows(); ++i) {
        ResonanceRelation rel;
        rel.k = basis.row(i).transpose();
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += rel.k(j) * Omega(j);
        rel.defect = dist_to_integer(dot, &rel.n);
        rels.push_back(rel);
    }
    return rels;
}

ResonanceData intrinsic_decomposition(const FrequencyVector& Omega,
                                      const std::vector<ResonanceRelation>& relations,
                                      int verify_k_max, double tol) {
    if (relations.empty())
        throw std::invalid_argument(
            "intrinsic_decomposition: no resonance relations (decomposition undefined)");
    const int d = static_cast<int>(Omega.size());

    IntMatrix M(static_cast<int>(relations.size()), d);
    for (size_t i = 0; i < relations.size(); ++i)
        M.row(static_cast<int>(i)) = relations[i].k.transpose();

    ResonanceData data;
    data.dim = d;
    data.basis = row_hermite_basis(M);
    data.A = unimodular_completion(data.basis);
    const int rank = static_cast<int>(data.basis.rows());
    data.r = d - rank;

    Eigen::VectorXd AOmega = data.A.cast<double>() * Omega;
    data.omega = AOmega.head(data.r);
    data.L = IntVector::Zero(d);
    for (int i = data.r; i < d; ++i) {
        data.L(i) = static_cast<std::int64_t>(std::round(AOmega(i)));
        if (std::abs(AOmega(i) - static_cast<double>(data.L(i))) > 10.0 * tol)
            throw std::invalid_argument(
                "intrinsic_decomposition: relation residual exceeds 10*tol; "
                "relations inconsistent with Omega");
    }

    for (int i = 0; i < data.basis.rows(); ++i) {
        ResonanceRelation rel;
        rel.k = data.basis.row(i).transpose();
        double dot = 0.0;
        for (int j = 0; j < d; ++j) dot += rel.k(j) * Omega(j);
        rel.defect = dist_to_integer(dot, &rel.n);
        data.relations.push_back(rel);
    }

    if (data.r > 0) {
        auto residual = detect_resonances(data.omega, verify_k_max, tol);
        if (!residual.empty())
            throw ResidualResonance(
                "intrinsic frequency is itself resonant up to k_max=" +
                std::to_string(verify_k_max) +
                "; the supplied relation set did not generate the full module");
    }
    return data;
}

DiophantineEstimate diophantine_estimate(const FrequencyVector& omega, double tau,
                                         int k_max) {
    if (k_max < 1) throw std::invalid_argument("diophantine_estimate: k_max >= 1");
    if (tau <= 0) throw std::invalid_argument("diophantine_estimate: tau > 0");
    const int d = static_cast<int>(omega.size());

    DiophantineEstimate est;
    est.tau = tau;
    est.k_max = k_max;
    est.nu = std::numeric_limits<double>::infinity();
    for (HalfBoxIter it(d, k_max); !it.done(); it.advance()) {
        const auto& k = it.value();
        double dot = 0.0;
        int linf = 0;
        for (int i = 0; i < d; ++i) {
            dot += k[i] * omega(i);
            linf = std::max(linf, std::abs(k[i]));
        }
        double dist = dist_to_integer(dot);
        if (dist == 0.0) {
            std::string ks;
            for (int v : k) ks += std::to_string(v) + " ";
            throw ZeroDivisor("k . omega is exactly an integer at k = ( " + ks +
                              "); omega is resonant");
        }
        double value = dist * std::pow(static_cast<double>(linf), tau);
        if (value < est.nu) {
            est.nu = value;
            est.worst_k = IntVector(d);
            for (int i = 0; i < d; ++i) est.worst_k(i) = k[i];
        }
    }
    return est;
}

double parse_frequency_component(const std::string& text_in) {
    std::string text;
    for (char c : text_in)
        if (!std::isspace(static_cast<unsigned char>(c))) text += c;
    if (text.empty()) throw ConfigError("empty frequency component");
    if (text == "golden") return golden_mean();
    if (text.rfind("sqrt(", 0) == 0 && text.back() == ')') {
        std::string inner = text.substr(5, text.size() - 6);
        char* end = nullptr;
        long v = std::strtol(inner.c_str(), &end, 10);
        if (end == nullptr || *end != '\0' || v < 0)
            throw ConfigError("bad sqrt() frequency expression: " + text_in);
        return std::sqrt(static_cast<double>(v));
    }
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        char* end = nullptr;
        double p = std::strtod(text.substr(0, slash).c_str(), &end);
        if (*end != '\0') throw ConfigError("bad rational frequency: " + text_in);
        double q = std::strtod(text.substr(slash + 1).c_str(), &end);
        if (*end != '\0' || q == 0.0) throw ConfigError("bad rational frequency: " + text_in);
        return p / q;
    }
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ConfigError("cannot parse frequency component: " + text_in);
    return v;
}

FrequencyVector parse_frequency_list(const std::vector<std::string>& parts) {
    FrequencyVector v(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) v(i) = parse_frequency_component(parts[i]);
    return v;
}

}  // namespace fptm
