#include "gnncert/activation.hpp"

#include <algorithm>
#include <cmath>

#include "gnncert/errors.hpp"
#include "gnncert/gauss.hpp"
#include "gnncert/numeric.hpp"

namespace gnncert {

namespace {

constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;

double stable_sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// Smallest integer r1 such that max{|sigma|, |sigma'|, |sigma''|} <= r1 + |x|^k
// for sigma(x) = x^k. The two suprema below are sup(k x^{k-1} - x^k) and
// sup(k(k-1) x^{k-2} - x^k) over x >= 0, in closed form.
double monomial_r1(int k) {
    if (k == 1) return 1.0;
    const double s1 = std::pow(static_cast<double>(k - 1), k - 1);
    const double s2 =
        2.0 * (k - 1) *
        std::pow(static_cast<double>(k - 1) * static_cast<double>(k - 2), 0.5 * (k - 2));
    return std::ceil(std::max(s1, s2));
}

} // namespace

const char* kind_name(ActKind k) {
    switch (k) {
        case ActKind::relu: return "relu";
        case ActKind::perceptron: return "perceptron";
        case ActKind::sigmoid: return "sigmoid";
        case ActKind::tanh_fn: return "tanh";
        case ActKind::sine: return "sine";
        case ActKind::softplus: return "softplus";
        case ActKind::swish: return "swish";
        case ActKind::sqrt_relu: return "sqrt_relu";
        case ActKind::monomial: return "monomial";
        case ActKind::custom: return "custom";
    }
    return "unknown";
}

ActivationSpec make_activation(ActKind kind, int monomial_degree) {
    ActivationSpec a;
    a.kind = kind;
    a.eval_kind = kind;
    a.name = kind_name(kind);
    switch (kind) {
        case ActKind::relu:
            a.lip = 1.0;
            a.sigma_at_zero = 0.0;
            a.has_moment_oracle = true;
            break;
        case ActKind::perceptron:
            // Non-continuous, hence no Lipschitz data; P == 0 applies anyway.
            a.sigma_at_zero = 1.0;
            a.has_moment_oracle = true;
            break;
        case ActKind::sigmoid:
            a.lip = 0.25;
            a.sigma_at_zero = 0.5;
            break;
        case ActKind::tanh_fn:
            a.lip = 1.0;
            a.sigma_at_zero = 0.0;
            break;
        case ActKind::sine:
            a.lip = 1.0;
            a.sigma_at_zero = 0.0;
            a.has_moment_oracle = true;
            break;
        case ActKind::softplus:
            a.lip = 1.0;
            a.sigma_at_zero = std::log(2.0);
            break;
        case ActKind::swish:
            a.lip = 1.1; // sup|sigma'| ~= 1.0998, rounded up to keep the bounds valid
            a.sigma_at_zero = 0.0;
            break;
        case ActKind::sqrt_relu:
            a.lip_sq = 1.0; // sigma^2 is the ReLU function
            a.sigma_at_zero = 0.0;
            a.has_moment_oracle = true;
            break;
        case ActKind::monomial: {
            if (monomial_degree < 1) throw DomainError("monomial activation needs degree k >= 1");
            a.degree = monomial_degree;
            a.name = "monomial:" + std::to_string(monomial_degree);
            a.growth = GrowthEnvelope{monomial_r1(monomial_degree), 1.0,
                                      static_cast<double>(monomial_degree)};
            if (monomial_degree == 1) a.lip = 1.0;
            a.sigma_at_zero = 0.0;
            a.has_moment_oracle = true;
            break;
        }
        case ActKind::custom:
            throw DomainError("custom activations are built with make_custom_activation");
    }
    return a;
}

ActivationSpec make_activation(const std::string& name) {
    if (name == "relu") return make_activation(ActKind::relu);
    if (name == "perceptron") return make_activation(ActKind::perceptron);
    if (name == "sigmoid") return make_activation(ActKind::sigmoid);
    if (name == "tanh") return make_activation(ActKind::tanh_fn);
    if (name == "sine" || name == "sin") return make_activation(ActKind::sine);
    if (name == "softplus") return make_activation(ActKind::softplus);
    if (name == "swish") return make_activation(ActKind::swish);
    if (name == "sqrt_relu") return make_activation(ActKind::sqrt_relu);
    if (name.rfind("monomial:", 0) == 0) {
        int k = 0;
        try {
            k = std::stoi(name.substr(9));
        } catch (const std::exception&) {
            throw DomainError("bad monomial degree in activation name '" + name + "'");
        }
        return make_activation(ActKind::monomial, k);
    }
    throw DomainError("unknown activation '" + name + "'");
}

ActivationSpec make_custom_activation(ActKind base, std::optional<double> lip,
                                      std::optional<double> lip_sq,
                                      std::optional<GrowthEnvelope> growth) {
    if (base == ActKind::custom) throw DomainError("custom activation base must be a catalog function");
    if (!lip && !lip_sq && !growth)
        throw DomainError("custom activation needs at least one of lip, lip_sq, growth");
    if ((lip && *lip < 0.0) || (lip_sq && *lip_sq < 0.0))
        throw DomainError("Lipschitz constants must be nonnegative");
    if (growth && (growth->r1 < 0.0 || growth->r2 < 0.0 || growth->gamma < 0.0))
        throw DomainError("growth envelope parameters must be nonnegative");
    ActivationSpec catalog = make_activation(base, base == ActKind::monomial ? 1 : 0);
    ActivationSpec a;
    a.kind = ActKind::custom;
    a.eval_kind = base;
    a.degree = catalog.degree;
    a.lip = lip;
    a.lip_sq = lip_sq;
    a.growth = growth;
    a.sigma_at_zero = catalog.sigma_at_zero;
    a.has_moment_oracle = catalog.has_moment_oracle; // moments depend on eval only
    a.name = std::string("custom(") + kind_name(base) + ")";
    return a;
}

double eval(const ActivationSpec& act, double x) {
    switch (act.eval_kind) {
        case ActKind::relu: return x > 0.0 ? x : 0.0;
        case ActKind::perceptron: return x >= 0.0 ? 1.0 : 0.0;
        case ActKind::sigmoid: return stable_sigmoid(x);
        case ActKind::tanh_fn: return std::tanh(x);
        case ActKind::sine: return std::sin(x);
        case ActKind::softplus: return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
        case ActKind::swish: return x * stable_sigmoid(x);
        case ActKind::sqrt_relu: return x > 0.0 ? std::sqrt(x) : 0.0;
        case ActKind::monomial: return pow_int(x, act.degree);
        case ActKind::custom: break;
    }
    throw DomainError("activation has no evaluatable kind");
}

std::optional<double> moment_oracle(const ActivationSpec& act, double kappa, int r) {
    if (!act.has_moment_oracle || kappa <= 0.0) return std::nullopt;
    switch (act.eval_kind) {
        case ActKind::relu:
            // E[(kappa Z)^r 1{Z>=0}]: one-sided moments 1/sqrt(2pi), 1/2, 3/2.
            if (r == 1) return kappa / kSqrt2Pi;
            if (r == 2) return 0.5 * kappa * kappa;
            if (r == 4) return 1.5 * pow_int(kappa, 4);
            return std::nullopt;
        case ActKind::perceptron:
            return 0.5; // indicator of Z >= 0, scale-free
        case ActKind::sqrt_relu:
            // sigma(kappa Z)^r = (kappa Z)^{r/2} 1{Z>=0}.
            if (r == 1) return std::sqrt(kappa) * 0.5 * abs_moment(0.5);
            if (r == 2) return kappa / kSqrt2Pi;
            if (r == 4) return 0.5 * kappa * kappa;
            return std::nullopt;
        case ActKind::monomial: {
            const std::int64_t n = static_cast<std::int64_t>(act.degree) * r;
            if (n % 2 == 1) return 0.0;
            return std::pow(kappa, static_cast<double>(n)) * double_factorial(n - 1);
        }
        case ActKind::sine: {
            // sin^2 and sin^4 reduce to E[cos(aZ)] = exp(-a^2/2).
            const double k2 = kappa * kappa;
            if (r == 1) return 0.0;
            if (r == 2) return 0.5 * (1.0 - std::exp(-2.0 * k2));
            if (r == 4)
                return 0.375 - 0.5 * std::exp(-2.0 * k2) + 0.125 * std::exp(-8.0 * k2);
            return std::nullopt;
        }
        default:
            return std::nullopt;
    }
}

double p_eval(const PPolynomial& p, double x) {
    double s = 0.0;
    for (const PTerm& t : p.terms) s += t.coeff * std::pow(x, t.exponent);
    return s;
}

double p_l2_norm(const PPolynomial& p) {
    double s = 0.0;
    for (const PTerm& a : p.terms)
        for (const PTerm& b : p.terms) s += a.coeff * b.coeff * abs_moment(a.exponent + b.exponent);
    return std::sqrt(s);
}

namespace {

void push_term(PPolynomial& p, double coeff, double exponent) {
    if (coeff > 0.0) p.terms.push_back({coeff, exponent});
}

struct PCandidate {
    PPolynomial poly;
    double norm = 0.0;
};

std::vector<PCandidate> p_candidates(const ActivationSpec& act, double cb, double cw) {
    std::vector<PCandidate> out;
    const auto add = [&out](PPolynomial poly) {
        const double norm = p_l2_norm(poly);
        out.push_back({std::move(poly), norm});
    };
    if (act.eval_kind == ActKind::perceptron) {
        add(PPolynomial{}); // the squared indicator is scale-free
    }
    if (act.lip) {
        PPolynomial p;
        push_term(p, std::abs(act.sigma_at_zero) * cw * *act.lip / std::sqrt(cb), 1.0);
        push_term(p, cw * *act.lip * *act.lip, 2.0);
        add(std::move(p));
    }
    if (act.lip_sq) {
        PPolynomial p;
        push_term(p, *act.lip_sq * cw / (2.0 * std::sqrt(cb)), 1.0);
        add(std::move(p));
    }
    if (act.growth) {
        PPolynomial p;
        push_term(p, cw * act.growth->r1 / std::sqrt(cb), 1.0);
        push_term(p, cw * act.growth->r2 / std::sqrt(cb), 1.0 + act.growth->gamma);
        add(std::move(p));
    }
    return out;
}

} // namespace

PPolynomial p_polynomial(const ActivationSpec& act, double cb, double cw) {
    if (cb <= 0.0 || cw <= 0.0) throw DomainError("p_polynomial requires cb > 0 and cw > 0");
    auto candidates = p_candidates(act, cb, cw);
    if (candidates.empty())
        throw DomainError("deep bounds unavailable for this activation (no P route)");
    const auto best = std::min_element(
        candidates.begin(), candidates.end(),
        [](const PCandidate& a, const PCandidate& b) { return a.norm < b.norm; });
    return best->poly;
}

double p_l2_norm(const ActivationSpec& act, double cb, double cw) {
    if (cb <= 0.0 || cw <= 0.0) throw DomainError("p_l2_norm requires cb > 0 and cw > 0");
    auto candidates = p_candidates(act, cb, cw);
    double best = std::numeric_limits<double>::infinity();
    for (const PCandidate& c : candidates) best = std::min(best, c.norm);
    // Sharp per-function values beating the generic routes.
    if (act.eval_kind == ActKind::relu)
        best = std::min(best, cw * std::sqrt(1.5)); // cw * sqrt(E[Z^4 1{Z>=0}])
    if (act.eval_kind == ActKind::perceptron) best = std::min(best, 0.0);
    if (!std::isfinite(best))
        throw DomainError("deep bounds unavailable for this activation (no P route)");
    return best;
}

} // namespace gnncert
