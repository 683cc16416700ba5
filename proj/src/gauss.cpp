#include "gnncert/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "gnncert/errors.hpp"
#include "gnncert/numeric.hpp"

namespace gnncert {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kInvSqrt2Pi = 0.39894228040143267793994605993438187;

struct GaussLegendreTable {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

// Newton iteration on the Legendre recurrence; nodes accurate to ~1 ulp.
GaussLegendreTable build_legendre(int n) {
    GaussLegendreTable t;
    t.nodes.resize(static_cast<std::size_t>(n));
    t.weights.resize(static_cast<std::size_t>(n));
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        // Recompute the derivative at the converged node for the weight.
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        t.nodes[static_cast<std::size_t>(i)] = -x; // ascending order
        t.weights[static_cast<std::size_t>(i)] = w;
        t.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        t.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return t;
}

const GaussLegendreTable& legendre_table(int n) {
    static std::map<int, GaussLegendreTable> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_legendre(n)).first;
    return it->second;
}

double panel(const std::function<double(double)>& g, double a, double b,
             const GaussLegendreTable& t) {
    const double mid = 0.5 * (a + b);
    const double halfw = 0.5 * (b - a);
    // Neumaier-compensated accumulation; keeps panel sums exact enough for
    // the 1e-10 oracle-agreement contract.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const double term = t.weights[i] * g(mid + halfw * t.nodes[i]);
        const double next = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - next) + term;
        else
            comp += (term - next) + sum;
        sum = next;
    }
    return halfw * (sum + comp);
}

double integrate_once(const std::function<double(double)>& g,
                      const QuadratureScheme& scheme, int nodes) {
    const GaussLegendreTable& t = legendre_table(nodes);
    const double r = scheme.truncation_radius;
    if (scheme.split_at_zero) return panel(g, -r, 0.0, t) + panel(g, 0.0, r, t);
    return panel(g, -r, r, t);
}

} // namespace

void QuadratureScheme::validate() const {
    if (node_count < 8) throw DomainError("quadrature node_count must be >= 8");
    if (truncation_radius < 10.0)
        throw DomainError("quadrature truncation_radius must be >= 10 standard deviations");
}

double abs_moment(double p) {
    if (p < 0.0) throw DomainError("abs_moment requires exponent p >= 0");
    return std::pow(2.0, 0.5 * p) * std::tgamma(0.5 * (p + 1.0)) / std::sqrt(kPi);
}

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244008443621048490); }

double normal_quantile(double p) {
    // Wichura's algorithm AS 241, PPND16 variant (~1e-16 relative accuracy).
    if (!(p > 0.0 && p < 1.0)) throw DomainError("normal_quantile requires p in (0,1)");
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -x : x;
}

double gauss_expect(const std::function<double(double)>& f, const QuadratureScheme& scheme) {
    scheme.validate();
    const auto g = [&f](double z) { return f(z) * normal_pdf(z); };
    int nodes = scheme.node_count;
    double prev = integrate_once(g, scheme, nodes);
    for (int refine = 0; refine < 4; ++refine) {
        nodes *= 2;
        const double cur = integrate_once(g, scheme, nodes);
        if (std::abs(cur - prev) <= 1e-12 * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    throw DomainError("quadrature did not converge; activation growth unsupported");
}

double expect_sigma_power(const ActivationSpec& act, double kappa, int r,
                          const QuadratureScheme& scheme) {
    if (kappa < 0.0) throw DomainError("expect_sigma_power requires kappa >= 0");
    if (r != 1 && r != 2 && r != 4) throw DomainError("expect_sigma_power requires r in {1,2,4}");
    if (kappa == 0.0) return pow_int(act.sigma_at_zero, r);
    if (auto closed = moment_oracle(act, kappa, r)) return *closed;
    return gauss_expect([&act, kappa, r](double z) { return pow_int(eval(act, kappa * z), r); },
                        scheme);
}

double variance_sigma_sq(const ActivationSpec& act, double kappa,
                         const QuadratureScheme& scheme) {
    const double e4 = expect_sigma_power(act, kappa, 4, scheme);
    const double e2 = expect_sigma_power(act, kappa, 2, scheme);
    const double v = e4 - e2 * e2;
    if (e4 <= 0.0 || v < 1e-14 * e4)
        throw DomainError("Var(sigma^2) is degenerate; shallow bound hypothesis fails");
    return v;
}

} // namespace gnncert
