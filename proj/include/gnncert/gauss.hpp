#pragma once

#include <functional>
#include <span>

#include "gnncert/activation.hpp"

namespace gnncert {

// One-dimensional Gaussian quadrature setup for expectations E[f(Z)].
// Kinked integrands (ReLU-family activations) lose spectral convergence under
// a single panel, so the scheme splits at zero and applies transformed
// Gauss-Legendre on each half of [-truncation_radius, truncation_radius].
// Node counts double adaptively until the relative change drops below 1e-12.
struct QuadratureScheme {
    int node_count = 200;          // per panel; doubled up to 16x under the adaptive stop
    bool split_at_zero = true;
    double truncation_radius = 12.0; // standard deviations; tail mass < 1e-31

    void validate() const; // node_count >= 8, truncation_radius >= 10
};

// E|Z|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi), p >= 0.
double abs_moment(double p);

double normal_pdf(double x);

// Phi(x) to within 1e-14 absolute (erfc-based).
double normal_cdf(double x);

// Phi^{-1}(p) for p in (0,1), Wichura's PPND16 rational approximations.
double normal_quantile(double p);

// E[f(Z)] by adaptive Gauss-Legendre; throws DomainError if the refinement
// limit is reached without convergence.
double gauss_expect(const std::function<double(double)>& f,
                    const QuadratureScheme& scheme = {});

// E[sigma(kappa*Z)^r], r in {1,2,4}, kappa >= 0. Uses the activation's
// closed-form oracle when present, the exact value sigma(0)^r at kappa = 0,
// and quadrature otherwise.
double expect_sigma_power(const ActivationSpec& act, double kappa, int r,
                          const QuadratureScheme& scheme = {});

// Var(sigma(kappa*Z)^2) = E[sigma^4] - E[sigma^2]^2. Throws DomainError when
// the variance is degenerate (< 1e-14 * E[sigma^4]), which the shallow bound
// hypothesis rules out.
double variance_sigma_sq(const ActivationSpec& act, double kappa,
                         const QuadratureScheme& scheme = {});

} // namespace gnncert
