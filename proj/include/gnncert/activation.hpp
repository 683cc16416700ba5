#pragma once

#include <optional>
#include <string>
#include <vector>

namespace gnncert {

enum class ActKind {
    relu,
    perceptron,
    sigmoid,
    tanh_fn,
    sine,
    softplus,
    swish,
    sqrt_relu,
    monomial,
    custom,
};

// Envelope max{|sigma(x)|, |sigma'(x)|} <= r1 + r2*|x|^gamma. Catalog entries
// carrying a triple also satisfy it for |sigma''| (required by the C^2
// comparison bounds).
struct GrowthEnvelope {
    double r1 = 0.0;
    double r2 = 0.0;
    double gamma = 0.0;
};

// An activation function together with the certified metadata the distance
// bounds consume. Immutable after construction; all operations on it are pure.
struct ActivationSpec {
    ActKind kind = ActKind::custom;   // certification identity
    ActKind eval_kind = ActKind::relu; // function actually evaluated (catalog only)
    int degree = 0;                    // monomial exponent k >= 1
    std::optional<double> lip;         // Lipschitz constant of sigma
    std::optional<double> lip_sq;      // Lipschitz constant of sigma^2
    std::optional<GrowthEnvelope> growth;
    double sigma_at_zero = 0.0;
    bool has_moment_oracle = false;
    std::string name;
};

// Generalized polynomial with nonnegative coefficients and real exponents
// (non-integer exponents arise from the growth-envelope route).
struct PTerm {
    double coeff = 0.0;
    double exponent = 0.0;
};

struct PPolynomial {
    std::vector<PTerm> terms; // empty means the zero polynomial

    bool zero() const { return terms.empty(); }
};

ActivationSpec make_activation(ActKind kind, int monomial_degree = 0);
ActivationSpec make_activation(const std::string& name); // e.g. "relu", "monomial:3"

// Custom activation: evaluation delegates to a catalog base function, the
// certification metadata is supplied by the caller. At least one of
// lip/lip_sq/growth must be present.
ActivationSpec make_custom_activation(const ActivationSpec& base,
                                      std::optional<double> lip,
                                      std::optional<double> lip_sq,
                                      std::optional<GrowthEnvelope> growth);

double eval(const ActivationSpec& act, double x);

// Closed-form E[sigma(kappa*Z)^r] when one is known for this activation
// (kappa >= 0, r in {1,2,4}); nullopt when only quadrature is available.
std::optional<double> moment_oracle(const ActivationSpec& act, double kappa, int r);

double p_eval(const PPolynomial& p, double x);

// L2 norm of P(|Z|) for a standard normal Z:
//   sqrt( sum_{j,k} d_j d_k E|Z|^{e_j+e_k} ).
double p_l2_norm(const PPolynomial& p);

// The dominating polynomial P for |sigma(x*sqrt(cb+cw*a2))^2 -
// sigma(x*sqrt(cb+cw*a1))^2| <= P(|x|)|a2-a1|. When several construction
// routes apply, returns the one with the smallest ||P(|Z|)||_L2 (any valid P
// yields a valid bound, smaller P a tighter one). Throws DomainError when no
// route applies.
PPolynomial p_polynomial(const ActivationSpec& act, double cb, double cw);

// Certified ||P(|Z|)||_L2 including the sharp per-activation overrides:
// ReLU admits cw*sqrt(3/2) (the one-sided fourth moment), the perceptron 0.
double p_l2_norm(const ActivationSpec& act, double cb, double cw);

const char* kind_name(ActKind k);

} // namespace gnncert
