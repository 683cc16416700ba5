#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "gnncert/architecture.hpp"
#include "gnncert/localize.hpp"

namespace gnncert {

// Guards against accidental desk-melting runs; both overridable from the CLI.
struct SimulateLimits {
    double max_weight_draws = 4e9;   // total bias+weight draws across replicates
    double max_stored_scalars = 1e8; // replicate count x output dimension
};

// Monte-Carlo draws of network outputs. Each row is an independent replicate
// with all biases and weights freshly sampled; replicate r consumes only the
// stream keyed by (seed, r), so the matrix is reproducible for any worker
// count.
struct SampleBatch {
    std::int64_t m = 0;
    std::int64_t n_out = 0;
    std::uint64_t seed = 0;
    std::uint64_t fingerprint = 0; // hash of (architecture, activation, input)
    std::vector<double> values;    // row-major m x n_out

    double at(std::int64_t row, std::int64_t col) const {
        return values[static_cast<std::size_t>(row * n_out + col)];
    }
};

std::uint64_t config_fingerprint(const ActivationSpec& act, const Architecture& arch,
                                 std::span<const double> x);

SampleBatch sample_outputs(const ActivationSpec& act, const Architecture& arch,
                           std::span<const double> x, std::int64_t m, std::uint64_t seed,
                           int workers = 1, const SimulateLimits& limits = {});

// m draws of the collective observable (1/n_ell) * sum_j sigma(z_j^(ell))^2.
std::vector<double> sample_collective(const ActivationSpec& act, const Architecture& arch,
                                      std::span<const double> x, int ell, std::int64_t m,
                                      std::uint64_t seed, int workers = 1,
                                      const SimulateLimits& limits = {});

enum class Statistic { ks, w1_1d, rect_freq, collective_rms };

struct EmpiricalEstimate {
    Statistic statistic = Statistic::ks;
    double value = 0.0;
    double mc_halfwidth = 0.0; // 95% uncertainty half-width
    std::int64_t m = 0;
};

// sup_t |F_m(t) - Phi(t/nu)|; half-width 1.36/sqrt(m) (Kolmogorov quantile).
EmpiricalEstimate empirical_ks(std::span<const double> samples, double nu_sq);

// Exact integral of |F_m(t) - Phi(t/nu)| between order statistics using the
// antiderivative of Phi; half-width from a 10-way split of the replicates.
EmpiricalEstimate empirical_w1(std::span<const double> samples, double nu_sq);

// Fraction of rows inside the rectangle; binomial half-width.
EmpiricalEstimate empirical_rect_freq(const SampleBatch& batch, const Rect& rect);

// sqrt(mean (draw - target)^2); half-width by the delta method.
EmpiricalEstimate collective_rms_error(std::span<const double> draws, double target);

const char* statistic_name(Statistic s);

// Flat binary format: magic "GNNS", u32 version, u32 m, u32 n_out (all
// little-endian), then m*n_out little-endian IEEE doubles, row-major.
void write_batch_binary(const SampleBatch& batch, const std::string& path);
SampleBatch read_batch_binary(const std::string& path);
void write_batch_csv(const SampleBatch& batch, std::ostream& os);

} // namespace gnncert
