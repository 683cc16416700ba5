#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gnncert/simulate.hpp"

namespace gnncert {

// One probe of the bound-dominance contract: an empirical statistic (a valid
// lower bound of the metric) compared against the certified upper bound plus
// a Monte-Carlo margin.
struct ValidationCheck {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool pass = false;
    std::map<std::string, double> detail;
};

struct ValidationReport {
    std::string preset;
    std::uint64_t seed = 0;
    std::int64_t samples = 0;
    std::vector<ValidationCheck> checks;
    bool pass = false;
};

// Presets:
//   shallow-relu    ReLU, L=1, n0=4, x=0, n1=100, n_out=1, cb=cw=1
//                   (KS and W1 dominance, rectangle localization consistency)
//   collective-relu ReLU, L=2, n1=n2=50 (collective RMS dominance, layer-1 exact value)
//   deep-relu       ReLU, L=3, widths 50, n_out=3 (per-coordinate KS, output variance)
//   all             all of the above
// samples <= 0 selects the preset default. The report is byte-stable for a
// fixed (preset, samples, seed) and independent of the worker count.
ValidationReport run_validate(const std::string& preset, std::int64_t samples,
                              std::uint64_t seed, int workers);

std::vector<std::string> validate_presets();

} // namespace gnncert
