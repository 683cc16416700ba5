#include "gnncert/localize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gnncert/errors.hpp"

namespace gnncert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Phi(t/nu) with infinite endpoints resolved exactly.
double scaled_cdf(double t, double nu) {
    if (t == kInf) return 1.0;
    if (t == -kInf) return 0.0;
    return normal_cdf(t / nu);
}

double parse_endpoint(const std::string& token) {
    std::string s;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DomainError("bad rectangle endpoint '" + token + "'");
    }
}

} // namespace

Rect Rect::whole_space(std::size_t d) {
    Rect r;
    r.sides.assign(d, {-kInf, kInf});
    return r;
}

void Rect::validate() const {
    if (sides.empty()) throw DomainError("rectangle must have at least one coordinate");
    for (const auto& [lo, hi] : sides) {
        if (std::isnan(lo) || std::isnan(hi)) throw DomainError("rectangle endpoints must not be NaN");
        if (lo > hi) throw DomainError("rectangle needs lo <= hi in every coordinate");
    }
}

Rect parse_rect(const std::string& text) {
    Rect r;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos)
            throw DomainError("rectangle coordinate '" + part + "' is not of the form lo:hi");
        r.sides.emplace_back(parse_endpoint(part.substr(0, colon)),
                             parse_endpoint(part.substr(colon + 1)));
    }
    r.validate();
    return r;
}

double limit_rect_prob(double nu_sq, const Rect& rect) {
    rect.validate();
    if (!(nu_sq > 0.0)) throw DomainError("limit_rect_prob requires nu_sq > 0");
    const double nu = std::sqrt(nu_sq);
    double p = 1.0;
    for (const auto& [lo, hi] : rect.sides) p *= scaled_cdf(hi, nu) - scaled_cdf(lo, nu);
    return p;
}

double limit_rect_prob(const LayerStats& stats, std::int64_t n_out, const Rect& rect) {
    if (static_cast<std::int64_t>(rect.dim()) != n_out)
        throw DomainError("rectangle dimension does not match output dimension");
    return limit_rect_prob(stats.nu_sq, rect);
}

const char* mode_name(LocalizeMode m) {
    return m == LocalizeMode::tv_shallow ? "tv_shallow" : "convex_deep";
}

LocalizationReport certified_interval(const ActivationSpec& act, const Architecture& arch,
                                      std::span<const double> x, const Rect& rect,
                                      const QuadratureScheme& scheme) {
    arch.validate();
    if (static_cast<std::int64_t>(rect.dim()) != arch.n_out)
        throw DomainError("rectangle dimension does not match output dimension");

    LocalizationReport rep;
    if (arch.depth == 1 && arch.n_out == 1) {
        rep.mode = LocalizeMode::tv_shallow;
        rep.c_bound = shallow_bounds(act, arch, x, scheme)[1].value; // TV
    } else {
        rep.mode = LocalizeMode::convex_deep;
        rep.c_bound = deep_convex_bound(act, arch, x, scheme).value;
    }
    const LayerStats stats = layer_stats(act, arch, x, scheme);
    rep.p_limit = limit_rect_prob(stats, arch.n_out, rect);
    rep.lo = std::max(0.0, rep.p_limit - rep.c_bound);
    rep.hi = std::min(1.0, rep.p_limit + rep.c_bound);
    return rep;
}

} // namespace gnncert
