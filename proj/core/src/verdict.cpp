#include "lacunary/verdict.hpp"

#include <algorithm>
#include <cmath>

#include "lacunary/error.hpp"

namespace lacunary {

const char* to_string(VerdictState state) noexcept {
    switch (state) {
    case VerdictState::NullConfirmed: return "NullConfirmed";
    case VerdictState::BoundedAway: return "BoundedAway";
    case VerdictState::Inconclusive: return "Inconclusive";
    }
    return "unknown";
}

void ToleranceConfig::validate() const {
    auto finite_pos = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!finite_pos(eps_null) || !finite_pos(delta_away))
        fail(ErrorKind::Parameter, "eps_null and delta_away must be finite and positive");
    if (!(eps_null < delta_away)) fail(ErrorKind::Parameter, "eps_null must be smaller than delta_away");
    if (tail_window < 2) fail(ErrorKind::Parameter, "tail_window must be >= 2");
    if (!finite_pos(decay_factor)) fail(ErrorKind::Parameter, "decay_factor must be finite and positive");
    if (n_max < 16) fail(ErrorKind::Parameter, "n_max must be >= 16");
    if (r_max < 2) fail(ErrorKind::Parameter, "R_max must be >= 2");
    if (lambda_grid.empty()) fail(ErrorKind::Parameter, "lambda_grid is empty");
    for (double l : lambda_grid)
        if (!(std::isfinite(l) && l > 1.0)) fail(ErrorKind::Parameter, "lambda values must be > 1");
    if (eps_grid.empty()) fail(ErrorKind::Parameter, "eps_grid is empty");
    for (double e : eps_grid)
        if (!finite_pos(e)) fail(ErrorKind::Parameter, "eps_grid values must be > 0");
    if (almost_shifts < 0) fail(ErrorKind::Parameter, "almost_shifts must be >= 0");
    if (!finite_pos(abel_tolerance)) fail(ErrorKind::Parameter, "abel_tolerance must be > 0");
}

Verdict null_verdict(const MeanProfile& profile, const ToleranceConfig& cfg) {
    if (cfg.tail_window < 2) fail(ErrorKind::Parameter, "tail_window must be >= 2");
    const auto window = static_cast<std::size_t>(cfg.tail_window);
    if (profile.size() < window)
        fail(ErrorKind::Parameter, std::string(to_string(profile.kind)) + " profile has " +
                                       std::to_string(profile.size()) + " points, fewer than tail_window " +
                                       std::to_string(window));
    const auto tail = std::span<const double>(profile.value).last(window);
    Verdict v;
    auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    v.evidence.tail_min = *lo;
    v.evidence.tail_max = *hi;
    const double first = tail.front();
    const double last = tail.back();
    v.evidence.decay_ratio = last == 0.0 ? INFINITY : first / last;

    if (v.evidence.tail_min >= cfg.delta_away)
        v.state = VerdictState::BoundedAway;
    else if (v.evidence.tail_max <= cfg.eps_null && v.evidence.decay_ratio >= cfg.decay_factor)
        v.state = VerdictState::NullConfirmed;
    else
        v.state = VerdictState::Inconclusive;
    return v;
}

MeanProfile tail_sup_envelope(const MeanProfile& profile) {
    MeanProfile env = profile;
    double run = -INFINITY;
    for (std::size_t i = env.value.size(); i-- > 0;) {
        run = std::max(run, env.value[i]);
        env.value[i] = run;
    }
    return env;
}

}  // namespace lacunary
