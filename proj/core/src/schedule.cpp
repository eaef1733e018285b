#include "lacunary/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lacunary/error.hpp"
#include "lacunary/format.hpp"

namespace lacunary {

namespace {

Index checked_mul(Index a, Index b, const char* what) {
    Index out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        fail(ErrorKind::Range, std::string(what) + ": breakpoint overflows 64-bit integers");
    return out;
}

std::string describe_family(ScheduleFamily family, const ParamMap& params, Index r_max) {
    std::string tag = to_string(family);
    for (const auto& [key, value] : params) tag += ":" + format_double(value);
    return tag + ":" + std::to_string(r_max);
}

double mean_of(const std::vector<Index>& v, std::size_t first, std::size_t last) {
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) s += static_cast<double>(v[i]);
    return s / static_cast<double>(last - first);
}

}  // namespace

LacunarySchedule::LacunarySchedule(std::vector<Index> k, std::string tag) : k_(std::move(k)), tag_(std::move(tag)) {
    if (k_.size() < 3) fail(ErrorKind::Validation, "schedule '" + tag_ + "' needs at least two blocks");
    if (k_[0] != 0) fail(ErrorKind::Validation, "schedule '" + tag_ + "' must start at k_0 = 0");
    for (std::size_t r = 1; r < k_.size(); ++r)
        if (k_[r] <= k_[r - 1])
            fail(ErrorKind::Validation, "schedule '" + tag_ + "' is not strictly increasing at r=" + std::to_string(r));
}

double LacunarySchedule::q(Index r) const {
    if (r < 2 || r > r_max()) fail(ErrorKind::Parameter, "q_r is defined for 2 <= r <= R only (r=" + std::to_string(r) + ")");
    return static_cast<double>(k(r)) / static_cast<double>(k(r - 1));
}

Index LacunarySchedule::blocks_within(Index n) const {
    auto it = std::upper_bound(k_.begin(), k_.end(), n);
    return static_cast<Index>(it - k_.begin()) - 1;
}

Index LacunarySchedule::block_of(Index n) const {
    if (n < 1 || n > k_.back()) fail(ErrorKind::Range, "index " + std::to_string(n) + " lies in no block");
    auto it = std::lower_bound(k_.begin(), k_.end(), n);
    return static_cast<Index>(it - k_.begin());
}

const char* to_string(ScheduleFamily family) noexcept {
    switch (family) {
    case ScheduleFamily::Geometric: return "geometric";
    case ScheduleFamily::Power: return "power";
    case ScheduleFamily::Factorial: return "factorial";
    case ScheduleFamily::Explicit: return "explicit";
    }
    return "unknown";
}

ScheduleFamily schedule_family_from_string(const std::string& name) {
    for (auto f : {ScheduleFamily::Geometric, ScheduleFamily::Power, ScheduleFamily::Factorial, ScheduleFamily::Explicit})
        if (name == to_string(f)) return f;
    fail(ErrorKind::Identifier, "unknown schedule family '" + name + "'");
}

LacunarySchedule make_lacunary_schedule(ScheduleFamily family, const ParamMap& params, Index r_max) {
    if (r_max < 2) fail(ErrorKind::Parameter, "schedule needs R_max >= 2");
    auto get = [&](const char* key) {
        auto it = params.find(key);
        if (it == params.end())
            fail(ErrorKind::Parameter, std::string(to_string(family)) + " schedule requires '" + key + "'");
        return it->second;
    };
    std::vector<Index> k(static_cast<std::size_t>(r_max) + 1, 0);
    switch (family) {
    case ScheduleFamily::Geometric: {
        const double rho = get("ratio");
        if (!(rho > 1.0) || !std::isfinite(rho)) fail(ErrorKind::Parameter, "geometric ratio must be > 1");
        if (rho == std::floor(rho)) {
            const auto step = static_cast<Index>(rho);
            Index v = 1;
            for (Index r = 1; r <= r_max; ++r) k[r] = v = checked_mul(v, step, "geometric");
        } else {
            for (Index r = 1; r <= r_max; ++r) {
                const double v = std::ceil(std::pow(rho, static_cast<double>(r)));
                if (!(v < 9.2e18)) fail(ErrorKind::Range, "geometric: breakpoint overflows 64-bit integers");
                k[r] = static_cast<Index>(v);
            }
        }
        break;
    }
    case ScheduleFamily::Power: {
        const double p = get("p");
        if (!(p >= 2.0) || p != std::floor(p) || p > 62.0) fail(ErrorKind::Parameter, "power exponent must be an integer >= 2");
        for (Index r = 1; r <= r_max; ++r) {
            Index v = 1;
            for (int i = 0; i < static_cast<int>(p); ++i) v = checked_mul(v, r, "power");
            k[r] = v;
        }
        break;
    }
    case ScheduleFamily::Factorial: {
        Index v = 1;
        for (Index r = 1; r <= r_max; ++r) k[r] = v = checked_mul(v, r, "factorial");
        break;
    }
    case ScheduleFamily::Explicit:
        fail(ErrorKind::Parameter, "explicit schedules take a breakpoint list");
    }
    return LacunarySchedule(std::move(k), describe_family(family, params, r_max));
}

LacunarySchedule make_explicit_schedule(std::vector<Index> k) {
    std::string tag = "explicit:";
    for (std::size_t i = 0; i < k.size(); ++i) tag += (i ? "," : "") + std::to_string(k[i]);
    return LacunarySchedule(std::move(k), tag);
}

ScheduleStats schedule_stats(const LacunarySchedule& theta, Index window) {
    const Index r_max = theta.r_max();
    if (window < 1) fail(ErrorKind::Parameter, "schedule_stats window must be >= 1");
    if (window > r_max - 1)
        fail(ErrorKind::Parameter, "schedule_stats window " + std::to_string(window) + " exceeds the " +
                                       std::to_string(r_max - 1) + " available ratios");
    ScheduleStats stats;
    stats.window = window;
    for (Index r = 1; r <= r_max; ++r) stats.h.push_back(theta.h(r));
    for (Index r = 2; r <= r_max; ++r) stats.q.push_back(theta.q(r));
    auto tail = std::span<const double>(stats.q).last(static_cast<std::size_t>(window));
    auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
    stats.tail_inf_q = *lo;
    stats.tail_sup_q = *hi;
    return stats;
}

ScheduleDiagnostics validate_breakpoints(const std::vector<Index>& k, const ScheduleValidationOptions& options) {
    ScheduleDiagnostics d;
    d.starts_at_zero = !k.empty() && k[0] == 0;
    d.strictly_increasing = k.size() >= 2;
    for (std::size_t r = 1; r < k.size(); ++r)
        if (k[r] <= k[r - 1]) {
            d.strictly_increasing = false;
            d.messages.push_back("not strictly increasing at r=" + std::to_string(r));
            break;
        }
    if (!d.starts_at_zero) d.messages.push_back("k_0 is not 0");
    if (!d.structural_ok() || k.size() < 3) {
        if (k.size() < 3) d.messages.push_back("fewer than two blocks");
        return d;
    }

    std::vector<Index> h;
    for (std::size_t r = 1; r < k.size(); ++r) h.push_back(k[r] - k[r - 1]);
    const std::size_t quarter = std::max<std::size_t>(1, h.size() / 4);
    d.h_first_quarter_mean = mean_of(h, 0, quarter);
    d.h_last_quarter_mean = mean_of(h, h.size() - quarter, h.size());
    d.h_growing = d.h_last_quarter_mean >= options.growth_factor * d.h_first_quarter_mean;
    if (!d.h_growing) d.messages.push_back("h_r shows no growth trend");

    const LacunarySchedule theta(k);
    const Index nq = theta.r_max() - 1;
    const Index window = options.window > 0 ? std::min(options.window, nq) : std::max<Index>(1, nq / 4);
    d.stats = schedule_stats(theta, window);
    d.liminf_gt_one = d.stats->tail_inf_q > 1.0 + options.liminf_margin;
    if (!d.liminf_gt_one) d.messages.push_back("tail inf q_r is not bounded away from 1");

    const auto& q = d.stats->q;
    const std::size_t qq = std::max<std::size_t>(1, q.size() / 4);
    double first = 0.0, last = 0.0;
    for (std::size_t i = 0; i < qq; ++i) {
        first += q[i];
        last += q[q.size() - qq + i];
    }
    d.limsup_finite = last < options.limsup_trend_factor * first;
    if (!d.limsup_finite) d.messages.push_back("q_r trends upward without bound");
    return d;
}

ScheduleDiagnostics validate_schedule(const LacunarySchedule& theta, const ScheduleValidationOptions& options) {
    return validate_breakpoints(theta.breakpoints(), options);
}

}  // namespace lacunary
