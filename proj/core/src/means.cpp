#include "lacunary/means.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "lacunary/compensated_sum.hpp"
#include "lacunary/error.hpp"
#include "lacunary/format.hpp"

namespace lacunary {

const char* to_string(ProfileKind kind) noexcept {
    switch (kind) {
    case ProfileKind::PrefixMean: return "prefix_mean";
    case ProfileKind::StrongCesaro: return "strong_cesaro";
    case ProfileKind::NthetaBlock: return "ntheta_block";
    case ProfileKind::StatDensity: return "stat_density";
    case ProfileKind::AlmostSpread: return "almost_spread";
    case ProfileKind::AbelGrid: return "abel_grid";
    case ProfileKind::TailSup: return "tail_sup";
    case ProfileKind::CauchySpread: return "cauchy_spread";
    case ProfileKind::SlowOscillation: return "slow_oscillation";
    }
    return "unknown";
}

namespace {

nlohmann::ordered_json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

void check_checkpoints(const RealSequence& alpha, const std::vector<Index>& checkpoints) {
    if (checkpoints.empty()) fail(ErrorKind::Parameter, "checkpoint list is empty");
    Index prev = 0;
    for (Index n : checkpoints) {
        if (n <= prev) fail(ErrorKind::Parameter, "checkpoints must be positive and strictly increasing");
        prev = n;
    }
    if (checkpoints.back() > alpha.n_max())
        fail(ErrorKind::Range, "checkpoint " + std::to_string(checkpoints.back()) + " exceeds n_max " +
                                   std::to_string(alpha.n_max()) + " of '" + alpha.tag() + "'");
}

// Walks k = 1..checkpoints.back() once, emitting f(accumulated, n) at each checkpoint.
template <class Term>
std::vector<double> prefix_scan(const RealSequence& alpha, const std::vector<Index>& checkpoints, Term term) {
    std::vector<double> out;
    out.reserve(checkpoints.size());
    CompensatedSum acc;
    std::size_t next = 0;
    for (Index k = 1; next < checkpoints.size(); ++k) {
        acc += term(alpha.eval(k));
        if (k == checkpoints[next]) {
            out.push_back(acc.value() / static_cast<double>(k));
            ++next;
        }
    }
    return out;
}

MeanProfile with_index(ProfileKind kind, const std::vector<Index>& idx, std::vector<double> values, double center) {
    MeanProfile p;
    p.kind = kind;
    p.index.assign(idx.begin(), idx.end());
    p.value = std::move(values);
    p.center = center;
    return p;
}

}  // namespace

std::string MeanProfile::to_csv() const {
    std::string out = "index,value\n";
    for (std::size_t i = 0; i < value.size(); ++i) out += format_double(index[i]) + "," + format_double(value[i]) + "\n";
    return out;
}

std::string MeanProfile::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = to_string(kind);
    j["center"] = number(center);
    j["schedule_tag"] = schedule_tag ? nlohmann::ordered_json(*schedule_tag) : nlohmann::ordered_json(nullptr);
    auto m = nlohmann::ordered_json::object();
    for (const auto& [key, v] : meta) m[key] = number(v);
    j["meta"] = m;
    auto ix = nlohmann::ordered_json::array();
    auto vx = nlohmann::ordered_json::array();
    for (double x : index) ix.push_back(number(x));
    for (double x : value) vx.push_back(number(x));
    j["index"] = ix;
    j["value"] = vx;
    return j.dump();
}

std::vector<Index> checkpoint_ladder(Index horizon, int count) {
    std::vector<Index> out;
    if (horizon < 1 || count < 0) return out;
    for (int i = 2 * count; i >= 0; --i) {
        double v = std::ldexp(static_cast<double>(horizon), -(i / 2));
        if (i % 2 == 1) v /= std::sqrt(2.0);
        const auto n = static_cast<Index>(std::floor(v));
        if (n >= 1 && (out.empty() || n > out.back())) out.push_back(n);
    }
    if (out.empty() || out.back() != horizon) out.push_back(horizon);
    return out;
}

MeanProfile prefix_mean(const RealSequence& alpha, const std::vector<Index>& checkpoints) {
    check_checkpoints(alpha, checkpoints);
    return with_index(ProfileKind::PrefixMean, checkpoints, prefix_scan(alpha, checkpoints, [](double a) { return a; }),
                      0.0);
}

MeanProfile strong_cesaro_deviation(const RealSequence& alpha, double center, const std::vector<Index>& checkpoints) {
    check_checkpoints(alpha, checkpoints);
    return with_index(ProfileKind::StrongCesaro, checkpoints,
                      prefix_scan(alpha, checkpoints, [center](double a) { return std::fabs(a - center); }), center);
}

MeanProfile ntheta_block_means(const RealSequence& alpha, double center, const LacunarySchedule& theta, Index blocks) {
    if (blocks < 1 || blocks > theta.r_max())
        fail(ErrorKind::Parameter, "block count " + std::to_string(blocks) + " outside [1, " +
                                       std::to_string(theta.r_max()) + "]");
    if (theta.k(blocks) > alpha.n_max())
        fail(ErrorKind::Range, "schedule reaches k_R = " + std::to_string(theta.k(blocks)) + " beyond n_max " +
                                   std::to_string(alpha.n_max()) + " of '" + alpha.tag() + "'");
    MeanProfile p;
    p.kind = ProfileKind::NthetaBlock;
    p.center = center;
    p.schedule_tag = theta.tag();
    p.index.reserve(static_cast<std::size_t>(blocks));
    p.value.reserve(static_cast<std::size_t>(blocks));
    Index k = 1;
    for (Index r = 1; r <= blocks; ++r) {
        CompensatedSum acc;
        for (; k <= theta.k(r); ++k) acc += std::fabs(alpha.eval(k) - center);
        p.index.push_back(static_cast<double>(r));
        p.value.push_back(acc.value() / static_cast<double>(theta.h(r)));
    }
    return p;
}

std::vector<Index> statistical_exceed_counts(const RealSequence& alpha, double center, double eps,
                                             const std::vector<Index>& checkpoints) {
    if (!(eps > 0.0)) fail(ErrorKind::Parameter, "epsilon must be > 0");
    check_checkpoints(alpha, checkpoints);
    std::vector<Index> out;
    Index count = 0;
    std::size_t next = 0;
    for (Index k = 1; next < checkpoints.size(); ++k) {
        if (std::fabs(alpha.eval(k) - center) >= eps) ++count;
        if (k == checkpoints[next]) {
            out.push_back(count);
            ++next;
        }
    }
    return out;
}

MeanProfile statistical_exceed_density(const RealSequence& alpha, double center, double eps,
                                       const std::vector<Index>& checkpoints) {
    const auto counts = statistical_exceed_counts(alpha, center, eps, checkpoints);
    std::vector<double> values;
    for (std::size_t i = 0; i < counts.size(); ++i)
        values.push_back(static_cast<double>(counts[i]) / static_cast<double>(checkpoints[i]));
    auto p = with_index(ProfileKind::StatDensity, checkpoints, std::move(values), center);
    p.meta["epsilon"] = eps;
    return p;
}

MeanProfile almost_window_spread(const RealSequence& alpha, Index n, Index shifts, bool absolute) {
    if (n < 1 || shifts < 0) fail(ErrorKind::Parameter, "almost_window_spread needs n >= 1 and J >= 0");
    if (n + shifts + 1 > alpha.n_max())
        fail(ErrorKind::Range, "window n + J + 1 = " + std::to_string(n + shifts + 1) + " exceeds n_max " +
                                   std::to_string(alpha.n_max()) + " of '" + alpha.tag() + "'");
    auto term = [&](Index k) {
        const double a = alpha.eval(k);
        return absolute ? std::fabs(a) : a;
    };
    MeanProfile p;
    p.kind = ProfileKind::AlmostSpread;
    CompensatedSum window;
    for (Index k = 1; k <= n; ++k) window += term(k);
    const double inv = 1.0 / static_cast<double>(n);
    double lo = INFINITY, hi = -INFINITY, max_abs = 0.0;
    for (Index j = 0; j <= shifts; ++j) {
        if (j > 0) {
            window -= term(j);
            window += term(n + j);
        }
        const double m = window.value() * inv;
        p.index.push_back(static_cast<double>(j));
        p.value.push_back(m);
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        max_abs = std::max(max_abs, std::fabs(m));
    }
    p.meta["n"] = static_cast<double>(n);
    p.meta["spread"] = hi - lo;
    p.meta["max_abs"] = max_abs;
    return p;
}

double estimate_growth_constant(const RealSequence& alpha) {
    const Index limit = std::min<Index>(10000, alpha.n_max());
    const double g = alpha.growth_bound();
    double c = 0.0;
    for (Index k = 1; k <= limit; ++k) {
        const double scale = g == 0.0 ? 1.0 : std::pow(static_cast<double>(k), g);
        c = std::max(c, std::fabs(alpha.eval(k)) / scale);
    }
    return 1.1 * c;
}

AbelResult abel_value(const RealSequence& alpha, double x, double tail_tolerance) {
    if (!(x >= 0.0 && x < 1.0)) fail(ErrorKind::Parameter, "Abel parameter x must lie in [0, 1)");
    if (!(tail_tolerance > 0.0)) fail(ErrorKind::Parameter, "tail tolerance must be > 0");
    const double g = alpha.growth_bound();
    const double c = estimate_growth_constant(alpha);
    const double log_x = x > 0.0 ? std::log(x) : -INFINITY;
    AbelResult res;
    res.growth_constant = c;
    CompensatedSum acc;
    double power = 1.0;  // x^j
    // Abel index j carries alpha_{j+1}. Terms (j+1)^g x^j have ratios
    // ((j+2)/(j+1))^g x that decrease in j, which gives a geometric tail bound.
    for (Index j = 0;; ++j) {
        const Index k = j + 1;
        if (k > alpha.n_max())
            fail(ErrorKind::Truncation, "Abel sum of '" + alpha.tag() + "' at x=" + format_double(x) +
                                            " reached n_max with tail bound " + format_double(res.tail_bound) +
                                            " > " + format_double(tail_tolerance));
        acc += alpha.eval(k) * power;
        power *= x;
        res.terms = j + 1;
        const double next = static_cast<double>(j + 2);
        const double ratio = std::exp(g * std::log((next + 1.0) / next)) * x;
        if (c == 0.0 || x == 0.0) {
            res.tail_bound = 0.0;
        } else if (ratio < 1.0) {
            const double lead = std::exp(g * std::log(next) + static_cast<double>(j + 1) * log_x);
            res.tail_bound = c * (1.0 - x) * lead / (1.0 - ratio);
        } else {
            res.tail_bound = INFINITY;
        }
        if (res.tail_bound <= tail_tolerance) break;
    }
    res.value = (1.0 - x) * acc.value();
    return res;
}

}  // namespace lacunary
