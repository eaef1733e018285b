#include "lacunary/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "lacunary/error.hpp"
#include "lacunary/format.hpp"

namespace lacunary {

namespace {

struct ClassName {
    SequenceClass cls;
    const char* tag;
};

constexpr ClassName kClassNames[] = {
    {SequenceClass::QuasiCauchy, "qc"},
    {SequenceClass::DeltaQuasiCauchy, "delta_qc"},
    {SequenceClass::StatisticalQC, "stat_qc"},
    {SequenceClass::StrongCesaroQC, "cesaro_qc"},
    {SequenceClass::NthetaQC, "ntheta_qc"},
    {SequenceClass::NthetaConvergent, "ntheta"},
    {SequenceClass::StrongCesaro, "strong_cesaro"},
    {SequenceClass::Statistical, "statistical"},
    {SequenceClass::Abel, "abel"},
    {SequenceClass::AlmostQC, "almost_qc"},
    {SequenceClass::AlmostConvergent, "almost"},
    {SequenceClass::Cauchy, "cauchy"},
    {SequenceClass::SlowlyOscillating, "slow_osc"},
};

Index horizon_of(const RealSequence& s, const ToleranceConfig& cfg) { return std::min(cfg.n_max, s.n_max()); }

std::vector<Index> checkpoints_for(Index horizon, const ClassifyOptions& opts) {
    if (opts.checkpoints) {
        std::vector<Index> cps;
        for (Index n : *opts.checkpoints)
            if (n <= horizon) cps.push_back(n);
        return cps;
    }
    return checkpoint_ladder(horizon);
}

// value at n: sup_{n <= k <= horizon} |w_k|
MeanProfile tail_sup_profile(const RealSequence& w, Index horizon, const std::vector<Index>& cps) {
    MeanProfile p;
    p.kind = ProfileKind::TailSup;
    if (cps.empty()) return p;
    p.index.assign(cps.begin(), cps.end());
    p.value.assign(cps.size(), 0.0);
    double run = 0.0;
    auto next = static_cast<std::ptrdiff_t>(cps.size()) - 1;
    for (Index k = horizon; k >= cps.front() && next >= 0; --k) {
        run = std::max(run, std::fabs(w.eval(k)));
        if (k == cps[static_cast<std::size_t>(next)]) {
            p.value[static_cast<std::size_t>(next)] = run;
            --next;
        }
    }
    return p;
}

// value at n: max_{n < m <= n + span} |alpha_m - alpha_n|
MeanProfile cauchy_profile(const RealSequence& alpha, Index horizon) {
    const Index span = std::max<Index>(1, horizon / 4);
    MeanProfile p;
    p.kind = ProfileKind::CauchySpread;
    p.meta["span"] = static_cast<double>(span);
    for (Index n : checkpoint_ladder(horizon - span)) {
        const double base = alpha.eval(n);
        double m = 0.0;
        for (Index k = n + 1; k <= n + span; ++k) m = std::max(m, std::fabs(alpha.eval(k) - base));
        p.index.push_back(static_cast<double>(n));
        p.value.push_back(m);
    }
    return p;
}

Index blocks_for(const LacunarySchedule& theta, Index horizon) {
    const Index r = theta.blocks_within(horizon);
    if (r < 1)
        fail(ErrorKind::Range, "schedule '" + theta.tag() + "' has no complete block within horizon " +
                                   std::to_string(horizon));
    return r;
}

double default_center(const RealSequence& alpha, const ToleranceConfig& cfg) {
    const Index h = horizon_of(alpha, cfg);
    return prefix_mean(alpha, {h}).value.back();
}

Verdict finish(MeanProfile profile, const ToleranceConfig& cfg) {
    Verdict v = null_verdict(tail_sup_envelope(profile), cfg);
    v.profile = std::make_shared<const MeanProfile>(std::move(profile));
    return v;
}

// Statistical classes: one density profile per epsilon; any refutation wins,
// confirmation needs every epsilon.
Verdict statistical_verdict(const RealSequence& w, double center, const std::vector<Index>& cps,
                            const ToleranceConfig& cfg) {
    std::optional<Verdict> inconclusive, confirmed;
    for (double eps : cfg.eps_grid) {
        Verdict v = finish(statistical_exceed_density(w, center, eps, cps), cfg);
        if (v.state == VerdictState::BoundedAway) return v;
        if (v.state == VerdictState::Inconclusive && !inconclusive) inconclusive = v;
        if (v.state == VerdictState::NullConfirmed) confirmed = v;
    }
    return inconclusive ? *inconclusive : *confirmed;
}

Verdict abel_verdict(const RealSequence& alpha, double center, const ToleranceConfig& cfg) {
    MeanProfile p;
    p.kind = ProfileKind::AbelGrid;
    p.center = center;
    const auto first_m = 4;
    const auto last_m = first_m + static_cast<int>(cfg.tail_window) + 1;
    for (int m = first_m; m <= last_m; ++m) {
        const double x = 1.0 - std::ldexp(1.0, -m);
        const auto res = abel_value(alpha, x, cfg.abel_tolerance);
        p.index.push_back(x);
        // deviations within the certified truncation bound are indistinguishable from 0
        const double dev = std::fabs(res.value - center);
        p.value.push_back(dev <= res.tail_bound ? 0.0 : dev);
    }
    return finish(std::move(p), cfg);
}

Verdict almost_verdict(const RealSequence& w, std::optional<double> center, bool absolute,
                       const ToleranceConfig& cfg) {
    const Index shifts = cfg.almost_shifts;
    const Index h = horizon_of(w, cfg);
    if (h <= shifts + 2) fail(ErrorKind::Range, "sequence too short for " + std::to_string(shifts) + " shifts");
    MeanProfile p;
    p.kind = ProfileKind::AlmostSpread;
    p.center = center.value_or(0.0);
    p.meta["shifts"] = static_cast<double>(shifts);
    for (Index n : checkpoint_ladder(h - shifts - 1)) {
        const auto windows = almost_window_spread(w, n, shifts, absolute);
        double worst = 0.0;
        for (double m : windows.value) worst = std::max(worst, std::fabs(m - p.center));
        p.index.push_back(static_cast<double>(n));
        p.value.push_back(worst);
    }
    return finish(std::move(p), cfg);
}

// Sliding max/min of alpha over (n, top]; both ends are non-decreasing in n,
// so monotone deques give every window in O(n_max).
struct SlidingExtrema {
    explicit SlidingExtrema(const std::vector<double>& v) : values(v) {}

    const std::vector<double>& values;
    std::deque<Index> hi, lo;
    Index filled = 0;

    double val(Index k) const { return values[static_cast<std::size_t>(k - 1)]; }

    void advance(Index n, Index top) {
        while (filled < top) {
            const Index k = ++filled;
            while (!hi.empty() && val(hi.back()) <= val(k)) hi.pop_back();
            while (!lo.empty() && val(lo.back()) >= val(k)) lo.pop_back();
            hi.push_back(k);
            lo.push_back(k);
        }
        while (!hi.empty() && hi.front() <= n) hi.pop_front();
        while (!lo.empty() && lo.front() <= n) lo.pop_front();
    }
};

}  // namespace

const char* to_string(SequenceClass cls) noexcept {
    for (const auto& c : kClassNames)
        if (c.cls == cls) return c.tag;
    return "unknown";
}

SequenceClass sequence_class_from_string(const std::string& tag) {
    for (const auto& c : kClassNames)
        if (tag == c.tag) return c.cls;
    fail(ErrorKind::Identifier, "unknown class '" + tag + "'");
}

const std::vector<SequenceClass>& all_sequence_classes() {
    static const std::vector<SequenceClass> all = [] {
        std::vector<SequenceClass> v;
        for (const auto& c : kClassNames) v.push_back(c.cls);
        return v;
    }();
    return all;
}

bool needs_schedule(SequenceClass cls) noexcept {
    return cls == SequenceClass::NthetaQC || cls == SequenceClass::NthetaConvergent;
}

bool needs_center(SequenceClass cls) noexcept {
    switch (cls) {
    case SequenceClass::NthetaConvergent:
    case SequenceClass::StrongCesaro:
    case SequenceClass::Statistical:
    case SequenceClass::Abel:
    case SequenceClass::AlmostConvergent: return true;
    default: return false;
    }
}

Verdict classify_membership(const RealSequence& alpha, SequenceClass cls, const ClassifyOptions& options,
                            const ToleranceConfig& cfg) {
    cfg.validate();
    if (needs_schedule(cls) && !options.theta)
        fail(ErrorKind::Parameter, std::string("class '") + to_string(cls) + "' requires a lacunary schedule");
    const double center = needs_center(cls) ? options.center.value_or(default_center(alpha, cfg)) : 0.0;

    switch (cls) {
    case SequenceClass::QuasiCauchy:
    case SequenceClass::DeltaQuasiCauchy: {
        const auto w = cls == SequenceClass::QuasiCauchy ? forward_difference(alpha) : second_difference(alpha);
        const Index h = horizon_of(w, cfg);
        return finish(tail_sup_profile(w, h, checkpoints_for(h, options)), cfg);
    }
    case SequenceClass::StatisticalQC: {
        const auto w = forward_difference(alpha);
        return statistical_verdict(w, 0.0, checkpoints_for(horizon_of(w, cfg), options), cfg);
    }
    case SequenceClass::Statistical:
        return statistical_verdict(alpha, center, checkpoints_for(horizon_of(alpha, cfg), options), cfg);
    case SequenceClass::StrongCesaroQC: {
        const auto w = forward_difference(alpha);
        return finish(strong_cesaro_deviation(w, 0.0, checkpoints_for(horizon_of(w, cfg), options)), cfg);
    }
    case SequenceClass::StrongCesaro:
        return finish(strong_cesaro_deviation(alpha, center, checkpoints_for(horizon_of(alpha, cfg), options)), cfg);
    case SequenceClass::NthetaQC: {
        const auto w = forward_difference(alpha);
        const Index r = std::min(cfg.r_max, blocks_for(*options.theta, horizon_of(w, cfg)));
        return finish(ntheta_block_means(w, 0.0, *options.theta, r), cfg);
    }
    case SequenceClass::NthetaConvergent: {
        const Index r = std::min(cfg.r_max, blocks_for(*options.theta, horizon_of(alpha, cfg)));
        return finish(ntheta_block_means(alpha, center, *options.theta, r), cfg);
    }
    case SequenceClass::Abel: return abel_verdict(alpha, center, cfg);
    case SequenceClass::AlmostQC: {
        const auto w = options.almost_absolute ? forward_difference(alpha) : scale(forward_difference(alpha), -1.0);
        return almost_verdict(w, std::nullopt, options.almost_absolute, cfg);
    }
    case SequenceClass::AlmostConvergent: return almost_verdict(alpha, center, false, cfg);
    case SequenceClass::Cauchy: return finish(cauchy_profile(alpha, horizon_of(alpha, cfg)), cfg);
    case SequenceClass::SlowlyOscillating: return slow_oscillation_profile(alpha, cfg);
    }
    fail(ErrorKind::Identifier, "unhandled class");
}

Verdict slow_oscillation_profile(const RealSequence& alpha, const ToleranceConfig& cfg) {
    cfg.validate();
    std::vector<double> lambdas = cfg.lambda_grid;
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
    const double lambda_min = lambdas.front();
    const double lambda_max = lambdas.back();

    const Index horizon = horizon_of(alpha, cfg);
    const Index first = std::max<Index>(1, horizon / 4);
    const auto last = static_cast<Index>(std::floor(static_cast<double>(horizon) / lambda_max));
    if (last < first || static_cast<Index>(std::floor(lambda_max * static_cast<double>(last))) > horizon)
        fail(ErrorKind::Range, "n_max " + std::to_string(horizon) + " too small for lambda " + format_double(lambda_max));

    const auto values = alpha.materialize(1, horizon);
    auto val = [&](Index k) { return values[static_cast<std::size_t>(k - 1)]; };
    auto upper = [](double lambda, Index n) { return static_cast<Index>(std::floor(lambda * static_cast<double>(n))); };

    MeanProfile p;
    p.kind = ProfileKind::SlowOscillation;
    p.meta["tail_first"] = static_cast<double>(first);
    p.meta["tail_last"] = static_cast<double>(last);
    for (double lambda : lambdas) {
        SlidingExtrema w{values};
        w.filled = first;
        double best = 0.0;
        for (Index n = first; n <= last; ++n) {
            w.advance(n, upper(lambda, n));
            if (w.hi.empty()) continue;
            const double a = val(n);
            best = std::max({best, w.val(w.hi.front()) - a, a - w.val(w.lo.front())});
        }
        p.index.push_back(lambda);
        p.value.push_back(best);
    }

    Verdict v;
    const double m_min = p.value.front();
    const double m_max = p.value.back();
    v.evidence.tail_max = m_min;
    v.evidence.tail_min = m_min;
    v.evidence.decay_ratio = m_min == 0.0 ? INFINITY : m_max / m_min;
    if (m_min >= cfg.delta_away) {
        v.state = VerdictState::BoundedAway;
        const double threshold = std::max(cfg.delta_away, 0.5 * m_min);
        SlidingExtrema w{values};
        for (Index n = 1; n <= last; ++n) {
            w.advance(n, upper(lambda_min, n));
            if (w.hi.empty()) continue;
            const double a = val(n);
            if (w.val(w.hi.front()) - a >= threshold || a - w.val(w.lo.front()) >= threshold) {
                for (Index k = n + 1; k <= upper(lambda_min, n); ++k)
                    if (std::fabs(val(k) - a) >= threshold) {
                        v.evidence.witness = std::make_pair(n, k);
                        break;
                    }
                break;
            }
        }
        p.meta["witness_threshold"] = threshold;
    } else if (m_min <= cfg.eps_null && v.evidence.decay_ratio >= cfg.decay_factor) {
        v.state = VerdictState::NullConfirmed;
    } else {
        v.state = VerdictState::Inconclusive;
    }
    v.profile = std::make_shared<const MeanProfile>(std::move(p));
    return v;
}

// --- reports ---------------------------------------------------------------

std::size_t InclusionReport::violations() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.violation; }));
}

InclusionReport inclusion_report(const std::vector<RealSequence>& families, const LacunarySchedule& theta,
                                 const ToleranceConfig& cfg) {
    if (families.empty()) fail(ErrorKind::Parameter, "inclusion report needs at least one sequence");
    cfg.validate();
    InclusionReport report;
    report.schedule = validate_schedule(theta);
    ClassifyOptions opts;
    opts.theta = theta;
    for (const auto& alpha : families) {
        InclusionRow row;
        row.sequence = alpha.tag();
        try {
            row.cesaro_qc = classify_membership(alpha, SequenceClass::StrongCesaroQC, opts, cfg);
            row.ntheta_qc = classify_membership(alpha, SequenceClass::NthetaQC, opts, cfg);
        } catch (const Error& e) {
            row.error = std::string(to_string(e.kind())) + ": " + e.what();
            report.rows.push_back(std::move(row));
            continue;
        }
        const auto ces = row.cesaro_qc->state;
        const auto blk = row.ntheta_qc->state;
        const auto& d = report.schedule;
        if (d.liminf_gt_one && ces == VerdictState::NullConfirmed && blk == VerdictState::BoundedAway) {
            row.violation = true;
            row.violation_detail = "cesaro_qc within ntheta_qc (liminf q > 1)";
        }
        if (d.limsup_finite && blk == VerdictState::NullConfirmed && ces == VerdictState::BoundedAway) {
            row.violation = true;
            row.violation_detail = "ntheta_qc within cesaro_qc (limsup q finite)";
        }
        if ((!d.liminf_gt_one && blk == VerdictState::BoundedAway && ces != VerdictState::BoundedAway) ||
            (!d.limsup_finite && ces == VerdictState::BoundedAway && blk != VerdictState::BoundedAway))
            row.necessity_separation = true;
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::size_t WardReport::violations() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.violation; }));
}

WardReport ward_continuity_probe(const RealFunction& f, const std::vector<RealSequence>& families,
                                 const LacunarySchedule& theta, const ToleranceConfig& cfg) {
    cfg.validate();
    WardReport report;
    report.function = f.describe();
    ClassifyOptions opts;
    opts.theta = theta;
    for (const auto& alpha : families) {
        WardRow row;
        row.sequence = alpha.tag();
        try {
            row.input = classify_membership(alpha, SequenceClass::NthetaQC, opts, cfg);
            const auto image = apply_pointwise(f, alpha, horizon_of(alpha, cfg));
            row.image = classify_membership(image, SequenceClass::NthetaQC, opts, cfg);
            row.violation = row.input->state == VerdictState::NullConfirmed &&
                            row.image->state == VerdictState::BoundedAway;
        } catch (const Error& e) {
            row.error = std::string(to_string(e.kind())) + ": " + e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

const char* to_string(FunctionFamily::Kind kind) noexcept {
    switch (kind) {
    case FunctionFamily::Kind::Shift: return "shift";
    case FunctionFamily::Kind::Scale: return "scale";
    case FunctionFamily::Kind::Identical: return "identical";
    }
    return "unknown";
}

FunctionFamily::Kind FunctionFamily::kind_from_string(const std::string& name) {
    for (auto k : {Kind::Shift, Kind::Scale, Kind::Identical})
        if (name == to_string(k)) return k;
    fail(ErrorKind::Identifier, "unknown function family '" + name + "'");
}

RealFunction FunctionFamily::member(Index n) const {
    if (n < 1) fail(ErrorKind::Parameter, "family index must be >= 1");
    const double x = static_cast<double>(n);
    switch (kind) {
    case Kind::Shift: return base.then_affine(1.0, 1.0 / x);
    case Kind::Scale: return base.then_affine(x / (x + 1.0), 0.0);
    case Kind::Identical: return base;
    }
    return base;
}

UniformLimitReport uniform_limit_probe(const FunctionFamily& family, const RealFunction& limit,
                                       const RealSequence& alpha, const LacunarySchedule& theta,
                                       const ToleranceConfig& cfg) {
    cfg.validate();
    if (family.indices.empty()) fail(ErrorKind::Parameter, "function family has no members");
    ClassifyOptions opts;
    opts.theta = theta;
    const Index h = horizon_of(alpha, cfg);
    auto preserves = [](const Verdict& in, const Verdict& out) {
        return !(in.state == VerdictState::NullConfirmed && out.state == VerdictState::BoundedAway);
    };

    UniformLimitReport report;
    report.input = classify_membership(alpha, SequenceClass::NthetaQC, opts, cfg);
    const auto limit_image = apply_pointwise(limit, alpha, h);
    report.limit_image = classify_membership(limit_image, SequenceClass::NthetaQC, opts, cfg);
    bool all_preserve = true;
    for (Index n : family.indices) {
        const auto fn = family.member(n);
        const auto image = apply_pointwise(fn, alpha, h);
        double gap = 0.0;
        for (Index k = 1; k <= h; ++k) gap = std::max(gap, std::fabs(image.eval(k) - limit_image.eval(k)));
        UniformLimitRow row{n, gap, classify_membership(image, SequenceClass::NthetaQC, opts, cfg)};
        all_preserve = all_preserve && preserves(report.input, row.image);
        report.members.push_back(std::move(row));
    }
    report.inconsistent = all_preserve && !preserves(report.input, report.limit_image);
    return report;
}

}  // namespace lacunary
