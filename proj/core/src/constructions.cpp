#include "lacunary/constructions.hpp"

#include <cmath>
#include <cstdlib>

#include "lacunary/error.hpp"
#include "lacunary/format.hpp"

namespace lacunary {

namespace {

__extension__ typedef __int128 Wide;

std::string ratio_text(Index num, Index den) { return std::to_string(num) + "/" + std::to_string(den); }

std::vector<double> allocate(Index n_max) {
    const Index cap = construction_value_cap();
    if (n_max > cap)
        fail(ErrorKind::Construction, "construction needs " + std::to_string(n_max) + " values, above the cap of " +
                                          std::to_string(cap) + " (set LACUNARY_MAXMEM to raise it)");
    return std::vector<double>(static_cast<std::size_t>(n_max), 0.0);
}

// Selection rules, shared by the greedy scan and verify().
bool cesaro_gap_ok(const LacunarySchedule& t, Index j, Index r, Index prev_r) {
    if (r < prev_r + 2 || r < 2) return false;
    const Wide kr = t.k(r), kr1 = t.k(r - 1), kprev = t.k(prev_r);
    return kr * j < (j + 1) * kr1 && kr1 > static_cast<Wide>(j) * kprev;
}

bool block_gap_ok(const LacunarySchedule& t, Index j, Index r, Index prev_r) {
    if (r <= prev_r || r < 2) return false;
    const Wide kr = t.k(r), kr1 = t.k(r - 1);
    return kr > static_cast<Wide>(j) * kr1 && kr > static_cast<Wide>(j) + 3;
}

}  // namespace

const char* to_string(SelectionMode mode) noexcept {
    switch (mode) {
    case SelectionMode::CesaroGap: return "cesaro-gap";
    case SelectionMode::BlockGap: return "block-gap";
    }
    return "unknown";
}

Index construction_value_cap() {
    if (const char* env = std::getenv("LACUNARY_MAXMEM")) {
        long long bytes = 0;
        if (parse_int(env, bytes) && bytes >= 8) return static_cast<Index>(bytes / 8);
    }
    return Index{1} << 26;
}

bool BlockSelection::verify(const LacunarySchedule& theta) const {
    Index prev = 1;
    for (std::size_t i = 0; i < chosen.size(); ++i) {
        const auto j = static_cast<Index>(i + 1);
        const Index r = chosen[i];
        if (r > theta.r_max()) return false;
        const bool ok = mode == SelectionMode::CesaroGap ? cesaro_gap_ok(theta, j, r, prev) : block_gap_ok(theta, j, r, prev);
        if (!ok) return false;
        if (mode == SelectionMode::BlockGap && 2 * theta.k(r - 1) > theta.k(r)) return false;
        prev = r;
    }
    return true;
}

Construction cesaro_gap_counterexample(const LacunarySchedule& theta, Index blocks_wanted) {
    if (blocks_wanted < 1) fail(ErrorKind::Parameter, "construction needs J >= 1");
    BlockSelection sel;
    sel.mode = SelectionMode::CesaroGap;
    Index prev = 1;  // k_{r_0} := k_1
    for (Index j = 1; j <= blocks_wanted; ++j) {
        Index r = prev + 2;
        while (r <= theta.r_max() && !cesaro_gap_ok(theta, j, r, prev)) ++r;
        if (r > theta.r_max())
            fail(ErrorKind::Construction, "no admissible block for j=" + std::to_string(j) + " within R_max=" +
                                              std::to_string(theta.r_max()) + " of '" + theta.tag() + "'");
        SelectionCheck check{j, r, {}};
        check.conditions.push_back("k[r]/k[r-1] = " + ratio_text(theta.k(r), theta.k(r - 1)) + " < 1 + 1/" + std::to_string(j));
        check.conditions.push_back("k[r-1]/k[r_prev] = " + ratio_text(theta.k(r - 1), theta.k(prev)) + " > " + std::to_string(j));
        check.conditions.push_back("r = " + std::to_string(r) + " >= r_prev + 2 = " + std::to_string(prev + 2));
        sel.log.push_back(std::move(check));
        sel.chosen.push_back(r);
        prev = r;
    }

    const Index n_max = theta.k(sel.chosen.back()) + 1;
    auto values = allocate(n_max);
    for (Index r : sel.chosen)
        for (Index k = theta.k(r - 1) + 1; k <= theta.k(r); ++k)
            values[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? 2.0 : 1.0;

    std::vector<std::string> warnings;
    if (validate_schedule(theta).liminf_gt_one)
        warnings.push_back("schedule '" + theta.tag() + "' has tail inf q_r bounded away from 1");
    return {RealSequence::from_values("cesaro-gap(" + theta.tag() + ",J=" + std::to_string(blocks_wanted) + ")",
                                      SequenceKind::Constructed, std::move(values), 0.0),
            std::move(sel), std::move(warnings)};
}

Construction block_gap_counterexample(const LacunarySchedule& theta, double c, Index blocks_wanted) {
    if (blocks_wanted < 1) fail(ErrorKind::Parameter, "construction needs J >= 1");
    if (!(c > 0.0) || !std::isfinite(c)) fail(ErrorKind::Parameter, "construction needs a finite c > 0");
    BlockSelection sel;
    sel.mode = SelectionMode::BlockGap;
    Index prev = 1;
    for (Index j = 1; j <= blocks_wanted; ++j) {
        Index r = std::max<Index>(2, prev + 1);
        while (r <= theta.r_max() && !block_gap_ok(theta, j, r, prev)) ++r;
        if (r > theta.r_max())
            fail(ErrorKind::Construction, "no admissible block for j=" + std::to_string(j) + " within R_max=" +
                                              std::to_string(theta.r_max()) + " of '" + theta.tag() + "'");
        if (2 * theta.k(r - 1) > theta.k(r))
            fail(ErrorKind::Construction, "selected block r=" + std::to_string(r) + " for j=" + std::to_string(j) +
                                              " has 2 k[r-1] > k[r]");
        SelectionCheck check{j, r, {}};
        check.conditions.push_back("q_r = " + ratio_text(theta.k(r), theta.k(r - 1)) + " > " + std::to_string(j));
        check.conditions.push_back("k[r] = " + std::to_string(theta.k(r)) + " > " + std::to_string(j + 3));
        sel.log.push_back(std::move(check));
        sel.chosen.push_back(r);
        prev = r;
    }

    const Index n_max = theta.k(sel.chosen.back()) + 1;
    auto values = allocate(n_max);
    for (Index r : sel.chosen)
        for (Index k = theta.k(r - 1) + 1; k <= 2 * theta.k(r - 1); ++k)
            values[static_cast<std::size_t>(k - 1)] = (k % 2 == 0) ? 2.0 * c : c;

    std::vector<std::string> warnings;
    if (validate_schedule(theta).limsup_finite)
        warnings.push_back("schedule '" + theta.tag() + "' shows no unbounded growth of q_r");
    return {RealSequence::from_values("block-gap(" + theta.tag() + ",c=" + format_double(c) + ",J=" +
                                          std::to_string(blocks_wanted) + ")",
                                      SequenceKind::Constructed, std::move(values), 0.0, {{"c", c}}),
            std::move(sel), std::move(warnings)};
}

RealSequence unbounded_escape_sequence(double start, double step, Index n_max) {
    if (!std::isfinite(start) || !std::isfinite(step)) fail(ErrorKind::Parameter, "escape parameters must be finite");
    if (!(step > 1.0)) fail(ErrorKind::Parameter, "escape step must be > 1");
    return make_catalog_sequence("escape", {{"start", start}, {"step", step}, {"n_max", static_cast<double>(n_max)}});
}

}  // namespace lacunary
