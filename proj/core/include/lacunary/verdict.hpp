#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lacunary/means.hpp"

namespace lacunary {

/// Finite-scale policy standing in for "the limit is 0".
struct ToleranceConfig {
    double eps_null = 1e-2;
    double delta_away = 1e-1;
    Index tail_window = 8;
    double decay_factor = 1.5;
    Index n_max = Index{1} << 20;
    Index r_max = 20;
    std::vector<double> lambda_grid{1.01, 1.02, 1.05, 1.1};
    std::vector<double> eps_grid{0.5, 0.1, 0.05};
    Index almost_shifts = 64;
    double abel_tolerance = 1e-10;

    /// Throws ErrorKind::Parameter when an invariant fails.
    void validate() const;
    bool operator==(const ToleranceConfig&) const = default;
};

enum class VerdictState { NullConfirmed, BoundedAway, Inconclusive };

const char* to_string(VerdictState state) noexcept;

struct Evidence {
    double tail_max = 0.0;
    double tail_min = 0.0;
    double decay_ratio = 0.0;  // first tail point / last tail point; +inf when the last is 0
    std::optional<std::pair<Index, Index>> witness;
};

struct Verdict {
    VerdictState state = VerdictState::Inconclusive;
    Evidence evidence;
    std::shared_ptr<const MeanProfile> profile;
};

/// Policy over the last tail_window profile values, BoundedAway checked first:
///   BoundedAway   if tail_min >= delta_away
///   NullConfirmed if tail_max <= eps_null and decay_ratio >= decay_factor
///   Inconclusive  otherwise.
Verdict null_verdict(const MeanProfile& profile, const ToleranceConfig& cfg);

/// Running sup from the right: value[i] = max_{j >= i} value[j].
MeanProfile tail_sup_envelope(const MeanProfile& profile);

}  // namespace lacunary
