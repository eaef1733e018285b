#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lacunary/sequence.hpp"

namespace lacunary {

/// Lacunary breakpoints 0 = k_0 < k_1 < ... < k_R.
///
/// Block r (1 <= r <= R) is I_r = (k_{r-1}, k_r] with length h_r = k_r - k_{r-1}.
/// The ratio q_r = k_r / k_{r-1} is defined for r >= 2 only, since k_0 = 0.
class LacunarySchedule {
public:
    /// Throws ErrorKind::Validation unless k[0] == 0, k is strictly increasing
    /// and has at least two blocks.
    explicit LacunarySchedule(std::vector<Index> k, std::string tag = "explicit");

    Index k(Index r) const { return k_.at(static_cast<std::size_t>(r)); }
    Index h(Index r) const { return k(r) - k(r - 1); }
    /// Throws ErrorKind::Parameter for r < 2.
    double q(Index r) const;

    Index r_max() const noexcept { return static_cast<Index>(k_.size()) - 1; }
    const std::vector<Index>& breakpoints() const noexcept { return k_; }
    const std::string& tag() const noexcept { return tag_; }

    /// Largest r <= r_max with k_r <= n, or 0 if none.
    Index blocks_within(Index n) const;

    /// Block index r with n in I_r.
    Index block_of(Index n) const;

    bool operator==(const LacunarySchedule& other) const { return k_ == other.k_; }

private:
    std::vector<Index> k_;
    std::string tag_;
};

enum class ScheduleFamily { Geometric, Power, Factorial, Explicit };

const char* to_string(ScheduleFamily family) noexcept;
ScheduleFamily schedule_family_from_string(const std::string& name);

/// geometric: k_r = ceil(ratio^r) (`ratio` > 1); power: k_r = r^p (`p` >= 2);
/// factorial: k_r = r!. Explicit lists go through make_explicit_schedule.
/// Overflowing int64 is a Range error.
LacunarySchedule make_lacunary_schedule(ScheduleFamily family, const ParamMap& params, Index r_max);
LacunarySchedule make_explicit_schedule(std::vector<Index> k);

struct ScheduleStats {
    std::vector<Index> h;      // h[i] = h_{i+1}
    std::vector<double> q;     // q[i] = q_{i+2}
    double tail_inf_q = 0.0;
    double tail_sup_q = 0.0;
    Index window = 0;
};

/// W must satisfy 1 <= W <= r_max - 1.
ScheduleStats schedule_stats(const LacunarySchedule& theta, Index window);

struct ScheduleValidationOptions {
    Index window = 0;                 // 0: a quarter of the q values, at least 1
    double growth_factor = 4.0;       // h trend: last-quarter mean / first-quarter mean
    double liminf_margin = 0.05;      // liminf flag: tail_inf_q > 1 + margin
    double limsup_trend_factor = 2.0; // q trend beyond this ratio reads as divergent
};

struct ScheduleDiagnostics {
    bool starts_at_zero = false;
    bool strictly_increasing = false;
    bool h_growing = false;
    double h_first_quarter_mean = 0.0;
    double h_last_quarter_mean = 0.0;
    bool liminf_gt_one = false;
    bool limsup_finite = false;
    std::optional<ScheduleStats> stats;
    std::vector<std::string> messages;

    bool structural_ok() const { return starts_at_zero && strictly_increasing; }
};

/// Diagnostics only; never throws for a constructed schedule.
ScheduleDiagnostics validate_schedule(const LacunarySchedule& theta,
                                      const ScheduleValidationOptions& options = {});

/// Diagnostics over a raw breakpoint list that may not form a valid schedule.
ScheduleDiagnostics validate_breakpoints(const std::vector<Index>& k,
                                         const ScheduleValidationOptions& options = {});

}  // namespace lacunary
