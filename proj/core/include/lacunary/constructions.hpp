#pragma once

#include <string>
#include <vector>

#include "lacunary/schedule.hpp"
#include "lacunary/sequence.hpp"

namespace lacunary {

/// Which selection rule produced a BlockSelection.
enum class SelectionMode {
    /// k_{r_j} / k_{r_j - 1} < 1 + 1/j, k_{r_j - 1} / k_{r_{j-1}} > j, r_j >= r_{j-1} + 2.
    CesaroGap,
    /// q_{r_j} > j and k_{r_j} > j + 3.
    BlockGap,
};

const char* to_string(SelectionMode mode) noexcept;

struct SelectionCheck {
    Index j = 0;
    Index r = 0;
    std::vector<std::string> conditions;  // human-readable record of each inequality
};

struct BlockSelection {
    SelectionMode mode = SelectionMode::CesaroGap;
    std::vector<Index> chosen;  // r_1 < r_2 < ... < r_J
    std::vector<SelectionCheck> log;

    /// Re-checks every recorded inequality in integer arithmetic.
    bool verify(const LacunarySchedule& theta) const;
};

struct Construction {
    RealSequence sequence;
    BlockSelection selection;
    std::vector<std::string> warnings;  // schedule precondition looks unmet
};

/// Buffer cap in values: LACUNARY_MAXMEM (bytes) / 8 when set, else 2^26.
Index construction_value_cap();

/// 1 on odd and 2 on even k inside the chosen blocks I_{r_j}, 0 elsewhere.
/// Greedy smallest admissible r_j with k_{r_0} := k_1. n_max = k_{r_J} + 1.
Construction cesaro_gap_counterexample(const LacunarySchedule& theta, Index blocks_wanted);

/// c on odd and 2c on even k in (k_{r_j - 1}, 2 k_{r_j - 1}], 0 elsewhere.
/// Greedy smallest admissible increasing r_j. n_max = k_{r_J} + 1.
Construction block_gap_counterexample(const LacunarySchedule& theta, double c, Index blocks_wanted);

/// alpha_1 = start, alpha_{n+1} = alpha_n + step with step > 1.
RealSequence unbounded_escape_sequence(double start, double step, Index n_max = kCatalogDefaultNMax);

}  // namespace lacunary
