#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lacunary/schedule.hpp"
#include "lacunary/sequence.hpp"

namespace lacunary {

enum class ProfileKind {
    PrefixMean,
    StrongCesaro,
    NthetaBlock,
    StatDensity,
    AlmostSpread,
    AbelGrid,
    TailSup,       // sup_{k >= n} |alpha_k|, the finite null-sequence surrogate
    CauchySpread,  // windowed sup |alpha_m - alpha_n|
    SlowOscillation,
};

const char* to_string(ProfileKind kind) noexcept;

/// A series of computed mean values with the metadata needed to interpret it.
struct MeanProfile {
    ProfileKind kind = ProfileKind::PrefixMean;
    std::vector<double> index;  // n values, block indices r, or an x grid
    std::vector<double> value;
    double center = 0.0;
    std::optional<std::string> schedule_tag;
    std::map<std::string, double> meta;

    std::size_t size() const noexcept { return value.size(); }

    std::string to_csv() const;
    /// JSON object text: kind, center, schedule_tag, meta, index, value.
    std::string to_json() const;
};

/// Half-octave ladder ending at `horizon`: floor(horizon / 2^(i/2)) for i = 2 count .. 0,
/// deduplicated and clipped to >= 1.
std::vector<Index> checkpoint_ladder(Index horizon, int count = 10);

/// (1/n) sum_{k<=n} alpha_k at each checkpoint.
MeanProfile prefix_mean(const RealSequence& alpha, const std::vector<Index>& checkpoints);

/// (1/n) sum_{i<=n} |alpha_i - center| at each checkpoint.
MeanProfile strong_cesaro_deviation(const RealSequence& alpha, double center,
                                    const std::vector<Index>& checkpoints);

/// t_r = (1/h_r) sum_{k in I_r} |alpha_k - center| for r = 1..blocks, one streaming pass.
MeanProfile ntheta_block_means(const RealSequence& alpha, double center,
                               const LacunarySchedule& theta, Index blocks);

/// #{k <= n : |alpha_k - center| >= eps} / n at each checkpoint. meta["count@n"] is not
/// stored; exact counts are available through statistical_exceed_counts.
MeanProfile statistical_exceed_density(const RealSequence& alpha, double center, double eps,
                                       const std::vector<Index>& checkpoints);
std::vector<Index> statistical_exceed_counts(const RealSequence& alpha, double center, double eps,
                                             const std::vector<Index>& checkpoints);

/// Window means (1/n) sum_{k=1}^{n} alpha_{k+j} for j = 0..shifts; index holds j.
/// meta: "n", "spread" (max - min), "max_abs".
/// With `absolute` the summands are |alpha_{k+j}|.
MeanProfile almost_window_spread(const RealSequence& alpha, Index n, Index shifts,
                                 bool absolute = false);

struct AbelResult {
    double value = 0.0;
    Index terms = 0;          // K + 1 terms summed (Abel indices 0..K)
    double tail_bound = 0.0;  // bound on the neglected tail, times (1 - x)
    double growth_constant = 0.0;
};

/// (1 - x) sum_{j=0}^{K} alpha_{j+1} x^j with K chosen so the declared growth bound
/// certifies the neglected tail is at most tail_tolerance.
AbelResult abel_value(const RealSequence& alpha, double x, double tail_tolerance = 1e-10);

/// Growth constant C = 1.1 * max_{k <= min(10^4, n_max)} |alpha_k| / k^g.
double estimate_growth_constant(const RealSequence& alpha);

}  // namespace lacunary
