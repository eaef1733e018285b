#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lacunary/schedule.hpp"
#include "lacunary/transforms.hpp"
#include "lacunary/verdict.hpp"

namespace lacunary {

enum class SequenceClass {
    QuasiCauchy,         // Delta alpha -> 0
    DeltaQuasiCauchy,    // Delta^2 alpha -> 0
    StatisticalQC,       // st-lim Delta alpha = 0
    StrongCesaroQC,      // (1/n) sum |Delta alpha_i| -> 0
    NthetaQC,            // N_theta-lim Delta alpha = 0
    NthetaConvergent,    // N_theta-lim alpha = l
    StrongCesaro,        // (1/n) sum |alpha_i - l| -> 0
    Statistical,         // st-lim alpha = l
    Abel,                // (1 - x) sum alpha_k x^k -> l
    AlmostQC,            // shifted means of -Delta alpha -> 0 uniformly in the shift
    AlmostConvergent,    // shifted means of alpha -> l uniformly in the shift
    Cauchy,              // windowed surrogate
    SlowlyOscillating,
};

const char* to_string(SequenceClass cls) noexcept;
SequenceClass sequence_class_from_string(const std::string& tag);
const std::vector<SequenceClass>& all_sequence_classes();
bool needs_schedule(SequenceClass cls) noexcept;
bool needs_center(SequenceClass cls) noexcept;

struct ClassifyOptions {
    std::optional<LacunarySchedule> theta;
    std::optional<double> center;  // defaults to the last prefix mean
    bool almost_absolute = false;  // |Delta| inside the almost-QC window sums
    std::optional<std::vector<Index>> checkpoints;
};

/// Builds the class's profile, takes its tail-sup envelope and applies null_verdict.
/// Throws ErrorKind::Parameter when theta is required but absent.
Verdict classify_membership(const RealSequence& alpha, SequenceClass cls,
                            const ClassifyOptions& options, const ToleranceConfig& cfg);

/// M(lambda) = max over tail base points n of max_{n < k <= floor(lambda n)} |alpha_k - alpha_n|.
/// Profile index holds lambda in increasing order.
Verdict slow_oscillation_profile(const RealSequence& alpha, const ToleranceConfig& cfg);

struct InclusionRow {
    std::string sequence;
    std::optional<Verdict> cesaro_qc;
    std::optional<Verdict> ntheta_qc;
    std::string error;
    /// A row contradicting an inclusion the schedule's ratios guarantee.
    bool violation = false;
    std::string violation_detail;
    /// Block class refuted while the Cesaro class is not, on a schedule with liminf q = 1.
    bool necessity_separation = false;
};

struct InclusionReport {
    ScheduleDiagnostics schedule;
    std::vector<InclusionRow> rows;
    std::size_t violations() const;
};

/// Rows for |Delta sigma_1^0| and Delta N_theta^0 membership of each sequence.
InclusionReport inclusion_report(const std::vector<RealSequence>& families,
                                 const LacunarySchedule& theta, const ToleranceConfig& cfg);

struct WardRow {
    std::string sequence;
    std::optional<Verdict> input;
    std::optional<Verdict> image;
    std::string error;
    bool violation = false;
};

struct WardReport {
    std::string function;
    std::vector<WardRow> rows;
    std::size_t violations() const;
};

/// Records a violation when alpha reads NullConfirmed for Delta N_theta^0 and f(alpha) BoundedAway.
WardReport ward_continuity_probe(const RealFunction& f, const std::vector<RealSequence>& families,
                                 const LacunarySchedule& theta, const ToleranceConfig& cfg);

/// A finite family f_n, n in `indices`, meant to converge uniformly to a limit function.
struct FunctionFamily {
    enum class Kind { Shift, Scale, Identical };
    Kind kind = Kind::Shift;
    RealFunction base = RealFunction::identity();
    std::vector<Index> indices{1, 2, 4, 8, 16};

    /// Shift: base + 1/n; Scale: base * n / (n + 1); Identical: base.
    RealFunction member(Index n) const;
    static Kind kind_from_string(const std::string& name);
};

const char* to_string(FunctionFamily::Kind kind) noexcept;

struct UniformLimitRow {
    Index n = 0;
    double uniform_gap = 0.0;
    Verdict image;
};

struct UniformLimitReport {
    Verdict input;
    std::vector<UniformLimitRow> members;
    Verdict limit_image;
    /// Every f_n preserved the input's verdict but the limit did not.
    bool inconsistent = false;
};

UniformLimitReport uniform_limit_probe(const FunctionFamily& family, const RealFunction& limit,
                                       const RealSequence& alpha, const LacunarySchedule& theta,
                                       const ToleranceConfig& cfg);

}  // namespace lacunary
