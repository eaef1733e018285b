#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lacunary {

using Index = std::int64_t;

/// Named numeric parameters of a sequence or function family.
using ParamMap = std::map<std::string, double>;

enum class SequenceKind { Catalog, Affine, Constant, FileBacked, Constructed, Derived };

const char* to_string(SequenceKind kind) noexcept;

/// A deterministic real sequence alpha_1, alpha_2, ..., alpha_{n_max}.
///
/// Indices are 1-based. The evaluator must be pure: evaluating the same
/// index twice yields bit-identical values. Copies share the evaluator.
class RealSequence {
public:
    using Evaluator = std::function<double(Index)>;

    RealSequence(std::string tag, SequenceKind kind, Evaluator eval, Index n_max,
                 double growth_bound, ParamMap params = {});

    /// Buffer-backed sequence; values[0] is alpha_1.
    static RealSequence from_values(std::string tag, SequenceKind kind, std::vector<double> values,
                                    double growth_bound, ParamMap params = {});

    /// Range-checked evaluation, throws ErrorKind::Range outside [1, n_max].
    double at(Index k) const;
    double operator()(Index k) const { return at(k); }

    /// Unchecked evaluation for hot loops that validated the range already.
    double eval(Index k) const { return (*eval_)(k); }

    /// alpha_first .. alpha_last inclusive.
    std::vector<double> materialize(Index first, Index last) const;

    const std::string& tag() const noexcept { return tag_; }
    SequenceKind kind() const noexcept { return kind_; }
    Index n_max() const noexcept { return n_max_; }
    double growth_bound() const noexcept { return growth_bound_; }
    const ParamMap& params() const noexcept { return params_; }

    /// Same evaluator, different declared domain (never larger than the current one
    /// unless the evaluator is known to extend).
    RealSequence with_n_max(Index n_max) const;
    RealSequence with_tag(std::string tag) const;

private:
    std::string tag_;
    SequenceKind kind_;
    std::shared_ptr<const Evaluator> eval_;
    Index n_max_;
    double growth_bound_;
    ParamMap params_;
};

/// Largest index handed to closed-form catalog members unless overridden
/// with the `n_max` parameter.
inline constexpr Index kCatalogDefaultNMax = Index{1} << 40;

/// Catalog identifiers:
///   sqrt, log10, ln, ln_ln, harmonic, double_harmonic, cos_6log, cos_pi_sqrt,
///   alternating [from_zero], constant [c], affine [a, b], square_indicator,
///   inverse, escape [start, step]
///
/// Notes on the class claims carried by the examples:
///   sqrt is quasi-Cauchy but not Cauchy; log10, ln, ln_ln, harmonic and
///   cos_6log are slowly oscillating but not Cauchy; cos_pi_sqrt and
///   double_harmonic are quasi-Cauchy but not slowly oscillating.
RealSequence make_catalog_sequence(const std::string& name, const ParamMap& params = {});

/// Known catalog identifiers, in documentation order.
const std::vector<std::string>& catalog_names();

/// Positional parameter names for a catalog identifier, used by the run-spec
/// syntax `name:p1:p2`. Throws for unknown names.
const std::vector<std::string>& catalog_param_names(const std::string& name);

/// Closed-form value of the harmonic number H_n.
double harmonic_number(Index n);

struct LoadedSequence {
    RealSequence sequence;
    std::vector<std::string> warnings;
};

/// Plain text, one value per line, optional header `# n_max=<int> growth=<float>`.
LoadedSequence parse_sequence_text(const std::string& text, const std::string& tag);
LoadedSequence load_sequence_file(const std::string& path);

/// Writes alpha_1..alpha_{n_max} with the header line.
std::string sequence_to_text(const RealSequence& seq);
void write_sequence_file(const RealSequence& seq, const std::string& path);

}  // namespace lacunary
