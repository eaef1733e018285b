#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lacunary/sequence.hpp"

namespace lacunary {

/// (Delta alpha)_k = alpha_{k+1} - alpha_k, defined for 1 <= k <= n_max - 1.
RealSequence forward_difference(const RealSequence& alpha);

/// alpha_{k+2} - 2 alpha_{k+1} + alpha_k, computed as the difference of
/// differences so it agrees bit-for-bit with applying forward_difference twice.
RealSequence second_difference(const RealSequence& alpha);

/// (alpha_1, beta_1, alpha_2, beta_2, ...): index 2k-1 maps to alpha_k, 2k to beta_k.
RealSequence interleave_pair(const RealSequence& alpha, const RealSequence& beta);

/// Pointwise c * alpha + d * beta; both defined on the shorter domain.
RealSequence linear_combination(double c, const RealSequence& alpha, double d,
                                const RealSequence& beta);
RealSequence scale(const RealSequence& alpha, double c);

/// Closed catalog of real functions. User functions enter as piecewise-linear
/// tables with strictly increasing abscissae; outside the table is a domain error.
class RealFunction {
public:
    enum class Kind { Identity, Square, Affine, Abs, ReciprocalShifted, Table };

    static RealFunction identity();
    static RealFunction square();
    static RealFunction affine(double a, double b);
    static RealFunction abs();
    /// x -> 1 / (x + shift)
    static RealFunction reciprocal_shifted(double shift);
    static RealFunction table(std::vector<std::pair<double, double>> points);

    /// Resolves `identity`, `square`, `abs`, `affine` (a, b), `reciprocal` (shift).
    static RealFunction from_name(const std::string& name, const std::vector<double>& args = {});
    static const std::vector<std::string>& names();

    /// outer_scale * base(x) + outer_offset.
    RealFunction then_affine(double scale, double offset) const;

    /// Throws ErrorKind::Domain where undefined.
    double operator()(double x) const;
    bool defined_at(double x) const;

    /// Growth exponent of f(alpha_k) given alpha's exponent g.
    double image_growth(double g) const;

    Kind kind() const noexcept { return kind_; }
    const std::string& name() const noexcept { return name_; }
    /// Canonical textual form, e.g. "affine:2:1".
    std::string describe() const;

private:
    RealFunction(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}
    double base(double x) const;

    Kind kind_;
    std::string name_;
    double a_ = 1.0;
    double b_ = 0.0;
    std::vector<std::pair<double, double>> table_;
    double outer_scale_ = 1.0;
    double outer_offset_ = 0.0;
};

/// k -> f(alpha_k). Throws ErrorKind::Domain naming the first bad index within
/// `check_up_to` (0 means n_max, capped at 2^22 probes); later indices throw
/// on evaluation.
RealSequence apply_pointwise(const RealFunction& f, const RealSequence& alpha, Index check_up_to = 0);

/// Row generator for a summability matrix A = (a_nk).
struct MatrixEntry {
    Index column;
    double weight;
};

class MatrixMethod {
public:
    using RowGenerator = std::function<std::vector<MatrixEntry>(Index)>;

    /// `rows` is the number of rows the generator is valid for (0: unbounded).
    MatrixMethod(std::string name, RowGenerator row, Index rows = 0);

    static MatrixMethod identity();
    /// Cesaro C_1: row n has weight 1/n on columns 1..n.
    static MatrixMethod cesaro();
    /// Lines of `n k a_nk`, ascending n then k. Rows not mentioned are empty.
    static MatrixMethod from_row_list(const std::string& text, std::string name = "row-list");
    static MatrixMethod load(const std::string& path);

    /// Throws ErrorKind::Range beyond the declared row count.
    std::vector<MatrixEntry> row(Index n) const;
    const std::string& name() const noexcept { return name_; }
    Index rows() const noexcept { return rows_; }

private:
    std::string name_;
    RowGenerator row_;
    Index rows_;
};

/// First n entries of A alpha, each row accumulated with compensated summation.
std::vector<double> apply_matrix(const MatrixMethod& a, const RealSequence& alpha, Index n);

}  // namespace lacunary
