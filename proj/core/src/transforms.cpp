#include "lacunary/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lacunary/compensated_sum.hpp"
#include "lacunary/error.hpp"
#include "lacunary/format.hpp"

namespace lacunary {

RealSequence forward_difference(const RealSequence& alpha) {
    if (alpha.n_max() < 2) fail(ErrorKind::Range, "forward difference of '" + alpha.tag() + "' needs n_max >= 2");
    auto src = alpha;
    return RealSequence(
        "diff(" + alpha.tag() + ")", SequenceKind::Derived,
        [src](Index k) { return src.eval(k + 1) - src.eval(k); }, alpha.n_max() - 1, alpha.growth_bound());
}

RealSequence second_difference(const RealSequence& alpha) {
    if (alpha.n_max() < 3) fail(ErrorKind::Range, "second difference of '" + alpha.tag() + "' needs n_max >= 3");
    auto src = alpha;
    return RealSequence(
        "diff2(" + alpha.tag() + ")", SequenceKind::Derived,
        [src](Index k) {
            const double a0 = src.eval(k);
            const double a1 = src.eval(k + 1);
            const double a2 = src.eval(k + 2);
            return (a2 - a1) - (a1 - a0);
        },
        alpha.n_max() - 2, alpha.growth_bound());
}

RealSequence interleave_pair(const RealSequence& alpha, const RealSequence& beta) {
    auto a = alpha;
    auto b = beta;
    const Index n = std::min(alpha.n_max(), beta.n_max());
    return RealSequence(
        "interleave(" + alpha.tag() + "," + beta.tag() + ")", SequenceKind::Derived,
        [a, b](Index k) { return (k % 2 == 1) ? a.eval((k + 1) / 2) : b.eval(k / 2); }, 2 * n,
        std::max(alpha.growth_bound(), beta.growth_bound()));
}

RealSequence linear_combination(double c, const RealSequence& alpha, double d, const RealSequence& beta) {
    auto a = alpha;
    auto b = beta;
    return RealSequence(
        "lin(" + alpha.tag() + "," + beta.tag() + ")", SequenceKind::Derived,
        [a, b, c, d](Index k) { return c * a.eval(k) + d * b.eval(k); }, std::min(alpha.n_max(), beta.n_max()),
        std::max(alpha.growth_bound(), beta.growth_bound()));
}

RealSequence scale(const RealSequence& alpha, double c) {
    auto a = alpha;
    return RealSequence(
        "scale(" + alpha.tag() + "," + format_double(c) + ")", SequenceKind::Derived,
        [a, c](Index k) { return c * a.eval(k); }, alpha.n_max(), alpha.growth_bound());
}

// --- functions -------------------------------------------------------------

RealFunction RealFunction::identity() { return RealFunction(Kind::Identity, "identity"); }
RealFunction RealFunction::square() { return RealFunction(Kind::Square, "square"); }
RealFunction RealFunction::abs() { return RealFunction(Kind::Abs, "abs"); }

RealFunction RealFunction::affine(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorKind::Parameter, "affine coefficients must be finite");
    RealFunction f(Kind::Affine, "affine");
    f.a_ = a;
    f.b_ = b;
    return f;
}

RealFunction RealFunction::reciprocal_shifted(double shift) {
    if (!std::isfinite(shift)) fail(ErrorKind::Parameter, "reciprocal shift must be finite");
    RealFunction f(Kind::ReciprocalShifted, "reciprocal");
    f.b_ = shift;
    return f;
}

RealFunction RealFunction::table(std::vector<std::pair<double, double>> points) {
    if (points.size() < 2) fail(ErrorKind::Parameter, "function table needs at least two points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!std::isfinite(points[i].first) || !std::isfinite(points[i].second))
            fail(ErrorKind::Parameter, "function table values must be finite");
        if (i > 0 && !(points[i].first > points[i - 1].first))
            fail(ErrorKind::Parameter, "function table abscissae must be strictly increasing");
    }
    RealFunction f(Kind::Table, "table");
    f.table_ = std::move(points);
    return f;
}

const std::vector<std::string>& RealFunction::names() {
    static const std::vector<std::string> n{"identity", "square", "abs", "affine", "reciprocal", "table"};
    return n;
}

RealFunction RealFunction::from_name(const std::string& name, const std::vector<double>& args) {
    auto want = [&](std::size_t n) {
        if (args.size() != n)
            fail(ErrorKind::Parameter, "function '" + name + "' takes " + std::to_string(n) + " parameter(s)");
    };
    if (name == "identity") { want(0); return identity(); }
    if (name == "square") { want(0); return square(); }
    if (name == "abs") { want(0); return abs(); }
    if (name == "affine") { want(2); return affine(args[0], args[1]); }
    if (name == "reciprocal") { want(1); return reciprocal_shifted(args[0]); }
    if (name == "table") {
        if (args.size() < 4 || args.size() % 2 != 0)
            fail(ErrorKind::Parameter, "table takes x0:y0:x1:y1[...] pairs");
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < args.size(); i += 2) pts.emplace_back(args[i], args[i + 1]);
        return table(std::move(pts));
    }
    fail(ErrorKind::Identifier, "unknown function '" + name + "'");
}

RealFunction RealFunction::then_affine(double s, double offset) const {
    RealFunction f = *this;
    f.outer_offset_ = s * outer_offset_ + offset;
    f.outer_scale_ = s * outer_scale_;
    return f;
}

bool RealFunction::defined_at(double x) const {
    switch (kind_) {
    case Kind::ReciprocalShifted: return x + b_ != 0.0;
    case Kind::Table: return x >= table_.front().first && x <= table_.back().first;
    default: return std::isfinite(x);
    }
}

double RealFunction::base(double x) const {
    switch (kind_) {
    case Kind::Identity: return x;
    case Kind::Square: return x * x;
    case Kind::Affine: return a_ * x + b_;
    case Kind::Abs: return std::fabs(x);
    case Kind::ReciprocalShifted: return 1.0 / (x + b_);
    case Kind::Table: {
        auto it = std::upper_bound(table_.begin(), table_.end(), x,
                                   [](double v, const auto& p) { return v < p.first; });
        if (it == table_.end()) return table_.back().second;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double t = (x - lo.first) / (hi.first - lo.first);
        return lo.second + t * (hi.second - lo.second);
    }
    }
    return x;
}

double RealFunction::operator()(double x) const {
    if (!defined_at(x)) fail(ErrorKind::Domain, describe() + " is undefined at " + format_double(x));
    const double y = base(x);
    if (outer_scale_ == 1.0 && outer_offset_ == 0.0) return y;
    return outer_scale_ * y + outer_offset_;
}

double RealFunction::image_growth(double g) const {
    switch (kind_) {
    case Kind::Identity:
    case Kind::Abs: return g;
    case Kind::Square: return 2.0 * g;
    case Kind::Affine: return a_ == 0.0 ? 0.0 : g;
    case Kind::ReciprocalShifted:
    case Kind::Table: return 0.0;
    }
    return g;
}

std::string RealFunction::describe() const {
    std::string s = name_;
    switch (kind_) {
    case Kind::Affine: s += ":" + format_double(a_) + ":" + format_double(b_); break;
    case Kind::ReciprocalShifted: s += ":" + format_double(b_); break;
    case Kind::Table:
        for (const auto& [x, y] : table_) s += ":" + format_double(x) + ":" + format_double(y);
        break;
    default: break;
    }
    if (outer_scale_ != 1.0 || outer_offset_ != 0.0)
        s = format_double(outer_scale_) + "*" + s + "+" + format_double(outer_offset_);
    return s;
}

RealSequence apply_pointwise(const RealFunction& f, const RealSequence& alpha, Index check_up_to) {
    constexpr Index kProbeCap = Index{1} << 22;
    const Index limit = std::min(check_up_to > 0 ? check_up_to : alpha.n_max(), std::min(alpha.n_max(), kProbeCap));
    if (f.kind() == RealFunction::Kind::ReciprocalShifted || f.kind() == RealFunction::Kind::Table) {
        for (Index k = 1; k <= limit; ++k) {
            const double x = alpha.eval(k);
            if (!f.defined_at(x))
                fail(ErrorKind::Domain, f.describe() + " is undefined at alpha_" + std::to_string(k) + " = " +
                                            format_double(x) + " of '" + alpha.tag() + "'");
        }
    }
    auto src = alpha;
    return RealSequence(
        f.describe() + "(" + alpha.tag() + ")", SequenceKind::Derived, [src, f](Index k) { return f(src.eval(k)); },
        alpha.n_max(), f.image_growth(alpha.growth_bound()));
}

// --- matrix methods ---------------------------------------------------------

MatrixMethod::MatrixMethod(std::string name, RowGenerator row, Index rows)
    : name_(std::move(name)), row_(std::move(row)), rows_(rows) {}

MatrixMethod MatrixMethod::identity() {
    return MatrixMethod("identity", [](Index n) { return std::vector<MatrixEntry>{{n, 1.0}}; });
}

MatrixMethod MatrixMethod::cesaro() {
    return MatrixMethod("cesaro", [](Index n) {
        std::vector<MatrixEntry> row;
        row.reserve(static_cast<std::size_t>(n));
        const double w = 1.0 / static_cast<double>(n);
        for (Index k = 1; k <= n; ++k) row.push_back({k, w});
        return row;
    });
}

MatrixMethod MatrixMethod::from_row_list(const std::string& text, std::string name) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::vector<MatrixEntry>> rows;
    Index last_n = 0, last_k = 0, line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::string sn, sk, sa, extra;
        fields >> sn >> sk >> sa;
        long long n = 0, k = 0;
        double a = 0.0;
        const auto where = name + ":" + std::to_string(line_no);
        if (!parse_int(sn, n) || !parse_int(sk, k) || !parse_double(sa, a) || (fields >> extra))
            fail(ErrorKind::Validation, where + ": expected 'n k a_nk'");
        if (n < 1 || k < 1 || !std::isfinite(a)) fail(ErrorKind::Validation, where + ": invalid entry");
        if (n < last_n || (n == last_n && k <= last_k))
            fail(ErrorKind::Validation, where + ": entries must ascend by n then k");
        if (static_cast<Index>(rows.size()) < n) rows.resize(static_cast<std::size_t>(n));
        rows[static_cast<std::size_t>(n - 1)].push_back({k, a});
        last_n = n;
        last_k = k;
    }
    auto shared = std::make_shared<const std::vector<std::vector<MatrixEntry>>>(std::move(rows));
    const auto count = static_cast<Index>(shared->size());
    return MatrixMethod(
        std::move(name), [shared](Index n) { return (*shared)[static_cast<std::size_t>(n - 1)]; }, count);
}

MatrixMethod MatrixMethod::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open matrix file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_row_list(buf.str(), path);
}

std::vector<MatrixEntry> MatrixMethod::row(Index n) const {
    if (n < 1 || (rows_ > 0 && n > rows_))
        fail(ErrorKind::Range, "matrix '" + name_ + "' has no row " + std::to_string(n));
    return row_(n);
}

std::vector<double> apply_matrix(const MatrixMethod& a, const RealSequence& alpha, Index n) {
    if (n < 0) fail(ErrorKind::Parameter, "row count must be non-negative");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    for (Index m = 1; m <= n; ++m) {
        CompensatedSum acc;
        for (const auto& [col, w] : a.row(m)) {
            if (col < 1 || col > alpha.n_max())
                fail(ErrorKind::Range, "matrix '" + a.name() + "' row " + std::to_string(m) + " references column " +
                                           std::to_string(col) + " beyond n_max of '" + alpha.tag() + "'");
            acc += w * alpha.eval(col);
        }
        out.push_back(acc.value());
    }
    return out;
}

}  // namespace lacunary
