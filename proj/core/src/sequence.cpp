#include "lacunary/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "lacunary/error.hpp"
#include "lacunary/format.hpp"

namespace lacunary {

const char* to_string(SequenceKind kind) noexcept {
    switch (kind) {
    case SequenceKind::Catalog: return "catalog";
    case SequenceKind::Affine: return "affine";
    case SequenceKind::Constant: return "constant";
    case SequenceKind::FileBacked: return "file";
    case SequenceKind::Constructed: return "constructed";
    case SequenceKind::Derived: return "derived";
    }
    return "unknown";
}

RealSequence::RealSequence(std::string tag, SequenceKind kind, Evaluator eval, Index n_max,
                           double growth_bound, ParamMap params)
    : tag_(std::move(tag)),
      kind_(kind),
      eval_(std::make_shared<const Evaluator>(std::move(eval))),
      n_max_(n_max),
      growth_bound_(growth_bound),
      params_(std::move(params)) {
    if (n_max_ < 1) fail(ErrorKind::Parameter, "sequence '" + tag_ + "' must have n_max >= 1");
}

RealSequence RealSequence::from_values(std::string tag, SequenceKind kind, std::vector<double> values,
                                       double growth_bound, ParamMap params) {
    const auto n = static_cast<Index>(values.size());
    auto buf = std::make_shared<const std::vector<double>>(std::move(values));
    return RealSequence(
        std::move(tag), kind, [buf](Index k) { return (*buf)[static_cast<std::size_t>(k - 1)]; }, n,
        growth_bound, std::move(params));
}

double RealSequence::at(Index k) const {
    if (k < 1 || k > n_max_)
        fail(ErrorKind::Range, "index " + std::to_string(k) + " outside [1, " + std::to_string(n_max_) +
                                   "] of sequence '" + tag_ + "'");
    return (*eval_)(k);
}

std::vector<double> RealSequence::materialize(Index first, Index last) const {
    if (first < 1 || last > n_max_ || first > last + 1)
        fail(ErrorKind::Range, "cannot materialize [" + std::to_string(first) + ", " + std::to_string(last) +
                                   "] of sequence '" + tag_ + "'");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(last - first + 1));
    for (Index k = first; k <= last; ++k) out.push_back((*eval_)(k));
    return out;
}

RealSequence RealSequence::with_n_max(Index n_max) const {
    RealSequence copy = *this;
    if (n_max < 1) fail(ErrorKind::Parameter, "n_max must be >= 1");
    copy.n_max_ = n_max;
    return copy;
}

RealSequence RealSequence::with_tag(std::string tag) const {
    RealSequence copy = *this;
    copy.tag_ = std::move(tag);
    return copy;
}

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr Index kExactHarmonicBelow = 64;

// sum_{k<=n} 1/k^2
double harmonic2(Index n) {
    if (n < kExactHarmonicBelow) {
        double s = 0.0;
        for (Index k = n; k >= 1; --k) s += 1.0 / (static_cast<double>(k) * static_cast<double>(k));
        return s;
    }
    const double x = static_cast<double>(n);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // pi^2/6 - 1/n + 1/(2n^2) - 1/(6n^3) + 1/(30n^5) - 1/(42n^7)
    return std::numbers::pi * std::numbers::pi / 6.0 -
           inv * (1.0 - inv * (0.5 - inv * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 / 42.0))));
}

double param_or(const ParamMap& params, const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

double require_param(const ParamMap& params, const std::string& key, const std::string& name) {
    auto it = params.find(key);
    if (it == params.end())
        fail(ErrorKind::Parameter, "catalog sequence '" + name + "' requires parameter '" + key + "'");
    if (!std::isfinite(it->second))
        fail(ErrorKind::Parameter, "parameter '" + key + "' of '" + name + "' must be finite");
    return it->second;
}

struct CatalogEntry {
    std::vector<std::string> params;
};

const std::vector<std::string>& ordered_names() {
    static const std::vector<std::string> names{
        "sqrt",        "log10",       "ln",          "ln_ln",    "harmonic",
        "double_harmonic", "cos_6log", "cos_pi_sqrt", "alternating", "constant",
        "affine",      "square_indicator", "inverse", "escape"};
    return names;
}

const std::unordered_map<std::string, CatalogEntry>& entries() {
    static const std::unordered_map<std::string, CatalogEntry> table{
        {"sqrt", {}},
        {"log10", {}},
        {"ln", {}},
        {"ln_ln", {}},
        {"harmonic", {}},
        {"double_harmonic", {}},
        {"cos_6log", {}},
        {"cos_pi_sqrt", {}},
        {"alternating", {{"from_zero"}}},
        {"constant", {{"c"}}},
        {"affine", {{"a", "b"}}},
        {"square_indicator", {}},
        {"inverse", {}},
        {"escape", {{"start", "step"}}},
    };
    return table;
}

}  // namespace

double harmonic_number(Index n) {
    if (n < 1) return 0.0;
    if (n < kExactHarmonicBelow) {
        double s = 0.0;
        for (Index k = n; k >= 1; --k) s += 1.0 / static_cast<double>(k);
        return s;
    }
    const double x = static_cast<double>(n);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // ln n + gamma + 1/(2n) - 1/(12n^2) + 1/(120n^4) - 1/(252n^6) + 1/(240n^8)
    return std::log(x) + kEulerGamma + 0.5 * inv -
           inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
}

const std::vector<std::string>& catalog_names() { return ordered_names(); }

const std::vector<std::string>& catalog_param_names(const std::string& name) {
    auto it = entries().find(name);
    if (it == entries().end()) fail(ErrorKind::Identifier, "unknown catalog sequence '" + name + "'");
    return it->second.params;
}

RealSequence make_catalog_sequence(const std::string& name, const ParamMap& params) {
    const auto& allowed = catalog_param_names(name);
    for (const auto& [key, value] : params) {
        if (key == "n_max") continue;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            fail(ErrorKind::Parameter, "catalog sequence '" + name + "' has no parameter '" + key + "'");
        if (!std::isfinite(value))
            fail(ErrorKind::Parameter, "parameter '" + key + "' of '" + name + "' must be finite");
    }
    const double n_max_param = param_or(params, "n_max", static_cast<double>(kCatalogDefaultNMax));
    if (!(n_max_param >= 1.0) || n_max_param > 9.0e18 || n_max_param != std::floor(n_max_param))
        fail(ErrorKind::Parameter, "n_max of '" + name + "' must be a positive integer");
    const auto n_max = static_cast<Index>(n_max_param);
    auto make = [&](RealSequence::Evaluator f, double g, SequenceKind kind = SequenceKind::Catalog) {
        return RealSequence(name, kind, std::move(f), n_max, g, params);
    };
    auto d = [](Index k) { return static_cast<double>(k); };

    if (name == "sqrt") return make([d](Index k) { return std::sqrt(d(k)); }, 0.5);
    if (name == "log10") return make([d](Index k) { return std::log10(d(k)); }, 0.5);
    if (name == "ln") return make([d](Index k) { return std::log(d(k)); }, 0.5);
    if (name == "ln_ln") return make([d](Index k) { return std::log(std::log(d(k) + 2.0)); }, 0.5);
    if (name == "harmonic") return make([](Index k) { return harmonic_number(k); }, 0.5);
    if (name == "double_harmonic")
        return make(
            [](Index k) {
                const double h = harmonic_number(k);
                return 0.5 * (h * h + harmonic2(k));
            },
            0.5);
    if (name == "cos_6log") return make([d](Index k) { return std::cos(6.0 * std::log(d(k) + 1.0)); }, 0.0);
    if (name == "cos_pi_sqrt")
        return make([d](Index k) { return std::cos(std::numbers::pi * std::sqrt(d(k))); }, 0.0);
    if (name == "alternating") {
        const double from_zero = param_or(params, "from_zero", 0.0);
        if (from_zero != 0.0 && from_zero != 1.0)
            fail(ErrorKind::Parameter, "alternating: from_zero must be 0 or 1");
        const Index shift = from_zero == 1.0 ? 1 : 0;
        return make([shift](Index k) { return ((k - shift) % 2 == 0) ? 1.0 : -1.0; }, 0.0);
    }
    if (name == "constant") {
        const double c = require_param(params, "c", name);
        return make([c](Index) { return c; }, 0.0, SequenceKind::Constant);
    }
    if (name == "affine") {
        const double a = require_param(params, "a", name);
        const double b = require_param(params, "b", name);
        return make([a, b, d](Index k) { return a * d(k) + b; }, a == 0.0 ? 0.0 : 1.0, SequenceKind::Affine);
    }
    if (name == "square_indicator")
        return make(
            [](Index k) {
                auto r = static_cast<Index>(std::sqrt(static_cast<double>(k)));
                while (r * r > k) --r;
                while ((r + 1) * (r + 1) <= k) ++r;
                return r * r == k ? 1.0 : 0.0;
            },
            0.0);
    if (name == "inverse") return make([d](Index k) { return 1.0 / d(k); }, 0.0);
    if (name == "escape") {
        const double start = require_param(params, "start", name);
        const double step = require_param(params, "step", name);
        if (!(step > 1.0)) fail(ErrorKind::Parameter, "escape: step must be > 1");
        return make([start, step, d](Index k) { return start + d(k - 1) * step; }, 1.0, SequenceKind::Constructed);
    }
    fail(ErrorKind::Identifier, "unknown catalog sequence '" + name + "'");
}

LoadedSequence parse_sequence_text(const std::string& text, const std::string& tag) {
    std::istringstream in(text);
    std::string line;
    std::vector<double> values;
    std::vector<std::string> warnings;
    long long declared_n = -1;
    double growth = -1.0;
    bool have_growth = false;
    Index line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::istringstream hdr(line.substr(first + 1));
            std::string field;
            while (hdr >> field) {
                const auto eq = field.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = field.substr(0, eq);
                const std::string val = field.substr(eq + 1);
                if (key == "n_max") {
                    if (!parse_int(val, declared_n) || declared_n < 1)
                        fail(ErrorKind::Validation, tag + ":" + std::to_string(line_no) + ": bad n_max '" + val + "'");
                } else if (key == "growth") {
                    if (!parse_double(val, growth) || !std::isfinite(growth) || growth < 0.0)
                        fail(ErrorKind::Validation, tag + ":" + std::to_string(line_no) + ": bad growth '" + val + "'");
                    have_growth = true;
                }
            }
            continue;
        }
        const auto last = line.find_last_not_of(" \t");
        double v = 0.0;
        if (!parse_double(line.substr(first, last - first + 1), v) || !std::isfinite(v))
            fail(ErrorKind::Validation, tag + ":" + std::to_string(line_no) + ": not a finite decimal value");
        values.push_back(v);
    }
    if (values.empty()) fail(ErrorKind::Validation, tag + ": no values");
    if (declared_n < 0) {
        warnings.push_back(tag + ": header has no n_max; using the value count " + std::to_string(values.size()));
        declared_n = static_cast<long long>(values.size());
    }
    if (declared_n > static_cast<long long>(values.size()))
        fail(ErrorKind::Validation, tag + ": header declares n_max=" + std::to_string(declared_n) + " but only " +
                                        std::to_string(values.size()) + " values follow");
    values.resize(static_cast<std::size_t>(declared_n));
    if (!have_growth) {
        warnings.push_back(tag + ": header has no growth bound; assuming growth=1");
        growth = 1.0;
    }
    return {RealSequence::from_values(tag, SequenceKind::FileBacked, std::move(values), growth), std::move(warnings)};
}

LoadedSequence load_sequence_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open sequence file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_sequence_text(buf.str(), path);
}

std::string sequence_to_text(const RealSequence& seq) {
    std::string out = "# n_max=" + std::to_string(seq.n_max()) + " growth=" + format_double(seq.growth_bound()) + "\n";
    for (Index k = 1; k <= seq.n_max(); ++k) {
        out += format_double(seq.eval(k));
        out += '\n';
    }
    return out;
}

void write_sequence_file(const RealSequence& seq, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write sequence file '" + path + "'");
    out << sequence_to_text(seq);
    if (!out) fail(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace lacunary
