#include "lacunary_app/run_spec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "lacunary/error.hpp"
#include "lacunary/format.hpp"
#include "lacunary/sequence.hpp"
#include "lacunary/transforms.hpp"

namespace lacunary::app {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double to_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    if (!parse_double(trim(text), v)) fail(ErrorKind::Syntax, "key '" + key + "': '" + text + "' is not a number");
    if (!std::isfinite(v)) fail(ErrorKind::Parameter, "key '" + key + "': value must be finite");
    return v;
}

Index to_index(const std::string& key, const std::string& text) {
    long long v = 0;
    if (!parse_int(trim(text), v)) fail(ErrorKind::Syntax, "key '" + key + "': '" + text + "' is not an integer");
    return v;
}

std::vector<double> to_reals(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split(text, ',')) out.push_back(to_real(key, part));
    return out;
}

std::vector<Index> to_indices(const std::string& key, const std::string& text) {
    std::vector<Index> out;
    for (const auto& part : split(text, ',')) out.push_back(to_index(key, part));
    return out;
}

template <class T>
std::string join(const std::vector<T>& v, const std::function<std::string(const T&)>& f, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += f(v[i]);
    }
    return out;
}

std::string reals_text(const std::vector<double>& v) {
    return join<double>(v, [](const double& x) { return format_double(x); });
}
std::string indices_text(const std::vector<Index>& v) {
    return join<Index>(v, [](const Index& x) { return std::to_string(x); });
}

const std::set<std::string>& construction_names() {
    static const std::set<std::string> n{"cesaro-gap", "block-gap", "escape"};
    return n;
}

const std::set<std::string>& mean_names() {
    static const std::set<std::string> n{"prefix", "strong_cesaro", "ntheta", "stat_density", "almost", "abel"};
    return n;
}

const std::vector<std::string>& family_list() {
    static const std::vector<std::string> n{"catalog", "catalog-qc"};
    return n;
}

struct KeySet {
    std::set<std::string> seen;
};

void set_once(KeySet* seen, const std::string& key, int line) {
    if (!seen) return;
    if (!seen->seen.insert(key).second)
        fail(ErrorKind::Validation, "line " + std::to_string(line) + ": key '" + key + "' given more than once");
}

void apply(RunSpec& spec, const std::string& key, const std::string& raw, int line, KeySet* seen) {
    const std::string value = trim(raw);
    auto once = [&] { set_once(seen, key, line); };
    auto& cfg = spec.cfg;
    if (key == "command") { once(); spec.command = command_from_string(value); }
    else if (key == "sequence") {
        for (const auto& part : split(value, ','))
            if (!trim(part).empty()) spec.sequences.push_back(SequenceSpec::parse(trim(part)));
    }
    else if (key == "family") {
        if (std::find(family_list().begin(), family_list().end(), value) == family_list().end())
            fail(ErrorKind::Identifier, "unknown family '" + value + "'");
        spec.families.push_back(value);
    }
    else if (key == "theta") { once(); spec.theta = ScheduleSpec::parse(value); }
    else if (key == "class") {
        for (const auto& part : split(value, ','))
            if (!trim(part).empty()) spec.classes.push_back(sequence_class_from_string(trim(part)));
    }
    else if (key == "center") { once(); spec.center = to_real(key, value); }
    else if (key == "checkpoints") { once(); spec.checkpoints = to_indices(key, value); }
    else if (key == "almost_abs") {
        once();
        const Index v = to_index(key, value);
        if (v != 0 && v != 1) fail(ErrorKind::Parameter, "almost_abs must be 0 or 1");
        spec.almost_abs = v == 1;
    }
    else if (key == "mean") {
        once();
        if (!mean_names().count(value)) fail(ErrorKind::Identifier, "unknown mean '" + value + "'");
        spec.mean = value;
    }
    else if (key == "difference") {
        once();
        spec.difference = to_index(key, value);
        if (spec.difference < 0 || spec.difference > 2) fail(ErrorKind::Parameter, "difference must be 0, 1 or 2");
    }
    else if (key == "epsilon") { once(); spec.epsilon = to_real(key, value); }
    else if (key == "x") { once(); spec.x_grid = to_reals(key, value); }
    else if (key == "window_n") { once(); spec.window_n = to_index(key, value); }
    else if (key == "shifts") { once(); spec.shifts = to_index(key, value); }
    else if (key == "probe") {
        once();
        if (value != "ward" && value != "uniform") fail(ErrorKind::Identifier, "unknown probe '" + value + "'");
        spec.probe = value;
    }
    else if (key == "function") { once(); spec.function = FunctionSpec::parse(value); }
    else if (key == "family_kind") {
        once();
        FunctionFamily::kind_from_string(value);
        spec.family_kind = value;
    }
    else if (key == "family_indices") { once(); spec.family_indices = to_indices(key, value); }
    else if (key == "construction") {
        once();
        if (!construction_names().count(value)) fail(ErrorKind::Identifier, "unknown construction '" + value + "'");
        spec.construction = value;
    }
    else if (key == "blocks") { once(); spec.blocks = to_index(key, value); }
    else if (key == "c") { once(); spec.c = to_real(key, value); }
    else if (key == "start") { once(); spec.start = to_real(key, value); }
    else if (key == "step") { once(); spec.step = to_real(key, value); }
    else if (key == "export") { once(); spec.export_path = value; }
    else if (key == "window") { once(); spec.window = to_index(key, value); }
    else if (key == "eps_null") { once(); cfg.eps_null = to_real(key, value); }
    else if (key == "delta_away") { once(); cfg.delta_away = to_real(key, value); }
    else if (key == "tail_window") { once(); cfg.tail_window = to_index(key, value); }
    else if (key == "decay_factor") { once(); cfg.decay_factor = to_real(key, value); }
    else if (key == "n_max") { once(); cfg.n_max = to_index(key, value); }
    else if (key == "r_max") { once(); cfg.r_max = to_index(key, value); }
    else if (key == "lambda_grid") { once(); cfg.lambda_grid = to_reals(key, value); }
    else if (key == "eps_grid") { once(); cfg.eps_grid = to_reals(key, value); }
    else if (key == "almost_shifts") { once(); cfg.almost_shifts = to_index(key, value); }
    else if (key == "abel_tolerance") { once(); cfg.abel_tolerance = to_real(key, value); }
    else if (key == "format") { once(); spec.format = format_from_string(value); }
    else if (key == "out") { once(); spec.out = value; }
    else fail(ErrorKind::Validation, "line " + std::to_string(line) + ": unknown key '" + key + "'");
}

void conflict(bool bad, const char* key, Command c) {
    if (bad)
        fail(ErrorKind::Validation,
             std::string("key '") + key + "' does not apply to command '" + to_string(c) + "'");
}

void require(bool ok, const char* what, Command c) {
    if (!ok) fail(ErrorKind::Validation, std::string("command '") + to_string(c) + "' requires " + what);
}

}  // namespace

const char* to_string(Command c) noexcept {
    switch (c) {
    case Command::Classify: return "classify";
    case Command::Means: return "means";
    case Command::Inclusion: return "inclusion";
    case Command::Probe: return "probe";
    case Command::Counterexample: return "counterexample";
    case Command::ValidateSchedule: return "validate-schedule";
    }
    return "unknown";
}

Command command_from_string(const std::string& s) {
    for (auto c : {Command::Classify, Command::Means, Command::Inclusion, Command::Probe, Command::Counterexample,
                   Command::ValidateSchedule})
        if (s == to_string(c)) return c;
    fail(ErrorKind::Identifier, "unknown command '" + s + "'");
}

const char* to_string(OutputFormat f) noexcept {
    switch (f) {
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Text: return "text";
    }
    return "unknown";
}

OutputFormat format_from_string(const std::string& s) {
    for (auto f : {OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text})
        if (s == to_string(f)) return f;
    fail(ErrorKind::Parameter, "unsupported output format '" + s + "'");
}

SequenceSpec SequenceSpec::parse(const std::string& text) {
    SequenceSpec s;
    if (text.rfind("file:", 0) == 0) {
        s.name = "file";
        s.path = text.substr(5);
        if (s.path.empty()) fail(ErrorKind::Syntax, "file sequence needs a path");
        return s;
    }
    auto parts = split(text, ':');
    s.name = parts[0];
    std::size_t max_args = 0;
    if (s.name == "cesaro-gap") max_args = 1;
    else if (s.name == "block-gap") max_args = 2;
    else max_args = catalog_param_names(s.name).size();  // throws for unknown names
    for (std::size_t i = 1; i < parts.size(); ++i) s.args.push_back(to_real("sequence", parts[i]));
    if (s.args.size() > max_args)
        fail(ErrorKind::Parameter, "sequence '" + s.name + "' takes at most " + std::to_string(max_args) + " parameter(s)");
    return s;
}

std::string SequenceSpec::to_string() const {
    if (name == "file") return "file:" + path;
    std::string out = name;
    for (double a : args) out += ":" + format_double(a);
    return out;
}

ScheduleSpec ScheduleSpec::parse(const std::string& text) {
    ScheduleSpec s;
    const auto colon = text.find(':');
    s.family = schedule_family_from_string(text.substr(0, colon));
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    if (s.family == ScheduleFamily::Explicit) {
        s.breakpoints = to_indices("theta", rest);
        s.r_max = static_cast<Index>(s.breakpoints.size()) - 1;
        return s;
    }
    auto parts = rest.empty() ? std::vector<std::string>{} : split(rest, ':');
    const std::size_t nparams = s.family == ScheduleFamily::Factorial ? 0 : 1;
    if (parts.size() < nparams || parts.size() > nparams + 1)
        fail(ErrorKind::Syntax, "schedule '" + text + "' expects " + std::to_string(nparams) + " parameter(s) and an optional R");
    for (std::size_t i = 0; i < nparams; ++i) s.params.push_back(to_real("theta", parts[i]));
    if (parts.size() == nparams + 1) s.r_max = to_index("theta", parts[nparams]);
    return s;
}

std::string ScheduleSpec::to_string() const {
    std::string out = lacunary::to_string(family);
    if (family == ScheduleFamily::Explicit) return out + ":" + indices_text(breakpoints);
    for (double p : params) out += ":" + format_double(p);
    if (r_max > 0) out += ":" + std::to_string(r_max);
    return out;
}

FunctionSpec FunctionSpec::parse(const std::string& text) {
    FunctionSpec f;
    auto parts = split(text, ':');
    f.name = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) f.args.push_back(to_real("function", parts[i]));
    f.resolve();
    return f;
}

std::string FunctionSpec::to_string() const {
    std::string out = name;
    for (double a : args) out += ":" + format_double(a);
    return out;
}

RealFunction FunctionSpec::resolve() const { return RealFunction::from_name(name, args); }

const std::vector<std::string>& family_names() { return family_list(); }

std::vector<SequenceSpec> expand_family(const std::string& name) {
    auto mk = [](std::string n, std::vector<double> a = {}) { return SequenceSpec{std::move(n), std::move(a), {}}; };
    std::vector<SequenceSpec> qc{mk("sqrt"),     mk("log10"),    mk("ln"),          mk("ln_ln"),
                                 mk("harmonic"), mk("double_harmonic"), mk("cos_6log"), mk("cos_pi_sqrt"),
                                 mk("constant", {1.0}), mk("inverse")};
    if (name == "catalog-qc") return qc;
    if (name == "catalog") {
        qc.push_back(mk("alternating"));
        qc.push_back(mk("affine", {3.0, 5.0}));
        qc.push_back(mk("square_indicator"));
        return qc;
    }
    fail(ErrorKind::Identifier, "unknown family '" + name + "'");
}

RunSpec parse_run_spec(const std::string& text, bool finalize) {
    RunSpec spec;
    KeySet seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            fail(ErrorKind::Syntax, "line " + std::to_string(line_no) + ": expected key=value");
        const std::string key = trim(t.substr(0, eq));
        if (key.empty()) fail(ErrorKind::Syntax, "line " + std::to_string(line_no) + ": empty key");
        try {
            apply(spec, key, t.substr(eq + 1), line_no, &seen);
        } catch (const Error& e) {
            const std::string msg = e.what();
            if (msg.rfind("line ", 0) == 0) throw;
            throw Error(e.kind(), "line " + std::to_string(line_no) + ": " + msg);
        }
    }
    if (finalize) validate_run_spec(spec);
    return spec;
}

void apply_override(RunSpec& spec, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) fail(ErrorKind::Syntax, "override '" + assignment + "' is not key=value");
    const std::string key = trim(assignment.substr(0, eq));
    apply(spec, key, assignment.substr(eq + 1), 0, nullptr);
}

void validate_run_spec(const RunSpec& s) {
    const Command c = s.command;
    const bool seq_cmd = c == Command::Classify || c == Command::Means || c == Command::Inclusion || c == Command::Probe;
    conflict(!seq_cmd && (!s.sequences.empty() || !s.families.empty()), "sequence/family", c);
    conflict(c != Command::Classify && !s.classes.empty(), "class", c);
    conflict(c != Command::Classify && c != Command::Means && (s.center || s.checkpoints), "center/checkpoints", c);
    conflict(c != Command::Classify && s.almost_abs, "almost_abs", c);
    conflict(c != Command::Means && (s.mean || s.difference != 0 || s.epsilon || s.x_grid || s.window_n || s.shifts),
             "mean/difference/epsilon/x/window_n/shifts", c);
    conflict(c != Command::Probe && (s.probe || s.function || s.family_kind || s.family_indices),
             "probe/function/family_kind/family_indices", c);
    conflict(c != Command::Counterexample && (s.construction || s.blocks || s.c || s.start || s.step || s.export_path),
             "construction/blocks/c/start/step/export", c);
    conflict(c != Command::ValidateSchedule && s.window.has_value(), "window", c);

    const bool has_seq = !s.sequences.empty() || !s.families.empty();
    switch (c) {
    case Command::Classify:
        require(has_seq, "a sequence or family", c);
        require(!s.classes.empty(), "at least one class", c);
        for (auto cls : s.classes)
            if (needs_schedule(cls)) require(s.theta.has_value(), "theta for N_theta classes", c);
        break;
    case Command::Means:
        require(has_seq, "a sequence or family", c);
        require(s.mean.has_value(), "mean=<kind>", c);
        if (*s.mean == "ntheta") require(s.theta.has_value(), "theta for mean=ntheta", c);
        if (*s.mean == "stat_density") require(s.epsilon.has_value(), "epsilon for mean=stat_density", c);
        break;
    case Command::Inclusion:
        require(has_seq, "a sequence or family", c);
        require(s.theta.has_value(), "theta", c);
        break;
    case Command::Probe:
        require(has_seq, "a sequence or family", c);
        require(s.probe.has_value(), "probe=ward|uniform", c);
        require(s.function.has_value(), "function", c);
        require(s.theta.has_value(), "theta", c);
        if (*s.probe == "uniform") require(s.family_kind.has_value(), "family_kind for probe=uniform", c);
        else conflict(s.family_kind || s.family_indices, "family_kind/family_indices", c);
        break;
    case Command::Counterexample:
        require(s.construction.has_value(), "construction", c);
        if (*s.construction == "escape") {
            require(s.start && s.step, "start and step for escape", c);
            conflict(s.blocks || s.c, "blocks/c", c);
        } else {
            require(s.theta.has_value(), "theta", c);
            require(s.blocks.has_value(), "blocks", c);
            if (*s.construction == "block-gap") require(s.c.has_value(), "c for block-gap", c);
            else conflict(s.c.has_value(), "c", c);
        }
        break;
    case Command::ValidateSchedule:
        require(s.theta.has_value(), "theta", c);
        break;
    }
    s.cfg.validate();
}

std::string serialize_run_spec(const RunSpec& s) {
    std::string out;
    auto kv = [&](const std::string& k, const std::string& v) { out += k + "=" + v + "\n"; };
    kv("command", to_string(s.command));
    for (const auto& q : s.sequences) kv("sequence", q.to_string());
    for (const auto& f : s.families) kv("family", f);
    if (s.theta) kv("theta", s.theta->to_string());
    for (auto cls : s.classes) kv("class", lacunary::to_string(cls));
    if (s.center) kv("center", format_double(*s.center));
    if (s.checkpoints) kv("checkpoints", indices_text(*s.checkpoints));
    if (s.almost_abs) kv("almost_abs", "1");
    if (s.mean) kv("mean", *s.mean);
    if (s.difference != 0) kv("difference", std::to_string(s.difference));
    if (s.epsilon) kv("epsilon", format_double(*s.epsilon));
    if (s.x_grid) kv("x", reals_text(*s.x_grid));
    if (s.window_n) kv("window_n", std::to_string(*s.window_n));
    if (s.shifts) kv("shifts", std::to_string(*s.shifts));
    if (s.probe) kv("probe", *s.probe);
    if (s.function) kv("function", s.function->to_string());
    if (s.family_kind) kv("family_kind", *s.family_kind);
    if (s.family_indices) kv("family_indices", indices_text(*s.family_indices));
    if (s.construction) kv("construction", *s.construction);
    if (s.blocks) kv("blocks", std::to_string(*s.blocks));
    if (s.c) kv("c", format_double(*s.c));
    if (s.start) kv("start", format_double(*s.start));
    if (s.step) kv("step", format_double(*s.step));
    if (s.export_path) kv("export", *s.export_path);
    if (s.window) kv("window", std::to_string(*s.window));
    const auto& c = s.cfg;
    kv("eps_null", format_double(c.eps_null));
    kv("delta_away", format_double(c.delta_away));
    kv("tail_window", std::to_string(c.tail_window));
    kv("decay_factor", format_double(c.decay_factor));
    kv("n_max", std::to_string(c.n_max));
    kv("r_max", std::to_string(c.r_max));
    kv("lambda_grid", reals_text(c.lambda_grid));
    kv("eps_grid", reals_text(c.eps_grid));
    kv("almost_shifts", std::to_string(c.almost_shifts));
    kv("abel_tolerance", format_double(c.abel_tolerance));
    kv("format", to_string(s.format));
    if (s.out) kv("out", *s.out);
    return out;
}

std::string run_spec_help() {
    return R"(Run specification: one key=value per line, '#' comments, ':'-separated positional params.

  command=classify|means|inclusion|probe|counterexample|validate-schedule
  sequence=NAME[:P...]        catalog member, e.g. sqrt, affine:3:5, constant:2, alternating:1,
                              escape:0:1.5, file:PATH, cesaro-gap:J, block-gap:C:J (repeatable)
  family=catalog|catalog-qc   named sequence sets (repeatable)
  theta=geometric:RATIO[:R] | power:P[:R] | factorial[:R] | explicit:0,1,4,9
  class=qc,delta_qc,stat_qc,cesaro_qc,ntheta_qc,ntheta,strong_cesaro,statistical,
        abel,almost_qc,almost,cauchy,slow_osc   (classify; repeatable or comma list)
  center=L                    candidate limit (classify/means); default: last prefix mean
  checkpoints=N1,N2,...       profile checkpoints (classify/means)
  almost_abs=0|1              |Delta| inside almost-QC window sums (classify)
  mean=prefix|strong_cesaro|ntheta|stat_density|almost|abel   (means)
  difference=0|1|2            difference the sequence first (means)
  epsilon=E  x=X1,X2  window_n=N  shifts=J                   (means)
  probe=ward|uniform  function=NAME[:P...]  family_kind=shift|scale|identical
  family_indices=1,2,4                                       (probe)
  construction=cesaro-gap|block-gap|escape  blocks=J  c=C  start=S  step=D  export=PATH
  window=W                    ratio window (validate-schedule)
  eps_null delta_away tail_window decay_factor n_max r_max lambda_grid eps_grid
  almost_shifts abel_tolerance                               tolerance policy
  format=json|csv|text  out=PATH
)";
}

}  // namespace lacunary::app
