#include "lacunary_app/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "lacunary/constructions.hpp"
#include "lacunary/error.hpp"
#include "lacunary/format.hpp"
#include "lacunary/sequence.hpp"
#include "lacunary/transforms.hpp"

#ifndef LACUNARY_VERSION
#define LACUNARY_VERSION "0.0.0"
#endif

namespace lacunary::app {

using json = nlohmann::ordered_json;

namespace {

json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return nullptr;
            else if constexpr (std::is_same_v<T, double>) return number(v);
            else return v;
        },
        c);
}

std::string cell_text(const Cell& c, const char* empty) {
    return std::visit(
        [empty](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) return empty;
            else if constexpr (std::is_same_v<T, bool>) return v ? "true" : "false";
            else if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
            else if constexpr (std::is_same_v<T, double>) return format_double(v);
            else return v;
        },
        c);
}

json config_json(const ToleranceConfig& c) {
    json j;
    j["eps_null"] = number(c.eps_null);
    j["delta_away"] = number(c.delta_away);
    j["tail_window"] = c.tail_window;
    j["decay_factor"] = number(c.decay_factor);
    j["n_max"] = c.n_max;
    j["r_max"] = c.r_max;
    j["lambda_grid"] = c.lambda_grid;
    j["eps_grid"] = c.eps_grid;
    j["almost_shifts"] = c.almost_shifts;
    j["abel_tolerance"] = number(c.abel_tolerance);
    return j;
}

json diagnostics_json(const ScheduleDiagnostics& d) {
    json j;
    j["starts_at_zero"] = d.starts_at_zero;
    j["strictly_increasing"] = d.strictly_increasing;
    j["structural_ok"] = d.structural_ok();
    j["h_growing"] = d.h_growing;
    j["h_first_quarter_mean"] = number(d.h_first_quarter_mean);
    j["h_last_quarter_mean"] = number(d.h_last_quarter_mean);
    j["liminf_gt_one"] = d.liminf_gt_one;
    j["limsup_finite"] = d.limsup_finite;
    if (d.stats) {
        j["window"] = d.stats->window;
        j["tail_inf_q"] = number(d.stats->tail_inf_q);
        j["tail_sup_q"] = number(d.stats->tail_sup_q);
    }
    j["messages"] = d.messages;
    return j;
}

json schedule_json(const LacunarySchedule& theta, const ScheduleDiagnostics& d) {
    json j;
    j["tag"] = theta.tag();
    j["r_max"] = theta.r_max();
    j["k"] = theta.breakpoints();
    const json diag = diagnostics_json(d);
    for (const auto& [key, value] : diag.items()) j[key] = value;
    return j;
}

LacunarySchedule build_schedule(const ScheduleSpec& s, const ToleranceConfig& cfg) {
    if (s.family == ScheduleFamily::Explicit) return make_explicit_schedule(s.breakpoints);
    ParamMap params;
    if (s.family == ScheduleFamily::Geometric) params["ratio"] = s.params.at(0);
    if (s.family == ScheduleFamily::Power) params["p"] = s.params.at(0);
    return make_lacunary_schedule(s.family, params, s.r_max > 0 ? s.r_max : cfg.r_max);
}

struct Resolved {
    std::string label;
    RealSequence sequence;
};

RealSequence resolve(const SequenceSpec& s, const std::optional<LacunarySchedule>& theta,
                     std::vector<std::string>& warnings) {
    if (s.name == "file") {
        auto loaded = load_sequence_file(s.path);
        for (auto& w : loaded.warnings) warnings.push_back(s.path + ": " + w);
        return loaded.sequence;
    }
    if (s.name == "cesaro-gap" || s.name == "block-gap") {
        if (!theta) fail(ErrorKind::Parameter, "sequence '" + s.name + "' needs theta");
        Construction built = s.name == "cesaro-gap"
                                 ? cesaro_gap_counterexample(*theta, s.args.empty() ? 3 : static_cast<Index>(s.args[0]))
                                 : block_gap_counterexample(*theta, s.args.empty() ? 1.0 : s.args[0],
                                                            s.args.size() < 2 ? 3 : static_cast<Index>(s.args[1]));
        for (auto& w : built.warnings) warnings.push_back(w);
        return built.sequence;
    }
    const auto& names = catalog_param_names(s.name);
    ParamMap params;
    for (std::size_t i = 0; i < s.args.size(); ++i) params[names.at(i)] = s.args[i];
    return make_catalog_sequence(s.name, params);
}

std::vector<Resolved> resolve_all(const RunSpec& spec, const std::optional<LacunarySchedule>& theta,
                                  std::vector<std::string>& warnings) {
    std::vector<SequenceSpec> all = spec.sequences;
    for (const auto& f : spec.families) {
        auto more = expand_family(f);
        all.insert(all.end(), more.begin(), more.end());
    }
    std::vector<Resolved> out;
    for (const auto& s : all) out.push_back({s.to_string(), resolve(s, theta, warnings)});
    return out;
}

void verdict_cells(ReportRow& row, const std::string& prefix, const std::optional<Verdict>& v) {
    if (!v) {
        row.set(prefix + "state", std::monostate{});
        row.set(prefix + "tail_max", std::monostate{});
        row.set(prefix + "tail_min", std::monostate{});
        return;
    }
    row.set(prefix + "state", std::string(to_string(v->state)));
    row.set(prefix + "tail_max", v->evidence.tail_max);
    row.set(prefix + "tail_min", v->evidence.tail_min);
}

Index horizon_of(const RealSequence& a, const ToleranceConfig& cfg) { return std::min(cfg.n_max, a.n_max()); }

void run_classify(const RunSpec& spec, const std::optional<LacunarySchedule>& theta, Report& r) {
    ClassifyOptions opt;
    opt.theta = theta;
    opt.center = spec.center;
    opt.almost_absolute = spec.almost_abs;
    opt.checkpoints = spec.checkpoints;
    for (const auto& seq : resolve_all(spec, theta, r.warnings)) {
        for (auto cls : spec.classes) {
            ReportRow row;
            row.set("sequence", seq.label).set("class", std::string(to_string(cls)));
            try {
                Verdict v = classify_membership(seq.sequence, cls, opt, spec.cfg);
                verdict_cells(row, "", v);
                row.set("decay_ratio", v.evidence.decay_ratio);
                if (v.evidence.witness) {
                    row.set("witness_n", static_cast<long long>(v.evidence.witness->first));
                    row.set("witness_k", static_cast<long long>(v.evidence.witness->second));
                } else {
                    row.set("witness_n", std::monostate{}).set("witness_k", std::monostate{});
                }
                row.set("center", v.profile ? Cell(v.profile->center) : Cell(std::monostate{}));
                row.set("error", std::string());
            } catch (const Error& e) {
                verdict_cells(row, "", std::nullopt);
                row.set("decay_ratio", std::monostate{}).set("witness_n", std::monostate{});
                row.set("witness_k", std::monostate{}).set("center", std::monostate{});
                row.set("error", std::string(to_string(e.kind())) + ": " + e.what());
            }
            r.rows.push_back(std::move(row));
        }
    }
}

MeanProfile mean_profile(const RunSpec& spec, const std::optional<LacunarySchedule>& theta, const RealSequence& a) {
    const auto& cfg = spec.cfg;
    const Index horizon = horizon_of(a, cfg);
    std::vector<Index> points = spec.checkpoints ? *spec.checkpoints : checkpoint_ladder(horizon);
    const std::string& kind = *spec.mean;
    auto center = [&] {
        if (spec.center) return *spec.center;
        return prefix_mean(a, {horizon}).value.back();
    };
    if (kind == "prefix") return prefix_mean(a, points);
    if (kind == "strong_cesaro") return strong_cesaro_deviation(a, center(), points);
    if (kind == "ntheta") {
        const Index blocks = std::min(cfg.r_max, theta->blocks_within(horizon));
        return ntheta_block_means(a, center(), *theta, blocks);
    }
    if (kind == "stat_density") return statistical_exceed_density(a, center(), *spec.epsilon, points);
    if (kind == "almost") {
        const Index shifts = spec.shifts.value_or(cfg.almost_shifts);
        const Index n = spec.window_n.value_or(std::max<Index>(1, (horizon - shifts) / 2));
        return almost_window_spread(a, n, shifts, false);
    }
    MeanProfile p;
    p.kind = ProfileKind::AbelGrid;
    p.center = 0.0;
    for (double x : spec.x_grid.value_or(std::vector<double>{0.5, 0.9, 0.99, 0.999})) {
        const AbelResult res = abel_value(a, x, cfg.abel_tolerance);
        p.index.push_back(x);
        p.value.push_back(res.value);
        p.meta["terms@" + format_double(x)] = static_cast<double>(res.terms);
    }
    return p;
}

void run_means(const RunSpec& spec, const std::optional<LacunarySchedule>& theta, Report& r) {
    auto seqs = resolve_all(spec, theta, r.warnings);
    const bool label = seqs.size() > 1;
    json profiles = json::array();
    for (const auto& seq : seqs) {
        RealSequence a = seq.sequence;
        if (spec.difference == 1) a = forward_difference(a);
        if (spec.difference == 2) a = second_difference(a);
        const MeanProfile p = mean_profile(spec, theta, a);
        for (std::size_t i = 0; i < p.size(); ++i) {
            ReportRow row;
            if (label) row.set("sequence", seq.label);
            row.set("index", p.index[i]).set("value", p.value[i]);
            r.rows.push_back(std::move(row));
        }
        json pj;
        pj["sequence"] = seq.label;
        pj["kind"] = to_string(p.kind);
        pj["center"] = number(p.center);
        pj["schedule_tag"] = p.schedule_tag ? json(*p.schedule_tag) : json(nullptr);
        json meta = json::object();
        for (const auto& [k, v] : p.meta) meta[k] = number(v);
        pj["meta"] = meta;
        profiles.push_back(pj);
    }
    r.details["mean"] = *spec.mean;
    r.details["difference"] = spec.difference;
    r.details["profiles"] = profiles;
}

void run_inclusion(const RunSpec& spec, const LacunarySchedule& theta, Report& r) {
    auto seqs = resolve_all(spec, theta, r.warnings);
    std::vector<RealSequence> families;
    for (const auto& s : seqs) families.push_back(s.sequence.with_tag(s.label));
    const InclusionReport rep = inclusion_report(families, theta, spec.cfg);
    r.schedule = schedule_json(theta, rep.schedule);
    for (const auto& row : rep.rows) {
        ReportRow out;
        out.set("sequence", row.sequence);
        verdict_cells(out, "cesaro_qc_", row.cesaro_qc);
        verdict_cells(out, "ntheta_qc_", row.ntheta_qc);
        out.set("violation", row.violation).set("necessity_separation", row.necessity_separation);
        out.set("detail", row.violation_detail).set("error", row.error);
        r.rows.push_back(std::move(out));
    }
    r.details["violations"] = static_cast<long long>(rep.violations());
}

void run_probe(const RunSpec& spec, const LacunarySchedule& theta, Report& r) {
    auto seqs = resolve_all(spec, theta, r.warnings);
    const RealFunction f = spec.function->resolve();
    r.details["probe"] = *spec.probe;
    r.details["function"] = f.describe();
    if (*spec.probe == "ward") {
        std::vector<RealSequence> families;
        for (const auto& s : seqs) families.push_back(s.sequence.with_tag(s.label));
        const WardReport rep = ward_continuity_probe(f, families, theta, spec.cfg);
        for (const auto& row : rep.rows) {
            ReportRow out;
            out.set("sequence", row.sequence);
            verdict_cells(out, "input_", row.input);
            verdict_cells(out, "image_", row.image);
            out.set("violation", row.violation).set("error", row.error);
            r.rows.push_back(std::move(out));
        }
        r.details["violations"] = static_cast<long long>(rep.violations());
        return;
    }
    FunctionFamily fam;
    fam.kind = FunctionFamily::kind_from_string(*spec.family_kind);
    fam.base = f;
    if (spec.family_indices) fam.indices = *spec.family_indices;
    r.details["family_kind"] = *spec.family_kind;
    json flags = json::array();
    for (const auto& seq : seqs) {
        const UniformLimitReport rep = uniform_limit_probe(fam, f, seq.sequence, theta, spec.cfg);
        auto add = [&](const std::string& member, Cell n, Cell gap, const Verdict& image) {
            ReportRow out;
            out.set("sequence", seq.label).set("member", member).set("n", std::move(n)).set("uniform_gap", std::move(gap));
            out.set("input_state", std::string(to_string(rep.input.state)));
            verdict_cells(out, "image_", image);
            r.rows.push_back(std::move(out));
        };
        for (const auto& m : rep.members)
            add("f_n", static_cast<long long>(m.n), m.uniform_gap, m.image);
        add("limit", std::monostate{}, 0.0, rep.limit_image);
        json flag;
        flag["sequence"] = seq.label;
        flag["inconsistent"] = rep.inconsistent;
        flags.push_back(flag);
    }
    r.details["inconsistent"] = flags;
}

void run_counterexample(const RunSpec& spec, const std::optional<LacunarySchedule>& theta, Report& r) {
    const std::string& name = *spec.construction;
    r.details["construction"] = name;
    std::optional<RealSequence> seq;
    if (name == "escape") {
        seq = unbounded_escape_sequence(*spec.start, *spec.step, spec.cfg.n_max);
        const Index shown = std::min<Index>(10, seq->n_max());
        for (Index n = 1; n <= shown; ++n) {
            ReportRow row;
            row.set("n", static_cast<long long>(n)).set("value", seq->at(n));
            r.rows.push_back(std::move(row));
        }
    } else {
        Construction built = name == "cesaro-gap" ? cesaro_gap_counterexample(*theta, *spec.blocks)
                                                  : block_gap_counterexample(*theta, *spec.c, *spec.blocks);
        r.warnings.insert(r.warnings.end(), built.warnings.begin(), built.warnings.end());
        r.schedule = schedule_json(*theta, validate_schedule(*theta));
        for (const auto& check : built.selection.log) {
            std::string conditions;
            for (const auto& c : check.conditions) conditions += (conditions.empty() ? "" : "; ") + c;
            ReportRow row;
            row.set("j", static_cast<long long>(check.j)).set("r", static_cast<long long>(check.r));
            row.set("k_r_minus_1", static_cast<long long>(theta->k(check.r - 1)));
            row.set("k_r", static_cast<long long>(theta->k(check.r)));
            row.set("conditions", conditions);
            r.rows.push_back(std::move(row));
        }
        std::vector<long long> chosen(built.selection.chosen.begin(), built.selection.chosen.end());
        r.details["mode"] = to_string(built.selection.mode);
        r.details["chosen"] = chosen;
        r.details["verified"] = built.selection.verify(*theta);
        seq = built.sequence;
    }
    r.details["tag"] = seq->tag();
    r.details["n_max"] = seq->n_max();
    if (spec.export_path) {
        write_sequence_file(*seq, *spec.export_path);
        r.details["exported"] = *spec.export_path;
    }
}

void run_validate_schedule(const RunSpec& spec, Report& r) {
    ScheduleValidationOptions opt;
    if (spec.window) opt.window = *spec.window;
    const ScheduleSpec& s = *spec.theta;
    std::vector<Index> k;
    ScheduleDiagnostics d;
    if (s.family == ScheduleFamily::Explicit) {
        k = s.breakpoints;
        d = validate_breakpoints(k, opt);
        json j;
        j["tag"] = s.to_string();
        j["r_max"] = static_cast<Index>(k.size()) - 1;
        j["k"] = k;
        const json diag = diagnostics_json(d);
    for (const auto& [key, value] : diag.items()) j[key] = value;
        r.schedule = j;
    } else {
        const LacunarySchedule theta = build_schedule(s, spec.cfg);
        k = theta.breakpoints();
        d = validate_schedule(theta, opt);
        r.schedule = schedule_json(theta, d);
    }
    r.details["structural_ok"] = d.structural_ok();
    r.details["liminf_gt_one"] = d.liminf_gt_one;
    r.details["limsup_finite"] = d.limsup_finite;
    r.warnings.insert(r.warnings.end(), d.messages.begin(), d.messages.end());
    if (!d.structural_ok()) return;
    for (std::size_t i = 1; i < k.size(); ++i) {
        ReportRow row;
        row.set("r", static_cast<long long>(i)).set("k", static_cast<long long>(k[i]));
        row.set("h", static_cast<long long>(k[i] - k[i - 1]));
        row.set("q", i >= 2 ? Cell(static_cast<double>(k[i]) / static_cast<double>(k[i - 1])) : Cell(std::monostate{}));
        r.rows.push_back(std::move(row));
    }
}

std::vector<std::string> columns(const Report& report) {
    std::vector<std::string> cols;
    for (const auto& row : report.rows)
        for (const auto& [k, v] : row.cells)
            if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
    return cols;
}

const Cell* find_cell(const ReportRow& row, const std::string& key) {
    for (const auto& [k, v] : row.cells)
        if (k == key) return &v;
    return nullptr;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

const char* tool_version() noexcept { return LACUNARY_VERSION; }

Report execute(const RunSpec& spec) {
    validate_run_spec(spec);
    Report r;
    r.version = tool_version();
    r.command = to_string(spec.command);
    RunSpec echo = spec;
    echo.out.reset();
    r.spec_echo = serialize_run_spec(echo);
    r.config = spec.cfg;
    std::optional<LacunarySchedule> theta;
    if (spec.theta && spec.command != Command::ValidateSchedule) theta = build_schedule(*spec.theta, spec.cfg);
    if (theta && (spec.command == Command::Classify || spec.command == Command::Means || spec.command == Command::Probe))
        r.schedule = schedule_json(*theta, validate_schedule(*theta));
    switch (spec.command) {
    case Command::Classify: run_classify(spec, theta, r); break;
    case Command::Means: run_means(spec, theta, r); break;
    case Command::Inclusion: run_inclusion(spec, *theta, r); break;
    case Command::Probe: run_probe(spec, *theta, r); break;
    case Command::Counterexample: run_counterexample(spec, theta, r); break;
    case Command::ValidateSchedule: run_validate_schedule(spec, r); break;
    }
    return r;
}

std::string render_json(const Report& report) {
    json j;
    json rows = json::array();
    for (const auto& row : report.rows) {
        json o = json::object();
        for (const auto& [k, v] : row.cells) o[k] = cell_json(v);
        rows.push_back(o);
    }
    j["rows"] = rows;
    j["tool"] = report.tool;
    j["version"] = report.version;
    j["command"] = report.command;
    j["spec"] = report.spec_echo;
    j["config"] = config_json(report.config);
    j["schedule"] = report.schedule ? *report.schedule : json(nullptr);
    j["warnings"] = report.warnings;
    j["details"] = report.details;
    return j.dump(2) + "\n";
}

std::string render_csv(const Report& report) {
    const auto cols = columns(report);
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_field(cols[i]);
    out += "\n";
    for (const auto& row : report.rows) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const Cell* c = find_cell(row, cols[i]);
            out += (i ? "," : "") + csv_field(c ? cell_text(*c, "") : "");
        }
        out += "\n";
    }
    return out;
}

std::string render_text(const Report& report) {
    const auto cols = columns(report);
    std::vector<std::vector<std::string>> table{cols};
    for (const auto& row : report.rows) {
        std::vector<std::string> line;
        for (const auto& col : cols) {
            const Cell* c = find_cell(row, col);
            std::string text = c ? cell_text(*c, "-") : "-";
            line.push_back(text.empty() ? "-" : text);
        }
        table.push_back(std::move(line));
    }
    std::vector<std::size_t> width(cols.size(), 0);
    for (const auto& line : table)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    std::ostringstream os;
    os << "# " << report.tool << " " << report.version << " " << report.command << "\n";
    if (report.schedule && report.schedule->contains("tag"))
        os << "# schedule " << report.schedule->at("tag").get<std::string>() << "\n";
    for (const auto& line : table) {
        std::string text;
        for (std::size_t i = 0; i < line.size(); ++i) {
            text += line[i];
            if (i + 1 < line.size()) text += std::string(width[i] - line[i].size() + 2, ' ');
        }
        os << text << "\n";
    }
    for (const auto& [k, v] : report.details.items()) os << "# " << k << ": " << v.dump() << "\n";
    for (const auto& w : report.warnings) os << "# warning: " << w << "\n";
    return os.str();
}

std::string render(const Report& report, OutputFormat format) {
    switch (format) {
    case OutputFormat::Json: return render_json(report);
    case OutputFormat::Csv: return render_csv(report);
    case OutputFormat::Text: return render_text(report);
    }
    return {};
}

void write_report(const Report& report, OutputFormat format, const std::string& path) {
    const std::string text = render(report, format);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) fail(ErrorKind::Io, "failed writing '" + path + "'");
}

void write_report(const Report& report, const std::string& format, const std::string& path) {
    write_report(report, format_from_string(format), path);
}

int exit_code_for(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::Identifier:
    case ErrorKind::Parameter:
    case ErrorKind::Validation:
    case ErrorKind::Syntax: return 2;
    case ErrorKind::Range:
    case ErrorKind::Domain:
    case ErrorKind::Truncation:
    case ErrorKind::Construction: return 3;
    case ErrorKind::Io: return 4;
    }
    return 3;
}

}  // namespace lacunary::app
