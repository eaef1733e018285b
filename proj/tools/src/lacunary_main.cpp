#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lacunary/error.hpp"
#include "lacunary_app/report.hpp"
#include "lacunary_app/run_spec.hpp"

namespace {

using namespace lacunary;
using namespace lacunary::app;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot read spec file '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(const std::string& command, const std::string& spec_path, const std::vector<std::string>& sets,
        const std::string& out_path, const std::string& format) {
    RunSpec spec = spec_path.empty() ? RunSpec{} : parse_run_spec(read_file(spec_path), false);
    const Command cmd = command_from_string(command);
    if (!spec_path.empty() && spec.command != cmd) {
        // A spec file names its own command; the positional one must agree unless the file omitted it.
        const std::string text = read_file(spec_path);
        if (text.find("command=") != std::string::npos)
            fail(ErrorKind::Validation, "spec file command '" + std::string(to_string(spec.command)) +
                                            "' conflicts with '" + command + "'");
    }
    spec.command = cmd;
    for (const auto& s : sets) apply_override(spec, s);
    if (!format.empty()) spec.format = format_from_string(format);
    if (!out_path.empty()) spec.out = out_path;
    validate_run_spec(spec);

    const Report report = execute(spec);
    if (spec.out) {
        write_report(report, spec.format, *spec.out);
    } else {
        std::cout << render(report, spec.format);
        std::cout.flush();
        if (!std::cout) fail(ErrorKind::Io, "failed writing to stdout");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lacunary summability and quasi-Cauchy classification toolkit"};
    app.footer("\n" + run_spec_help());
    app.set_version_flag("--version", std::string(tool_version()));
    app.require_subcommand(1);

    std::string spec_path;
    std::vector<std::string> sets;
    std::string out_path;
    std::string format;

    for (const char* name : {"classify", "means", "inclusion", "probe", "counterexample", "validate-schedule"}) {
        CLI::App* sub = app.add_subcommand(name, std::string("run the ") + name + " command");
        sub->add_option("--spec", spec_path, "run specification file (key=value lines)");
        sub->add_option("--set", sets, "override one key, e.g. --set eps_null=0.005")->allow_extra_args(false);
        sub->add_option("--out", out_path, "write the report here instead of stdout");
        sub->add_option("--format", format, "json, csv or text");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        return run(app.get_subcommands().front()->get_name(), spec_path, sets, out_path, format);
    } catch (const Error& e) {
        std::cerr << "lacunary: " << to_string(e.kind()) << " error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "lacunary: internal error: " << e.what() << "\n";
        return 3;
    }
}
