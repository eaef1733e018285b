#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "lacunary/error.hpp"
#include "lacunary_app/run_spec.hpp"

using namespace lacunary;
using namespace lacunary::app;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Io;
}
std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}
}  // namespace

TEST(RunSpec, SmallestValidSpec) {
    const auto s = parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\n");
    EXPECT_EQ(s.command, Command::Classify);
    ASSERT_EQ(s.sequences.size(), 1u);
    EXPECT_EQ(s.sequences[0].name, "sqrt");
    EXPECT_EQ(s.classes, (std::vector<SequenceClass>{SequenceClass::QuasiCauchy}));
    EXPECT_EQ(s.cfg, ToleranceConfig{});
    EXPECT_EQ(s.format, OutputFormat::Json);
}

TEST(RunSpec, UnknownSequenceNamesIt) {
    const auto text = "command=classify\nsequence=nosuch\n";
    EXPECT_EQ(kind_of([&] { parse_run_spec(text); }), ErrorKind::Identifier);
    EXPECT_NE(message_of([&] { parse_run_spec(text); }).find("nosuch"), std::string::npos);
}

TEST(RunSpec, InclusionWithFamily) {
    const auto s = parse_run_spec("command=inclusion\ntheta=geometric:2:20\nfamily=catalog-qc\n");
    EXPECT_EQ(s.command, Command::Inclusion);
    ASSERT_TRUE(s.theta);
    EXPECT_EQ(s.theta->family, ScheduleFamily::Geometric);
    EXPECT_EQ(s.theta->params, (std::vector<double>{2.0}));
    EXPECT_EQ(s.theta->r_max, 20);
    EXPECT_EQ(s.families, (std::vector<std::string>{"catalog-qc"}));
}

TEST(RunSpec, SyntaxErrorCarriesLineNumber) {
    const auto text = "command=classify\n# comment\nsequence sqrt\n";
    EXPECT_EQ(kind_of([&] { parse_run_spec(text); }), ErrorKind::Syntax);
    EXPECT_NE(message_of([&] { parse_run_spec(text); }).find("line 3"), std::string::npos);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\neps_null=abc\n"); }),
              ErrorKind::Syntax);
}

TEST(RunSpec, Rejections) {
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\nbogus=1\n"); }),
              ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\neps_null=0.01\neps_null=0.02\n"); }),
              ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\nblocks=3\n"); }),
              ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\n"); }), ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=ntheta_qc\n"); }),
              ErrorKind::Validation);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\neps_null=inf\n"); }),
              ErrorKind::Parameter);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\neps_null=0.5\n"); }),
              ErrorKind::Parameter);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=launch\n"); }), ErrorKind::Identifier);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=validate-schedule\ntheta=spiral:2\n"); }), ErrorKind::Identifier);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt:1\nclass=qc\n"); }), ErrorKind::Parameter);
    EXPECT_EQ(kind_of([] { parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\nformat=xml\n"); }),
              ErrorKind::Parameter);
}

TEST(RunSpec, RepeatableKeysAccumulate) {
    const auto s = parse_run_spec("command=classify\nsequence=sqrt\nsequence=log10,harmonic\nclass=qc\nclass=cesaro_qc\n");
    EXPECT_EQ(s.sequences.size(), 3u);
    EXPECT_EQ(s.classes.size(), 2u);
}

TEST(RunSpec, OverrideReplacesSingleKeys) {
    auto s = parse_run_spec("command=classify\nsequence=sqrt\nclass=qc\neps_null=0.02\n");
    apply_override(s, "eps_null=0.03");
    EXPECT_EQ(s.cfg.eps_null, 0.03);
    apply_override(s, "sequence=log10");
    EXPECT_EQ(s.sequences.size(), 2u);
    EXPECT_EQ(kind_of([&] { apply_override(s, "nokey"); }), ErrorKind::Syntax);
    EXPECT_EQ(kind_of([&] { apply_override(s, "nokey=1"); }), ErrorKind::Validation);
}

TEST(RunSpec, SequenceSpecForms) {
    EXPECT_EQ(SequenceSpec::parse("affine:3:5").args, (std::vector<double>{3, 5}));
    EXPECT_EQ(SequenceSpec::parse("file:/tmp/a:b.txt").path, "/tmp/a:b.txt");
    EXPECT_EQ(SequenceSpec::parse("block-gap:1:5").to_string(), "block-gap:1:5");
    EXPECT_EQ(SequenceSpec::parse("constant:0.1").to_string(), "constant:0.1");
}

TEST(RunSpec, ScheduleSpecForms) {
    EXPECT_EQ(ScheduleSpec::parse("factorial:12").r_max, 12);
    EXPECT_EQ(ScheduleSpec::parse("power:2").r_max, 0);
    EXPECT_EQ(ScheduleSpec::parse("explicit:0,1,4,9").breakpoints, (std::vector<Index>{0, 1, 4, 9}));
    EXPECT_EQ(ScheduleSpec::parse("explicit:0,1,4,9").to_string(), "explicit:0,1,4,9");
    EXPECT_EQ(kind_of([] { ScheduleSpec::parse("geometric"); }), ErrorKind::Syntax);
}

TEST(RunSpec, FamiliesExpand) {
    EXPECT_EQ(expand_family("catalog").size(), 13u);
    EXPECT_EQ(expand_family("catalog-qc").size(), 10u);
    EXPECT_EQ(kind_of([] { expand_family("all"); }), ErrorKind::Identifier);
}

TEST(RunSpec, SerializeRoundTripSimple) {
    const auto s = parse_run_spec("command=means\nsequence=sqrt\nmean=abel\nx=0.5,0.9\ndifference=1\nformat=csv\n");
    const auto text = serialize_run_spec(s);
    EXPECT_EQ(parse_run_spec(text), s);
    EXPECT_EQ(serialize_run_spec(parse_run_spec(text)), text);
}

TEST(RunSpec, FixtureCorpusRoundTrips) {
    std::size_t count = 0;
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(std::string(LACUNARY_TEST_DATA) + "/specs"))
        if (entry.path().extension() == ".spec") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& path : files) {
        SCOPED_TRACE(path.filename().string());
        const RunSpec s = parse_run_spec(slurp(path));
        const std::string text = serialize_run_spec(s);
        EXPECT_EQ(parse_run_spec(text), s);
        EXPECT_EQ(serialize_run_spec(parse_run_spec(text)), text);
        ++count;
    }
    EXPECT_GE(count, 50u);
}

TEST(RunSpec, HelpMentionsEveryKey) {
    const std::string help = run_spec_help();
    for (const char* key : {"command=", "sequence=", "family=", "theta=", "class=", "eps_null", "delta_away",
                            "tail_window", "decay_factor", "n_max", "r_max", "lambda_grid", "eps_grid", "format="})
        EXPECT_NE(help.find(key), std::string::npos) << key;
}
