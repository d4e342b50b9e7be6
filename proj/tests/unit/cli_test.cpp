#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include <nlohmann/json.hpp>

#include "nclp/io.hpp"
#include "nclp/lp.hpp"
#include "nclp_cli/cli.hpp"

using nlohmann::json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = nclp::cli::run_command(args, in, out, err);
    return {code, out.str(), err.str()};
}

json parse(const CliRun& r) { return json::parse(r.out); }

}  // namespace

TEST(Cli, ExampleTransposeCertifiesSeparating) {
    const CliRun ex = run({"example", "transpose", "--p", "2"});
    ASSERT_EQ(ex.code, 0) << ex.err;
    const CliRun c = run({"certify"}, ex.out);
    ASSERT_EQ(c.code, 0) << c.err;
    const json j = parse(c);
    EXPECT_EQ(j["route"], "separating");
    EXPECT_NEAR(j["interval"]["lower"].get<double>(), 1.0, 1e-9);
    EXPECT_NEAR(j["interval"]["upper"].get<double>(), 1.0, 1e-9);
    EXPECT_TRUE(j.contains("evidence"));
}

TEST(Cli, GeneratedPositiveSequenceIsExact) {
    const CliRun g = run({"gen", "--kind", "positive-seq", "--n", "3", "--seed", "7"});
    ASSERT_EQ(g.code, 0) << g.err;
    const CliRun s = run({"seqnorm", "--p", "2"}, g.out);
    ASSERT_EQ(s.code, 0) << s.err;
    const json j = parse(s);
    EXPECT_TRUE(j["certified_exact"].get<bool>());
    const auto inst = nclp::io::parse_instance(g.out);
    const double ref = nclp::lp_norm(inst.sequence("x").sum(), 2.0);
    EXPECT_NEAR(j["value"].get<double>(), ref, 1e-9 * ref);
}

TEST(Cli, RotationHasNoFactorization) {
    const CliRun ex = run({"example", "rotation", "--theta", "0.7854"});
    ASSERT_EQ(ex.code, 0) << ex.err;
    const CliRun c = run({"classify-l2"}, ex.out);
    EXPECT_EQ(c.code, 1) << c.err;
    const json j = parse(c);
    EXPECT_EQ(j["verdict"], "no_ytf");
    EXPECT_TRUE(j["evidence"].contains("witness"));
}

TEST(Cli, DecisionExitCodes) {
    const CliRun d = run({"gen", "--kind", "disjoint-pair", "--dim", "3", "--seed", "2"});
    EXPECT_EQ(run({"disjoint"}, d.out).code, 0);
    EXPECT_EQ(run({"dinq"}, d.out).code, 0);
    const CliRun o = run({"gen", "--kind", "overlapping-pair", "--dim", "2", "--seed", "2"});
    EXPECT_EQ(run({"disjoint"}, o.out).code, 1);
    const CliRun r = run({"example", "rotation"});
    EXPECT_EQ(run({"separating"}, r.out).code, 1);
    EXPECT_EQ(run({"yeadon"}, r.out).code, 1);
    const CliRun t = run({"example", "transpose"});
    EXPECT_EQ(run({"separating"}, t.out).code, 0);
    EXPECT_EQ(run({"yeadon"}, t.out).code, 0);
}

TEST(Cli, SampledOnlyIsUndetermined) {
    const std::string inst = R"({"version": "nclp-instance/1",
        "algebras": {"M": {"blocks": [{"dim": 1, "weight": 1}, {"dim": 1, "weight": 1}]},
                     "N": {"blocks": [{"dim": 2, "weight": 1}]}},
        "maps": {"T": {"domain": "M", "codomain": "N", "p": 2,
                       "action": [[[1, 0], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [1, 0]], [[1, 0], [-1, 0]]]}}})";
    const CliRun r = run({"certify"}, inst);
    EXPECT_EQ(r.code, 2) << r.err;
    EXPECT_EQ(parse(r)["route"], "sampled_only");
    EXPECT_TRUE(parse(r)["interval"]["upper"].is_null());
}

TEST(Cli, InputErrorsExitThree) {
    EXPECT_EQ(run({"norm"}, "{").code, 3);
    EXPECT_EQ(run({"norm"}, R"({"version": "nclp-instance/1"})").code, 3);
    EXPECT_EQ(run({"bogus"}).code, 3);
    EXPECT_EQ(run({"gen", "--kind", "nope"}).code, 3);
    EXPECT_EQ(run({"example", "transpose", "--p", "0.5"}).code, 3);
    const CliRun r = run({"norm"}, "{");
    EXPECT_TRUE(r.out.empty());
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, OutputIsDeterministic) {
    const CliRun a = run({"example", "positive-map", "--seed", "4"});
    const CliRun b = run({"example", "positive-map", "--seed", "4"});
    EXPECT_EQ(a.out, b.out);
    const CliRun c1 = run({"certify", "--seed", "3"}, a.out);
    const CliRun c2 = run({"certify", "--seed", "3"}, a.out);
    EXPECT_EQ(c1.out, c2.out);
    EXPECT_EQ(c1.code, c2.code);
}

TEST(Cli, SeedFromEnvironmentAndFlagWins) {
    const CliRun base = run({"gen", "--kind", "element", "--seed", "11"});
    ::setenv("NCLP_SEED", "11", 1);
    const CliRun env = run({"gen", "--kind", "element"});
    const CliRun flag = run({"gen", "--kind", "element", "--seed", "12"});
    ::unsetenv("NCLP_SEED");
    EXPECT_EQ(base.out, env.out);
    EXPECT_NE(flag.out, env.out);
    EXPECT_EQ(flag.out, run({"gen", "--kind", "element", "--seed", "12"}).out);
}

TEST(Cli, EveryKindProducesValidJson) {
    for (const std::string kind : {"positive-seq", "seq", "disjoint-pair", "overlapping-pair", "element", "yeadon",
                                   "commutative", "cp", "positive-map", "isometry"}) {
        const CliRun g = run({"gen", "--kind", kind});
        ASSERT_EQ(g.code, 0) << kind << g.err;
        EXPECT_NO_THROW(nclp::io::parse_instance(g.out)) << kind;
    }
}

TEST(Cli, SuiteFilter) {
    const CliRun r = run({"suite", "--only", "dinq", "--scale", "0.05"});
    ASSERT_NE(r.code, 3) << r.err;
    const json j = parse(r);
    ASSERT_FALSE(j["properties"].empty());
    for (const auto& p : j["properties"]) EXPECT_EQ(p["id"].get<std::string>().rfind("dinq.", 0), 0u);
    EXPECT_FALSE(j["properties"][0].contains("wall_seconds"));
    EXPECT_EQ(run({"suite", "--only", "nothing"}).code, 3);
}

TEST(Cli, OutFlagWritesFile) {
    const std::string path = ::testing::TempDir() + "nclp_cli_out.json";
    const CliRun r = run({"example", "identity", "--out", path});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    const CliRun n = run({"certify", path});
    EXPECT_EQ(n.code, 0) << n.err;
}
