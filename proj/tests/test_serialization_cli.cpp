#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ccr/errors.hpp"
#include "ccr/serialization.hpp"
#include "helpers.hpp"
#include "scenarios.hpp"

using namespace ccr;
using namespace ccr::test;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "ccr_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CCR_REDUCE_EXE) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST(Serialization, FieldRoundTrip) {
    FieldVector f = packet({0.1, -0.2, 0.3}, {0.5, 0.6, 0.7}, {0.25, -1.5});
    f = f + apply_group(BHPElement{2, 0.3, -0.1}, packet({1, 0, 0}, {1, 1, 1}));
    const auto back = field_from_json(json::parse(to_json(f).dump()));
    EXPECT_EQ(back.mass(), f.mass());
    EXPECT_EQ(back.terms(), f.terms());
}

TEST(Serialization, S0FlagIsVerified) {
    const auto s = antisymmetrize_kx(packet({0.1, -0.2, 0.3}, {0.5, 0.6, 0.7}));
    EXPECT_TRUE(field_from_json(to_json(s)).in_s0());
    json j = to_json(packet({0.1, -0.2, 0.3}, {0.5, 0.6, 0.7}));
    j["s0"] = true;
    EXPECT_THROW(field_from_json(j), ParseError);
}

TEST(Serialization, GroupElements) {
    const GroupElement r = make_rotation(1.25);
    EXPECT_EQ(group_element_from_json(to_json(r)), r);
    const GroupElement b = BHPElement{-3, 0.5, 2.0};
    EXPECT_EQ(group_element_from_json(to_json(b)), b);
    EXPECT_THROW(group_element_from_json(json{{"kind", "lorentz"}, {"params", json::object()}}), ParseError);
}

TEST(Serialization, NonFiniteNumbers) {
    EXPECT_EQ(to_json(cplx(INFINITY, NAN)).dump(), R"(["inf","nan"])");
}

TEST(Serialization, BadCorpus) {
    const auto p = scratch("bad.json");
    std::ofstream(p) << "{\"fields\": 3}";
    EXPECT_THROW(load_corpus(p), ParseError);
    std::ofstream(p) << "not json";
    EXPECT_THROW(load_corpus(p), ParseError);
    EXPECT_THROW(load_corpus(scratch("missing.json")), ParseError);
}

TEST(GenerateCorpus, DeterministicAndBounded) {
    const auto a = corpus_to_json(cli::generate_corpus(11, 8)).dump();
    EXPECT_EQ(a, corpus_to_json(cli::generate_corpus(11, 8)).dump());
    EXPECT_NE(a, corpus_to_json(cli::generate_corpus(12, 8)).dump());
    for (const auto& f : cli::generate_corpus(11, 8)) {
        const auto& p = f.terms().at(0).base;
        for (int i = 0; i < 3; ++i) {
            EXPECT_GE(p.center[i], -3.0);
            EXPECT_LE(p.center[i], 3.0);
            EXPECT_GE(p.width[i], 0.3);
            EXPECT_LE(p.width[i], 1.5);
        }
    }
    EXPECT_TRUE(cli::generate_corpus(1, 0).empty());
    EXPECT_THROW(cli::generate_corpus(1, 65), DomainError);
}

TEST(GenerateCorpus, S0ZeroModes) {
    for (const auto& f : cli::generate_corpus(5, 6, true)) {
        EXPECT_TRUE(f.in_s0());
        EXPECT_LT(std::abs(project_bhp(f, 4).at(0)), 1e-10);
    }
}

TEST(Cli, GenerateAndRunAreReproducible) {
    const auto corpus = scratch("gen.json"), again = scratch("gen2.json");
    ASSERT_EQ(run_cli("generate --seed 4 --size 3 --out " + corpus.string()), 0);
    ASSERT_EQ(run_cli("generate --seed 4 --size 3 --out " + again.string()), 0);
    EXPECT_EQ(slurp(corpus), slurp(again));

    const auto r1 = scratch("r1.json"), r2 = scratch("r2.json");
    EXPECT_EQ(run_cli("run --scenario weyl --seed 9 --corpus " + corpus.string() + " --out " + r1.string()), 0);
    EXPECT_EQ(run_cli("run --scenario weyl --seed 9 --corpus " + corpus.string() + " --out " + r2.string()), 0);
    EXPECT_EQ(slurp(r1), slurp(r2));
    const auto report = json::parse(slurp(r1));
    EXPECT_FALSE(report.contains("timestamp"));
    for (const auto& c : report.at("checks"))
        for (const char* key : {"name", "lhs", "rhs", "tol", "pass", "oracle"}) EXPECT_TRUE(c.contains(key)) << key;
}

TEST(Cli, EmptyCorpus) {
    const auto corpus = scratch("empty.json");
    ASSERT_EQ(run_cli("generate --seed 1 --size 0 --out " + corpus.string()), 0);
    EXPECT_EQ(json::parse(slurp(corpus)), json::parse(R"({"fields": []})"));
    EXPECT_EQ(run_cli("run --scenario bounds --corpus " + corpus.string() + " --out " + scratch("e.json").string()), 0);
}

TEST(Cli, ExitCodes) {
    const auto corpus = scratch("codes.json");
    ASSERT_EQ(run_cli("generate --seed 2 --size 1 --out " + corpus.string()), 0);
    const auto out = " --out " + scratch("x.json").string();
    EXPECT_EQ(run_cli("run --scenario nope --corpus " + corpus.string() + out), 2);
    EXPECT_EQ(run_cli("run --scenario bounds --corpus /nonexistent/c.json" + out), 2);
    EXPECT_EQ(run_cli("run --scenario bounds --n-max 0 --corpus " + corpus.string() + out), 2);
    EXPECT_EQ(run_cli("generate --seed 1 --size 65 --out " + scratch("y.json").string()), 2);
    EXPECT_EQ(run_cli("run --scenario bounds"), 2);
}

TEST(Cli, ZeroModeScenarioOnGenericPacket) {
    cli::ScenarioConfig cfg;
    cfg.scenario = "zero-mode";
    cfg.corpus = scratch("zm.json");
    save_json(cfg.corpus, corpus_to_json({packet({0.5, 1.0, -0.3}, {0.7, 0.9, 1.1}, {0.8, 0.3})}));
    const auto rep = cli::run_scenario(cfg);
    EXPECT_TRUE(rep.all_pass());
    bool found = false;
    for (const auto& c : rep.checks) found = found || c.name.rfind("diverges", 0) == 0;
    EXPECT_TRUE(found);
}

TEST(Cli, FailedCheckExitsOne) {
    // A field outside S0 fails the "in S0" check of the bhp-field scenario.
    const auto corpus = scratch("nots0.json");
    save_json(corpus, corpus_to_json({packet({0.5, 1.0, -0.3}, {0.7, 0.9, 1.1})}));
    EXPECT_EQ(run_cli("run --scenario bhp-field --corpus " + corpus.string() + " --out " + scratch("f.json").string()), 1);
}

TEST(Cli, TimestampIsOptIn) {
    const auto corpus = scratch("ts.json");
    save_json(corpus, corpus_to_json({}));
    const auto out = scratch("ts_out.json");
    ASSERT_EQ(run_cli("run --scenario weyl --timestamp --corpus " + corpus.string() + " --out " + out.string()), 0);
    EXPECT_TRUE(json::parse(slurp(out)).contains("timestamp"));
}
