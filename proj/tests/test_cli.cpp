#include "cli.hpp"
#include "commands.hpp"
#include "config.hpp"

#include "affrigid/spectra.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace affrigid;
using namespace affrigid::app;

namespace {

struct Invocation {
    int code = -1;
    std::string out;
    std::string err;
};

Invocation cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "affrigid");
    std::vector<char*> argv;
    for (auto& a : args)
        argv.push_back(a.data());
    std::ostringstream out, err;
    Invocation r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override
    {
        dir = fs::temp_directory_path()
            / ("affrigid_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    fs::path write_config(const json& j, const std::string& name = "config.json")
    {
        const fs::path p = dir / name;
        std::ofstream(p) << j.dump(2);
        return p;
    }

    std::vector<std::vector<std::string>> table(const fs::path& p)
    {
        std::vector<std::vector<std::string>> rows;
        std::istringstream in(slurp(p));
        for (std::string line; std::getline(in, line);) {
            std::vector<std::string> cells;
            std::istringstream ls(line);
            for (std::string c; std::getline(ls, c, '\t');)
                cells.push_back(c);
            rows.push_back(cells);
        }
        return rows;
    }

    fs::path dir;
};

const json kMinimal = {{"model", "AffAff"}, {"dimension", 2}, {"channels", {{0, 0}}}};

} // namespace

TEST_F(CliTest, MinimalConfigWritesOneRowSet)
{
    const auto r = cli({"run", "--config", write_config(kMinimal).string(), "--output-dir", dir.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = table(dir / "spectrum.tsv");
    ASSERT_EQ(rows.size(), 1u + 5u);
    EXPECT_EQ(rows[0][0], "model");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i][0], "AffAff");
        EXPECT_EQ(rows[i][1], "0");
        EXPECT_EQ(rows[i][2], "0");
        EXPECT_EQ(rows[i][4], std::to_string(i - 1));
    }
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest["status"], "ok");
    EXPECT_EQ(manifest["command"], "run");
    EXPECT_TRUE(manifest.contains("version"));
    EXPECT_TRUE(manifest["timings"].contains("total_seconds"));
}

TEST_F(CliTest, DegenerateMuIsUsageErrorNamingMu)
{
    json c = {{"model", "MetAff"}, {"params", {{"I", 1.5}, {"A", 1.5}}}, {"channels", {{1, 1}}}};
    const auto r = cli({"run", "--config", write_config(c).string(), "--output-dir", dir.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("params"), std::string::npos) << r.err;
    EXPECT_NE(r.err.find("mu"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "spectrum.tsv"));
}

TEST_F(CliTest, ScanClassificationMatchesClassifier)
{
    json c = {{"model", "AffAff"},
              {"channels", {{"m", {-3, 3}}, {"n", {-3, 3}}}},
              {"grid", {{"X", 30.0}, {"h", 0.1}}},
              {"solver", {{"count", 2}}}};
    const auto r = cli({"scan-threshold", "--config", write_config(c).string(), "-o", dir.string(), "-j", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = table(dir / "scan.tsv");
    ASSERT_EQ(rows.size(), 1u + 49u);
    EXPECT_EQ(rows[0][3], "classification");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int m = std::stoi(rows[i][1]), n = std::stoi(rows[i][2]);
        EXPECT_EQ(rows[i][3], to_string(classify_channel(m, n))) << m << " " << n;
        EXPECT_EQ(rows[i][9], "-");
    }
    // deterministic ordering by channel label
    EXPECT_EQ(rows[1][1], "-3");
    EXPECT_EQ(rows[1][2], "-3");
    EXPECT_EQ(rows[49][1], "3");
    EXPECT_EQ(rows[49][2], "3");
}

TEST_F(CliTest, RerunsAreByteIdenticalAcrossParallelism)
{
    json c = {{"model", "AffAff"}, {"channels", {{"m", {0, 2}}, {"n", {0, 1}}}}, {"grid", {{"h", 0.08}}}};
    const auto cfg = write_config(c).string();
    ASSERT_EQ(cli({"run", "-c", cfg, "-o", (dir / "a").string(), "-j", "1"}).code, 0);
    ASSERT_EQ(cli({"run", "-c", cfg, "-o", (dir / "b").string(), "-j", "3"}).code, 0);
    EXPECT_EQ(slurp(dir / "a" / "spectrum.tsv"), slurp(dir / "b" / "spectrum.tsv"));
}

TEST_F(CliTest, ManifestReplayReproducesTable)
{
    json c = {{"model", "MetAff"},
              {"params", {{"I", 2.0}, {"A", 1.0}}},
              {"channels", {{2, 1}, {0, 0}}},
              {"grid", {{"h", 0.08}}},
              {"solver", {{"q_sector", true}, {"form", "symmetrized"}}}};
    ASSERT_EQ(cli({"run", "-c", write_config(c).string(), "-o", (dir / "first").string()}).code, 0);
    const auto r = cli({"run", "-c", (dir / "first" / "manifest.json").string(), "-o", (dir / "replay").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(slurp(dir / "first" / "spectrum.tsv"), slurp(dir / "replay" / "spectrum.tsv"));
    const auto rows = table(dir / "replay" / "spectrum.tsv");
    EXPECT_EQ(rows.size(), 1u + 2u * 2u * 5u); // two channels, x and q sectors
}

TEST_F(CliTest, OutputDirectoryDefaultsToEnvironment)
{
    ::setenv("AFFRIGID_OUTPUT_DIR", (dir / "env").string().c_str(), 1);
    const auto r = cli({"run", "-c", write_config(kMinimal).string()});
    ::unsetenv("AFFRIGID_OUTPUT_DIR");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "env" / "spectrum.tsv"));
}

TEST_F(CliTest, VerifyAllPasses)
{
    const auto r = cli({"verify", "all"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("PASS measures.volume[SO3]"), std::string::npos);
    EXPECT_EQ(cli({"verify", "algebra", "--seed", "7"}).out, cli({"verify", "algebra", "--seed", "7"}).out);
}

TEST_F(CliTest, UnknownSuiteAndMissingConfigAreUsageErrors)
{
    EXPECT_EQ(cli({"verify", "nonsense"}).code, 2);
    EXPECT_EQ(cli({"run"}).code, 2);
    EXPECT_EQ(cli({"run", "-c", (dir / "missing.json").string()}).code, 2);
    EXPECT_EQ(cli({}).code, 2);
}

TEST_F(CliTest, SpatialRunWithCapacityFailureIsPartial)
{
    json c = {{"model", "AffAff"},
              {"dimension", 3},
              {"target", "DoubleCover"},
              {"channels", {{"s", {0, 1}}, {"j", {0, 1}}}},
              {"grid", {{"count", {5, 5, 5}}}},
              {"limits", {{"max_twice_spin", 1}}},
              {"solver", {{"count", 2}}}};
    const auto r = cli({"run", "-c", write_config(c).string(), "-o", dir.string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("capacity"), std::string::npos) << r.err;
    const json manifest = json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest["status"], "partial");
    // five admissible pairs; the three involving spin 1 exceed the limit
    EXPECT_EQ(manifest["errors"].size(), 3u);
    EXPECT_EQ(table(dir / "spectrum.tsv").size(), 1u + 2u * 2u);
}

TEST(Config, RoundTripsThroughJson)
{
    json c = {{"model", "AffMet"},
              {"dimension", 3},
              {"params", {{"I", 2.0}, {"A", 1.0}, {"B", 0.25}}},
              {"target", "DoubleCover"},
              {"channels", json::array({json::array({"1/2", "3/2"}), json::array({"1", 0}), json::array({0.5, "1/2"})})},
              {"potentials", {{"dilatation", {{"kind", "harmonic"}, {"k", 2.0}, {"x0", 0.5}}}}},
              {"seed", 42}};
    const RunConfig parsed = parse_config(c);
    ASSERT_EQ(parsed.spatial_channels.size(), 3u);
    EXPECT_EQ(parsed.spatial_channels.front().first, RepLabel::su2(1));
    const json canonical = to_json(parsed);
    EXPECT_EQ(to_json(parse_config(canonical)), canonical);
    EXPECT_EQ(canonical["seed"], 42);
}

TEST(Config, FieldErrorsNameThePath)
{
    auto message = [](const json& j) {
        try {
            parse_config(j);
        } catch (const UsageError& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    EXPECT_EQ(message({{"channels", {{0, 0}}}, {"grdi", json::object()}}).rfind("grdi", 0), 0u);
    EXPECT_EQ(message({{"channels", {{0, 0}}}, {"grid", {{"h", "fine"}}}}).rfind("grid.h", 0), 0u);
    EXPECT_EQ(message({{"channels", {{0, 0}}}, {"model", "Rigid"}}).rfind("model", 0), 0u);
    EXPECT_EQ(message({{"channels", {{0, 0}}}, {"potentials", {{"shear", {{"kind", "cubic"}}}}}})
                  .rfind("potentials.shear.kind", 0),
              0u);
    EXPECT_EQ(message({{"channels", {{"m", {2, 1}}, {"n", {0, 0}}}}}).rfind("channels.m", 0), 0u);
    // half-integer labels are excluded on GL+(3)
    const std::string ss =
        message({{"dimension", 3},
                 {"channels", json::array({json::array({"1", "1"}), json::array({"1/2", "1/2"})})},
                 {"target", "GLplus"}});
    EXPECT_EQ(ss.rfind("channels[1]", 0), 0u) << ss;
    EXPECT_NE(ss.find("superselection"), std::string::npos);
    EXPECT_EQ(message({{"dimension", 3}, {"channels", {{0, 0}}}, {"solver", {{"count", 11}}}}).rfind("solver.count", 0),
              0u);
}

TEST(Config, RangesKeepOnlyAdmissibleLabels)
{
    const RunConfig c = parse_config({{"dimension", 3}, {"channels", {{"s", {0, 2}}, {"j", {0, 2}}}}});
    // GL+(3): integer spins only
    ASSERT_EQ(c.spatial_channels.size(), 9u);
    for (const auto& [a, b] : c.spatial_channels)
        EXPECT_TRUE(a.is_integer() && b.is_integer());
    const RunConfig p = parse_config({{"channels", {{1, 1}, {0, 0}, {1, 1}}}});
    ASSERT_EQ(p.planar_channels.size(), 2u);
    EXPECT_EQ(p.planar_channels[0], std::make_pair(0, 0));
}
