#include "ndepth/cli.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ndepth;
using nlohmann::json;

namespace {

const std::filesystem::path fixtures = NDEPTH_FIXTURES;
const std::filesystem::path golden = NDEPTH_GOLDEN;

struct Outcome
{
	int code;
	std::string out, err;
};

Outcome ndepth_cli(std::vector<std::string> args)
{
	std::ostringstream out, err;
	int code = run(args, out, err);
	return {code, out.str(), err.str()};
}

std::string fixture(const std::string &name) { return (fixtures / name).string(); }

/// Set NDEPTH_UPDATE_GOLDEN=1 to rewrite the expected files.
void expect_golden(const std::string &name, std::vector<std::string> args)
{
	args.insert(args.begin(), "--json");
	Outcome r = ndepth_cli(args);
	json got = json::parse(r.out);
	got.erase("file");
	auto path = golden / (name + ".json");
	if (std::getenv("NDEPTH_UPDATE_GOLDEN"))
		std::ofstream(path) << got.dump(2) << "\n";
	std::ifstream in(path);
	ASSERT_TRUE(in) << "missing " << path;
	EXPECT_EQ(got, json::parse(in)) << name;
}

} // namespace

TEST(Cli, ThreeAssocPassesBoth)
{
	Outcome r = ndepth_cli({"check", fixture("three_assoc.json"), "--both"});
	EXPECT_EQ(r.code, exit_pass) << r.err;
	EXPECT_EQ(ndepth_cli({"check", fixture("three_assoc.json"), "--strict"}).code, exit_fail);
	EXPECT_EQ(ndepth_cli({"check", fixture("three_assoc.json"), "--corestriction"}).code, exit_pass);
}

TEST(Cli, McOracleEqualAtTwoTwo)
{
	Outcome r = ndepth_cli({"mc", "-N", "2", "-M", "2", "--oracle"});
	EXPECT_EQ(r.code, exit_pass);
	EXPECT_NE(r.out.find("oracle: EQUAL"), std::string::npos);
	EXPECT_NE(r.out.find("c_0 = e^(0,0) + e^(1)"), std::string::npos);
}

TEST(Cli, McOracleDifferentExitsOne)
{
	Outcome r = ndepth_cli({"mc", "-N", "3", "-M", "4", "--oracle"});
	EXPECT_EQ(r.code, exit_fail);
	EXPECT_NE(r.out.find("oracle: DIFFERENT"), std::string::npos);
}

TEST(Cli, TreeCounts)
{
	Outcome r = ndepth_cli({"trees", "--leaves", "3", "--vertices", "2"});
	EXPECT_EQ(r.code, exit_pass);
	EXPECT_EQ(r.out.rfind("6 trees", 0), 0u) << r.out;
	EXPECT_EQ(ndepth_cli({"trees", "--leaves", "2", "--unary", "1", "--binary", "1"}).out.rfind("3 trees", 0), 0u);
}

TEST(Cli, ExitCodes)
{
	EXPECT_EQ(ndepth_cli({"check", fixture("three_chain.json"), "--corestriction"}).code, exit_pass);
	EXPECT_EQ(ndepth_cli({"check", fixture("three_chain.json"), "-N", "2"}).code, exit_fail);
	EXPECT_EQ(ndepth_cli({"deform", fixture("dual_numbers_noncocycle.json"), "-M", "2", "--full", "2"}).code, exit_fail);
	EXPECT_EQ(ndepth_cli({"deform", fixture("dual_numbers_cocycle.json"), "-M", "2", "--full", "2"}).code, exit_pass);

	Outcome unknown = ndepth_cli({"frobnicate"});
	EXPECT_EQ(unknown.code, exit_input);
	EXPECT_NE(unknown.err.find("unknown subcommand 'frobnicate'"), std::string::npos);
	EXPECT_EQ(ndepth_cli({}).code, exit_input);
	EXPECT_EQ(ndepth_cli({"mc", "-N", "2"}).code, exit_input);
	EXPECT_EQ(ndepth_cli({"check", fixture("missing.json")}).code, exit_input);
	EXPECT_EQ(ndepth_cli({"check", fixture("three_assoc.json"), "--strict", "--both"}).code, exit_input);
	EXPECT_EQ(ndepth_cli({"operad", "bogus", "-N", "2", "--max", "3"}).code, exit_input);
	EXPECT_EQ(ndepth_cli({"deform", fixture("unital_line.json"), "-M", "1"}).code, exit_input);
	EXPECT_EQ(ndepth_cli({"--help"}).code, exit_pass);
}

TEST(Cli, PreconditionFailureExitsOne)
{
	Outcome r = ndepth_cli({"deform", fixture("three_assoc.json"), "-M", "3", "--truncation", "5"});
	EXPECT_EQ(r.code, exit_fail);
	EXPECT_NE(r.err.find("precondition failed"), std::string::npos);
}

TEST(Cli, EndAlgebraWritesDocument)
{
	auto path = std::filesystem::temp_directory_path() / "ndepth_end.json";
	Outcome r = ndepth_cli({"endalg", fixture("zero_line.json"), "--output", path.string()});
	EXPECT_EQ(r.code, exit_pass) << r.err;
	EXPECT_EQ(ndepth_cli({"check", path.string()}).code, exit_pass);
	std::filesystem::remove(path);
}

TEST(CliGolden, Json)
{
	expect_golden("check_three_assoc", {"check", fixture("three_assoc.json"), "--both"});
	expect_golden("check_three_chain", {"check", fixture("three_chain.json"), "--corestriction"});
	expect_golden("cohomology_three_chain", {"cohomology", fixture("three_chain.json"), "--complex"});
	expect_golden("mc_2_3", {"mc", "-N", "2", "-M", "3", "--oracle"});
	expect_golden("trees_3_2", {"trees", "--leaves", "3", "--vertices", "2"});
	expect_golden("operad_ndga_2", {"operad", "ndga", "-N", "2", "--max", "4"});
	expect_golden("series_ndga_3", {"series", "ndga", "-N", "3", "--order", "6"});
	expect_golden("deform_square_nilpotent", {"deform", fixture("square_nilpotent.json"), "-M", "3", "--search-proper"});
	expect_golden("deform_dual_numbers", {"deform", fixture("dual_numbers_cocycle.json"), "-M", "2", "--full", "2"});
}
