#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <locale>
#include <sstream>

#include "evanesim/app/emit.hpp"
#include "evanesim/app/run.hpp"
#include "evanesim/errors.hpp"

using namespace evanesim;
using namespace evanesim::app;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string second_line(const std::string& csv) {
  const auto a = csv.find('\n') + 1;
  return csv.substr(a, csv.find('\n', a) - a);
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("evanesim_test_" + name);
  fs::remove_all(dir);
  return dir;
}

// A German-style numpunct: "," decimal point, "." grouping.
struct CommaDecimal : std::numpunct<char> {
  char do_decimal_point() const override { return ','; }
  char do_thousands_sep() const override { return '.'; }
  std::string do_grouping() const override { return "\3"; }
};

}  // namespace

TEST(Run, TimingTableHeader) {
  const auto bundle = run(parse_config("{}"));
  const auto* timing = bundle.find("timing");
  ASSERT_NE(timing, nullptr);
  const auto csv = table_to_csv(*timing);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "# evanesim v0.1.0");
  EXPECT_EQ(second_line(csv), "d[m],tau_t[s],tau_r[s],ratio[-]");
  ASSERT_EQ(timing->rows.size(), 1u);
}

TEST(Run, TimingAndGhColumns) {
  const auto bundle = run(parse_config(R"({"outputs": "timing,gh"})"));
  const auto* asym = bundle.find("timing_asymptote");
  const auto* gh = bundle.find("gh");
  ASSERT_NE(asym, nullptr);
  ASSERT_NE(gh, nullptr);
  EXPECT_EQ(asym->columns[0].header(), "tau_asym[s]");
  EXPECT_EQ(gh->columns[1].header(), "shift[m]");
  const double ratio = std::get<double>(asym->rows[0][1]);
  EXPECT_GE(ratio, 1.0 / 3.0);
  EXPECT_LE(ratio, 3.0);
  const double shift_over_lambda = std::get<double>(gh->rows[0][2]);
  EXPECT_GE(shift_over_lambda, 0.3);
  EXPECT_LE(shift_over_lambda, 3.0);
}

TEST(Run, GapSweepGivesOneHartmanRowPerPoint) {
  const auto bundle = run(parse_config(R"({"sweep": "gap:0:3lambda:64", "outputs": "hartman"})"), 4);
  const auto* hartman = bundle.find("hartman");
  ASSERT_NE(hartman, nullptr);
  EXPECT_EQ(hartman->rows.size(), 64u);
  EXPECT_EQ(hartman->columns[0].header(), "gap[m]");
  for (std::size_t i = 1; i < hartman->rows.size(); ++i) {
    EXPECT_GT(std::get<double>(hartman->rows[i][0]), std::get<double>(hartman->rows[i - 1][0]));
  }
}

TEST(Run, PulseOutputHasThreeSignalsAndArrivals) {
  const auto bundle = run(parse_config(R"({"outputs": "pulse", "params": {"gap": "32.8mm"}})"));
  const auto* samples = bundle.find("pulse");
  const auto* arrivals = bundle.find("pulse_arrivals");
  ASSERT_NE(samples, nullptr);
  ASSERT_NE(arrivals, nullptr);
  EXPECT_EQ(samples->columns[1].name, "incident");
  EXPECT_EQ(samples->columns[2].name, "reflected");
  EXPECT_EQ(samples->columns[3].name, "transmitted");
  ASSERT_EQ(arrivals->rows.size(), 3u);
  const double reflected = std::get<double>(arrivals->rows[1][1]);
  const double transmitted = std::get<double>(arrivals->rows[2][1]);
  EXPECT_LT(std::abs(reflected - transmitted), 22e-12);
}

TEST(Run, EveryScenarioRunsItsDefaults) {
  for (const char* s : {"ftir", "waveguide", "lattice", "acoustic", "quantum"}) {
    const auto bundle =
        run(parse_config(std::string(R"({"outputs": "scatter,timing,hartman", "scenario": ")") + s + "\"}"));
    EXPECT_EQ(bundle.tables.size(), 4u) << s;
    for (const auto& t : bundle.tables) {
      for (const auto& c : t.columns) EXPECT_FALSE(c.name.empty());
    }
  }
}

TEST(Run, QuantumUsesNaturalUnits) {
  const auto bundle = run(parse_config(R"({"scenario": "quantum", "outputs": "scatter,timing"})"));
  EXPECT_EQ(bundle.find("scatter")->columns[0].header(), "E[a.u.]");
  EXPECT_EQ(bundle.find("timing")->columns[1].header(), "tau_t[a.u.]");
}

TEST(Run, FailureNamesTheSweepPoint) {
  const auto config = parse_config(
      R"({"scenario": "waveguide", "sweep": "narrow:10mm:50mm:5", "outputs": "timing"})");
  try {
    run(config, 3);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    EXPECT_NE(std::string(e.what()).find("sweep point 3 (narrow=0.04"), std::string::npos) << e.what();
  }
}

TEST(Run, NonEvanescentHartmanIsADomainError) {
  const auto config = parse_config(R"({"params": {"angle": 30}, "outputs": "hartman"})");
  try {
    run(config);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotEvanescent);
  }
}

TEST(Emit, ByteIdenticalAcrossWorkerCounts) {
  const auto config = parse_config(
      R"({"sweep": "gap:0:2lambda:24", "outputs": "scatter,timing,hartman,gh,virtuality",
          "params": {"points": 31}})");
  const auto a = scratch("w1");
  const auto b = scratch("w8");
  const auto files_a = emit(run(config, 1), Format::Csv, a);
  const auto files_b = emit(run(config, 8), Format::Csv, b);
  ASSERT_EQ(files_a.size(), files_b.size());
  for (std::size_t i = 0; i < files_a.size(); ++i) {
    EXPECT_EQ(files_a[i].filename(), files_b[i].filename());
    EXPECT_EQ(slurp(files_a[i]), slurp(files_b[i])) << files_a[i];
  }
  const auto ja = emit(run(config, 2), Format::Json, a);
  const auto jb = emit(run(config, 5), Format::Json, b);
  EXPECT_EQ(slurp(ja[0]), slurp(jb[0]));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Emit, JsonRoundTripIsIdentity) {
  const auto config = parse_config(
      R"({"sweep": "gap:0:1lambda:6", "outputs": "timing,hartman,gh,virtuality", "format": "json"})");
  const auto bundle = run(config, 2);
  // The zero gap has no reflection phase: NaN must survive the trip.
  EXPECT_TRUE(std::isnan(std::get<double>(bundle.find("timing")->rows[0][3])));
  const auto text = bundle_to_json(bundle).dump();
  const auto back = bundle_from_json(nlohmann::json::parse(text));
  EXPECT_TRUE(back == bundle);
}

TEST(Emit, CsvIgnoresTheGlobalLocale) {
  const auto bundle = run(parse_config(R"({"outputs": "scatter", "params": {"points": 5}})"));
  const auto before = table_to_csv(bundle.tables[0]);
  const auto previous = std::locale::global(std::locale(std::locale::classic(), new CommaDecimal));
  const auto after = table_to_csv(bundle.tables[0]);
  std::locale::global(previous);
  EXPECT_EQ(before, after);
  const auto body = before.substr(before.find('\n', before.find('\n') + 1) + 1);
  const auto first_row = body.substr(0, body.find('\n'));
  EXPECT_EQ(std::count(first_row.begin(), first_row.end(), ','), 8);
  EXPECT_NE(first_row.find('.'), std::string::npos);
}

TEST(Emit, CsvWritesProvenanceAndConfigEcho) {
  const auto dir = scratch("prov");
  const auto config = parse_config(R"({"outputs": "timing"})");
  emit(run(config), Format::Csv, dir);
  const auto prov = slurp(dir / "provenance.csv");
  EXPECT_NE(prov.find("version,0.1.0"), std::string::npos);
  EXPECT_NE(prov.find("convention_hash,"), std::string::npos);
  EXPECT_TRUE(parse_config(std::string_view(slurp(dir / "config.json"))) == config);
  fs::remove_all(dir);
}

TEST(Emit, UnwritablePathIsReported) {
  const auto file = scratch("blocker");
  std::ofstream(file) << "x";
  try {
    emit(run(parse_config("{}")), Format::Csv, file / "sub");
    FAIL();
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find(file.string()), std::string::npos);
  }
  fs::remove(file);
}
