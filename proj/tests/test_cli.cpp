// Runs the command-line tool as a subprocess.
#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const fs::path& cwd = fs::current_path()) {
  const std::string cmd =
      "cd '" + cwd.string() + "' && '" TAILTAU_CLI "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path only_file(const fs::path& dir, const std::string& ext) {
  fs::path found;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ext) found = e.path();
  }
  return found;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tailtau_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  fs::path dir_;
};

TEST_F(Cli, TheoryHrPrintsClosedForms) {
  const auto r = run("theory hr --gamma 1");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "gamma=1 tau=0.42758 chi=0.61708\n");
}

TEST_F(Cli, EstimateIdenticalColumns) {
  std::string csv = "u,v\n";
  for (int i = 0; i < 50; ++i) csv += std::to_string(i * 7 % 50) + "," + std::to_string(i * 7 % 50) + "\n";
  write("same.csv", csv);
  const auto r = run("estimate same.csv --q 0.9", dir_);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("tau_xy = 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("tau_yx = 1\n"), std::string::npos);
  EXPECT_NE(r.out.find("k = 5\n"), std::string::npos);
}

TEST_F(Cli, EstimateHandExample) {
  write("four.csv", "1,1\n2,4\n3,2\n4,3\n");
  const auto r = run("estimate four.csv --k 3 --out res.csv", dir_);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("tau_xy = -0.33333\n"), std::string::npos);
  const auto res = slurp(dir_ / "res.csv");
  EXPECT_NE(res.find(",3,-0.3333333333333333,"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "res.csv.meta"));
}

TEST_F(Cli, EstimateAtZeroIsKendall) {
  // Kendall's tau of this sample is 1/3 (4 concordant, 2 discordant pairs).
  write("four.csv", "1,1\n2,4\n3,2\n4,3\n");
  const auto r = run("estimate four.csv --q 0", dir_);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("k = 4\n"), std::string::npos);
  EXPECT_NE(r.out.find("tau_xy = 0.33333\n"), std::string::npos);
  EXPECT_NE(r.out.find("tau_yx = 0.33333\n"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  write("bad.csv", "1,2\n3,x\n");
  write("four.csv", "1,1\n2,4\n3,2\n4,3\n");
  EXPECT_EQ(run("estimate bad.csv", dir_).code, 2);
  EXPECT_EQ(run("estimate four.csv --k 1", dir_).code, 3);
  EXPECT_EQ(run("estimate four.csv --q 0.9", dir_).code, 3);
  EXPECT_EQ(run("no-such-command").code, 2);
  EXPECT_EQ(run("simulate hr --gamma -1").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("theory hr --help").code, 0);
}

TEST_F(Cli, SimulateIsSeeded) {
  const auto a = run("simulate asym-logistic --n 20 --seed 4 --beta1 0.3");
  const auto b = run("simulate asym-logistic --n 20 --seed 4 --beta1 0.3");
  const auto c = run("simulate asym-logistic --n 20 --seed 5 --beta1 0.3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  EXPECT_EQ(a.out.substr(0, 4), "x,y\n");
}

TEST_F(Cli, ExperimentGridDeskIsReproducible) {
  ASSERT_EQ(run("experiment grid --profile desk --seed 7 --out-dir one", dir_).code, 0);
  ASSERT_EQ(run("experiment grid --profile desk --seed 7 --out-dir two --threads 1", dir_).code, 0);
  const auto csv1 = only_file(dir_ / "one", ".csv");
  const auto csv2 = only_file(dir_ / "two", ".csv");
  ASSERT_FALSE(csv1.empty());
  EXPECT_EQ(csv1.filename(), csv2.filename());
  EXPECT_EQ(slurp(csv1), slurp(csv2));
  const auto body = slurp(csv1);
  EXPECT_EQ(std::count(body.begin(), body.end(), '\n'), 487);

  // The metadata file alone reproduces the run.
  const auto meta = only_file(dir_ / "one", ".meta");
  const auto text = slurp(meta);
  EXPECT_NE(text.find("# seed: 7"), std::string::npos);
  EXPECT_NE(text.find("# config_hash: "), std::string::npos);
  fs::remove(csv1);
  ASSERT_EQ(run("--config " + meta.string(), dir_).code, 0);
  EXPECT_EQ(slurp(csv1), body);
}

TEST_F(Cli, FlagsOverrideConfigFile) {
  write("run.ini", "[theory.hr]\ngamma=4\n");
  EXPECT_EQ(run("--config run.ini", dir_).out, "gamma=4 tau=0.2554 chi=0.31731\n");
  EXPECT_EQ(run("--config run.ini theory hr --gamma 1", dir_).out,
            "gamma=1 tau=0.42758 chi=0.61708\n");
}

TEST_F(Cli, HydroThreeStationFixture) {
  ASSERT_EQ(run("simulate river --basins 1 --per-basin 3 --years 10 --out-dir net", dir_).code, 0);
  const auto r = run("hydro --stations net/stations.csv --relations net/relations.csv --q 0.98 "
                     "--out-dir out",
                     dir_);
  EXPECT_EQ(r.code, 0);
  const auto pairs = slurp(dir_ / "out" / "pairs.csv");
  EXPECT_EQ(std::count(pairs.begin(), pairs.end(), '\n'), 4);
  EXPECT_EQ(pairs.substr(0, pairs.find('\n')),
            "station_a,station_b,relation,overlap_days,q,k,tau_ab,tau_ba,asymmetry,max_tau,arrow,"
            "warnings");
  EXPECT_TRUE(fs::exists(dir_ / "out" / "hydro.meta"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "groups.csv"));
}

TEST_F(Cli, HydroTooFewStations) {
  write("d.csv", "station_id,date,flow_m3s\nS1,2000-01-01,1\n");
  write("s.csv", "station_id,basin_id,name\nS1,B,one\n");
  write("r.csv", "station_a,station_b,relation\n");
  EXPECT_EQ(run("hydro --discharge d.csv --stations s.csv --relations r.csv", dir_).code, 3);
}

}  // namespace
