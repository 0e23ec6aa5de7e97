#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using morlab::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("morlab_cli_" + name)).string();
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, UnknownSubcommand) {
  const Outcome r = call({"frobnicate"});
  EXPECT_EQ(r.code, morlab::cli::kConfigError);
  EXPECT_NE(r.err.find("unknown subcommand 'frobnicate'"), std::string::npos) << r.err;
  EXPECT_EQ(call({}).code, morlab::cli::kConfigError);
}

TEST(Cli, BadExponentsNameTheRelation) {
  const Outcome r = call({"solve", "--rho", "3", "--mu", "5"});
  EXPECT_EQ(r.code, morlab::cli::kConfigError);
  EXPECT_NE(r.err.find("mu < lambda"), std::string::npos) << r.err;
  EXPECT_EQ(call({"solve", "--rho", "abc"}).code, morlab::cli::kConfigError);
}

TEST(Cli, CorpusListIsStable) {
  const Outcome a = call({"corpus", "list"}), b = call({"corpus", "list"});
  EXPECT_EQ(a.code, 0);
  EXPECT_GE(count_lines(a.out), 12);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(call({"corpus", "verify"}).code, 0);
  EXPECT_EQ(call({"corpus", "load", "no-such-entry"}).code, morlab::cli::kConfigError);
}

TEST(Cli, CorpusLoadRoundTrip) {
  const std::string path = temp_path("tail.grid");
  const Outcome r = call({"corpus", "load", "power-tail-λ4", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const Outcome n = call({"norm", "--input", path, "--kind", "lorentz", "--p", "2", "--d", "inf"});
  EXPECT_EQ(n.code, 0) << n.err;
  EXPECT_NE(n.out.find("\"value\""), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, JsonIsDeterministic) {
  const std::vector<std::string> args = {"norm", "--corpus", "smooth-bump", "--m", "32", "--kind", "morrey",
                                         "--p", "2", "--d", "2", "--lambda", "3"};
  const Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const std::string path = temp_path("summary.json");
  std::vector<std::string> to_file = {"--json", path};
  to_file.insert(to_file.end(), args.begin(), args.end());
  ASSERT_EQ(call(to_file).code, 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), a.out);
  std::remove(path.c_str());
}

TEST(Cli, SharpnessCsvHeader) {
  const Outcome r = call({"sharpness", "--r", "2", "--mu", "4", "--p", "2", "--lambda", "8", "--depth", "2",
                          "--depth-lo", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "N,g_norm,measured,lower_bound,ratio");
  EXPECT_EQ(count_lines(r.out), 3);
}

TEST(Cli, VerifyLayerSuite) {
  const Outcome r = call({"verify", "--suite", "layer"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  for (const char* name : {"dn_N_plus_D", "D_S_commute", "neumann_recovery"}) {
    EXPECT_NE(r.out.find(std::string("PASS  ") + name), std::string::npos) << r.out;
  }
}

TEST(Cli, ConfigFile) {
  const std::string path = temp_path("run.cfg");
  {
    std::ofstream cfg(path);
    cfg << "# table for the shallow end\n"
        << "command = sharpness\n"
        << "r = 2\nmu = 4\np = 2\nlambda = 8\n"
        << "depth = 2   # trailing comment\n"
        << "depth-lo = 1\n";
  }
  const Outcome r = call({"--config", path});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 3);
  // The command line wins over the file.
  EXPECT_EQ(count_lines(call({"--config", path, "sharpness", "--depth", "1"}).out), 2);
  {
    std::ofstream cfg(path);
    cfg << "command = sharpness\nthis line has no equals sign\n";
  }
  EXPECT_EQ(call({"--config", path}).code, morlab::cli::kConfigError);
  EXPECT_EQ(call({"--config", temp_path("missing.cfg")}).code, morlab::cli::kConfigError);
  std::remove(path.c_str());
}
