#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "normcert/cli.hpp"

namespace normcert {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json payload() const { return json::parse(out); }
};

Outcome run_cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "normcert");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

class TempFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("normcert_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

using Cli = TempFiles;

TEST_F(Cli, ConstructAndStructure) {
  const auto c4 = run_cli({"construct", "cycle", "4"});
  ASSERT_EQ(c4.code, 0);
  const auto path = write("c4.json", c4.out);
  const auto s = run_cli({"structure", "-g", path});
  EXPECT_EQ(s.code, 0);
  EXPECT_TRUE(s.payload()["bipartite"].get<bool>());
  EXPECT_TRUE(s.payload()["eulerian"].get<bool>());

  const auto blown = run_cli({"construct", "bowtie", "-g", path});
  const auto q3 = run_cli({"construct", "hypercube", "3"});
  const auto iso = run_cli({"isomorphic", "-g", write("b.json", blown.out), "--other", write("q3.json", q3.out)});
  EXPECT_EQ(iso.code, 0);
  EXPECT_TRUE(iso.payload()["isomorphic"].get<bool>());
}

TEST_F(Cli, EdgeListFromStdin) {
  const auto r = run_cli({"structure", "-g", "-"}, "# triangle\n0 1\n1 2\n2 0\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.payload()["bipartite"].get<bool>());
}

TEST_F(Cli, DensityAndHessian) {
  const auto g = write("c4.json", run_cli({"construct", "cycle", "4"}).out);
  const auto m = write("m.json", R"({"n":1,"entries":[["3"]]})");
  const auto d = run_cli({"density", "-g", g, "-m", m});
  ASSERT_EQ(d.code, 0);
  EXPECT_EQ(d.payload()["density"], "81");
  EXPECT_EQ(d.payload()["hom_count"], "81");
  const auto h = run_cli({"hessian", "-g", g, "-m", m});
  ASSERT_EQ(h.code, 0);
  EXPECT_EQ(h.payload()["hessian"]["entries"][0][0], "108");
}

TEST_F(Cli, PsdExitCodes) {
  EXPECT_EQ(run_cli({"psd", "-m", "-"}, R"({"n":2,"entries":[[1,0],[0,1]]})").code, 0);
  const auto bad = run_cli({"psd", "-m", "-"}, R"({"n":2,"entries":[[0,1],[1,0]]})");
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.payload()["value"], "-2");
  EXPECT_EQ(run_cli({"psd", "-m", "-"}, R"({"n":2,"entries":[[0,1],[2,0]]})").code, 3);
}

TEST_F(Cli, ScreenAndChecks) {
  EXPECT_EQ(run_cli({"screen", "-g", "-", "--mode", "norming"}, "0 1\n1 2\n").code, 1);
  EXPECT_EQ(run_cli({"screen", "-g", "-"}, "0 1\n1 2\n2 3\n3 0\n").code, 0);
  const auto k = run_cli({"check", "prop42", "-g", "-", "--n", "1"}, "0 1\n1 2\n2 3\n3 0\n");
  EXPECT_EQ(k.code, 0);
  EXPECT_TRUE(k.payload()["in_kernel"].get<bool>());
  EXPECT_EQ(run_cli({"check", "allones-kernel", "-g", "-", "--n", "2"}, "0 1\n1 2\n2 3\n3 0\n").code, 0);
  const auto e = run_cli({"check", "euler-indicator", "-g", "-", "--n", "2"}, "0 1\n1 2\n");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.payload()["density"], "0");
}

TEST_F(Cli, CertifyAndVerifyInProcess) {
  const auto c = run_cli({"certify", "bowtie-cycle", "--k", "5"});
  ASSERT_EQ(c.code, 0);
  EXPECT_EQ(c.payload()["kind"], "not_weakly_norming");
  const auto v = run_cli({"verify", "-c", "-"}, c.out);
  EXPECT_EQ(v.code, 0);

  auto tampered = c.payload();
  tampered["value"] = "-1";
  EXPECT_EQ(run_cli({"verify", "-c", "-"}, tampered.dump()).code, 1);

  EXPECT_EQ(run_cli({"certify", "bowtie-cycle", "--k", "4"}).code, 1);
  EXPECT_EQ(run_cli({"certify", "bowtie-cycle", "--k", "12"}).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 3);
  EXPECT_EQ(run_cli({"--bogus"}).code, 3);
  EXPECT_EQ(run_cli({"density", "-g", "/nonexistent/g", "-m", "/nonexistent/m"}).code, 3);
  const auto r = run_cli({"structure", "-g", "-"}, "0 0\n");
  EXPECT_EQ(r.code, 3);
  EXPECT_TRUE(r.payload().contains("error"));
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, ThreadCountDoesNotChangeOutput) {
  const auto a = run_cli({"certify", "bowtie-cycle", "--k", "6", "--threads", "1"});
  const auto b = run_cli({"certify", "bowtie-cycle", "--k", "6", "--threads", "4"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

std::pair<int, std::string> shell(const std::string& cmd) {
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return {-1, out};
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = ::pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

TEST(CliBinary, PipesCertificateIntoVerify) {
  const std::string bin = NORMCERT_CLI_PATH;
  const auto [code, out] = shell(bin + " certify kpm --m 5 | " + bin + " verify -c -");
  EXPECT_EQ(code, 0);
  EXPECT_TRUE(json::parse(out)["valid"].get<bool>());
  EXPECT_EQ(shell(bin + " --bogus 2>/dev/null").first, 3);
  EXPECT_EQ(shell(bin + " certify kpm --m 3 >/dev/null").first, 1);
}

}  // namespace
}  // namespace normcert
