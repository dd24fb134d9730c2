#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int status = -1;
  std::string out;
};

// runs the CLI with stdin taken from `input`, capturing stdout and stderr
Result run(const std::string& args, const std::string& input) {
  char path[] = "/tmp/isoclinic_cli_inXXXXXX";
  int fd = mkstemp(path);
  FILE* f = fdopen(fd, "w");
  std::fputs(input.c_str(), f);
  std::fclose(f);
  std::string cmd = std::string(ISOCLINIC_CLI_PATH) + " " + args + " -i - < " + path + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  std::remove(path);
  return r;
}

}  // namespace

TEST(Cli, OperSlope) {
  auto r = run("oper slope", R"({"algebra": "A1", "v": [{"i": 1, "j": 2, "value": 1}]})");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"slope\": \"1/2\""), std::string::npos) << r.out;
}

TEST(Cli, AlgebraInfo) {
  auto r = run("algebra info", R"({"algebra": "G2"})");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"coxeter\": 6"), std::string::npos) << r.out;
}

TEST(Cli, OutputIsByteStable) {
  const std::string in = R"({"algebra": "A2", "v": [{"i": 2, "j": 6, "value": 1}, {"i": 1, "j": 3, "value": "2/3"}]})";
  auto a = run("oper reduce", in), b = run("oper reduce", in);
  EXPECT_EQ(a.status, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, AiryInfinity) {
  auto r = run("airy infinity", R"({"algebra": "A2"})");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"certificate\": \"holomorphic\""), std::string::npos) << r.out;
}

TEST(Cli, KtypeSpecial) {
  auto r = run("ktype special", R"({"algebra": "A1", "character": {"-1": ["5"]}})");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"special\": true"), std::string::npos) << r.out;
}

TEST(Cli, DomainErrorExitsOne) {
  auto r = run("ktype build", R"({"algebra": "A2", "m": 3, "N": 3})");
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_NE(r.out.find("NotCoprime"), std::string::npos) << r.out;
}

TEST(Cli, SchemaErrorExitsTwo) {
  EXPECT_EQ(run("oper slope", "{not json").status, 2);
  EXPECT_EQ(run("oper slope", R"({"v": []})").status, 2);
  EXPECT_EQ(run("oper slope", R"({"algebra": "A1", "v": [{"i": 1, "j": 2, "value": 0.5}]})").status, 2);
}

TEST(Cli, BadCommandLineExitsTwo) { EXPECT_EQ(run("oper frobnicate", "{}").status, 2); }

TEST(Cli, FloatField) {
  auto r = run("oper slope --field float", R"({"algebra": "A1", "v": [{"i": 1, "j": 4, "value": 0.5}]})");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("3/2"), std::string::npos) << r.out;
}
