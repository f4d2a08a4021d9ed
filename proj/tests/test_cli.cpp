#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "khs_cli.hpp"

using namespace khs;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "khs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("khs_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, ComputeTorusLink) {
  auto r = run({"compute", "--link", "torus:3:1", "--char", "2", "--theta", "sq1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["refined"]["s"], -2);
  EXPECT_EQ(j["refined"]["s_plus"], -2);
  EXPECT_EQ(j["components"], 3);
  EXPECT_FALSE(j["sq1"].empty());
}

TEST(Cli, ComputeUnknotCharZero) {
  auto r = run({"compute", "--link", "unknot", "--char", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j["refined"]["s"], 0);
  EXPECT_EQ(j["refined"]["theta"], "zero");
  EXPECT_FALSE(j.contains("sq1"));
}

TEST(Cli, ComputeFormats) {
  auto csv = run({"compute", "--link", "trefoil", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  EXPECT_EQ(lines(csv.out).front(), "h,q,rank,torsion");
  EXPECT_EQ(lines(csv.out).size(), 6u);
  auto text = run({"compute", "--pd", "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)", "--format", "text"});
  ASSERT_EQ(text.code, 0);
  EXPECT_NE(text.out.find("s = 2"), std::string::npos);
  EXPECT_EQ(run({"compute", "--link", "trefoil", "--format", "xml"}).code, 2);
}

TEST(Cli, InputErrors) {
  EXPECT_EQ(run({"compute", "--pd", "X(1,2,3)"}).code, 2);
  EXPECT_EQ(run({"compute", "--link", "no-such-knot"}).code, 2);
  EXPECT_EQ(run({"compute", "--link", "trefoil", "--char", "0", "--theta", "sq1"}).code, 2);
  EXPECT_EQ(run({"compute", "--link", "trefoil", "--char", "3"}).code, 2);
  EXPECT_EQ(run({"compute"}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"compute", "--file", "/nonexistent/k.pd"}).code, 2);
}

TEST(Cli, ComputeFromFile) {
  auto dir = temp_dir("file");
  std::ofstream(dir / "k.pd") << "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)\n";
  auto r = run({"compute", "--file", (dir / "k.pd").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["refined"]["s"], 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, CertificateFailureIsInternal) {
  auto lc = prepare_complexes(builtin("trefoil"), LinkComplexes::Method::Reduced);
  RefinedOptions o;
  auto r = refined_s(lc, o);
  ASSERT_FALSE(r.certificates.empty());
  r.certificates.front().alpha += 1;
  EXPECT_THROW(cli::check_certificates(lc, r, o.theta), cli::InternalError);
}

TEST(Cli, VerifySuites) {
  auto p1 = run({"verify", "prop1", "--max-n", "3"});
  ASSERT_EQ(p1.code, 0) << p1.err;
  auto j1 = json::parse(p1.out);
  EXPECT_TRUE(j1["passed"].get<bool>());
  EXPECT_EQ(j1["cases"].size(), 4u);
  auto p2 = run({"verify", "prop2", "--corpus", "small"});
  ASSERT_EQ(p2.code, 0) << p2.err;
  EXPECT_EQ(json::parse(p2.out)["cases"].size(), 8u);
  auto adj = run({"verify", "adjunction-942"});
  ASSERT_EQ(adj.code, 0) << adj.err;
  auto ja = json::parse(adj.out);
  EXPECT_EQ(ja["cases"][0]["bound"], 0);
  EXPECT_EQ(ja["cases"][0]["s_plus_sq1"], 0);
  auto d = run({"verify", "dichotomy", "--threads", "2"});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_TRUE(json::parse(d.out)["passed"].get<bool>());
  EXPECT_EQ(run({"verify", "prop2", "--corpus", "huge"}).code, 2);
}

TEST(Cli, TorusTables) {
  auto t = run({"table", "--family", "torus", "--max-n", "3", "--char", "2", "--theta", "sq1"});
  ASSERT_EQ(t.code, 0) << t.err;
  auto ls = lines(t.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "link,n,q_reversed,components,characteristic,theta,s,r_plus,s_plus");
  EXPECT_EQ(ls[4], "torus:3:1,3,1,3,2,sq1,-2,-2,-2");
  auto z = run({"table", "--family", "torus", "--max-n", "2", "--char", "0", "--theta", "zero"});
  ASSERT_EQ(z.code, 0) << z.err;
  auto lz = lines(z.out);
  ASSERT_EQ(lz.size(), 3u);
  EXPECT_EQ(lz[1], "torus:2:0,2,0,2,0,zero,1,1,1");
  EXPECT_EQ(lz[2], "torus:2:1,2,1,2,0,zero,-1,-1,-1");
  auto j = run({"table", "--family", "torus", "--max-n", "2", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(json::parse(j.out).size(), 2u);
}

TEST(Cli, EmptyFamily) {
  auto t = run({"table", "--family", "torus", "--max-n", "1"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(lines(t.out).size(), 1u);
  auto dir = temp_dir("empty");
  std::ofstream(dir / "none.txt") << "# nothing here\n";
  auto f = run({"table", "--file", (dir / "none.txt").string()});
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(lines(f.out).size(), 1u);
  std::filesystem::remove_all(dir);
  EXPECT_EQ(run({"table", "--family", "pretzel"}).code, 2);
}

TEST(Cli, TableFromFile) {
  auto dir = temp_dir("list");
  std::ofstream(dir / "links.txt") << "trefoil\n# a comment\n\nX(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)\n9_42\n";
  auto t = run({"table", "--file", (dir / "links.txt").string()});
  ASSERT_EQ(t.code, 0) << t.err;
  auto ls = lines(t.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[1].substr(0, 8), "trefoil,");
  EXPECT_NE(ls[2].find(",0,0,0"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"compute", "--link", "9_42", "--sweep"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto t1 = run({"table", "--family", "torus", "--max-n", "3", "--threads", "1"});
  auto t2 = run({"table", "--family", "torus", "--max-n", "3", "--threads", "4"});
  EXPECT_EQ(t1.out, t2.out);
}

TEST(Cli, OracleDoesNotChangeResults) {
  for (const auto& l : {"trefoil", "torus:3:1", "9_42", "hopf-"}) {
    auto a = run({"compute", "--link", l});
    auto b = run({"compute", "--link", l, "--oracle"});
    ASSERT_EQ(b.code, 0) << b.err;
    auto ja = json::parse(a.out), jb = json::parse(b.out);
    EXPECT_EQ(ja["homology"], jb["homology"]) << l;
    EXPECT_EQ(ja["sq1"], jb["sq1"]) << l;
    for (const char* k : {"s", "r_plus", "s_plus"}) EXPECT_EQ(ja["refined"][k], jb["refined"][k]) << l;
  }
  auto t = run({"table", "--family", "torus", "--max-n", "3"});
  auto to = run({"table", "--family", "torus", "--max-n", "3", "--oracle"});
  EXPECT_EQ(t.out, to.out);
}

TEST(Cli, Cache) {
  auto dir = temp_dir("cache");
  ::setenv("KHS_CACHE_DIR", dir.string().c_str(), 1);
  auto a = run({"table", "--family", "torus", "--max-n", "3"});
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) files += e.path().extension() == ".json";
  EXPECT_EQ(files, 4);
  auto b = run({"table", "--family", "torus", "--max-n", "3"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(b.err.empty());

  // A file in place of the directory cannot be written to.
  std::ofstream(dir / "blocker") << "x";
  ::setenv("KHS_CACHE_DIR", (dir / "blocker" / "sub").string().c_str(), 1);
  auto c = run({"table", "--family", "torus", "--max-n", "2"});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.err.find("not writable"), std::string::npos);
  EXPECT_EQ(lines(c.out).size(), 3u);
  ::unsetenv("KHS_CACHE_DIR");
  std::filesystem::remove_all(dir);
}
