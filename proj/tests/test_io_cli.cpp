#include "doctest.h"

#include <sstream>

#include "xmodkit/cli.hpp"
#include "xmodkit/io.hpp"
#include "xmodkit/oracle.hpp"

using namespace xmodkit;

namespace {

const std::string kFixtures = XMODKIT_FIXTURE_DIR;

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

}  // namespace

TEST_CASE("parse . serialize is byte-identical on the canonical fixtures") {
  for (const char* name :
       {"fix-a.xmod.json", "fix-b.xmod.json", "fix-c.xmod.json",
        "fix-d.splitepi.json", "fix-e.prexmod.json", "fix-a.relcat.json",
        "z2.category.json"}) {
    const std::string text = read_file(kFixtures + "/" + name);
    Document doc = structural_document(parse_document(text));
    CHECK(serialize_document(doc) == text);
  }
}

TEST_CASE("the shipped fixtures equal the in-code fixtures") {
  auto body_of = [](const char* name) {
    return validate_document(
        parse_document(read_file(kFixtures + std::string("/") + name)));
  };
  CHECK(std::get<CrossedModule>(body_of("fix-a.xmod.json").body) ==
        oracle::fix_a());
  CHECK(std::get<CrossedModule>(body_of("fix-b.xmod.json").body) ==
        oracle::fix_b());
  CHECK(std::get<CrossedModule>(body_of("fix-c.xmod.json").body) ==
        oracle::fix_c());
  CHECK(std::get<PreCrossedModule>(body_of("fix-e.prexmod.json").body) ==
        oracle::fix_e());
  // FIX-D never passes the validator; load structurally
  Document d = structural_document(
      parse_document(read_file(kFixtures + "/fix-d.splitepi.json")));
  CHECK(std::get<SplitEpiPair>(d.body) == oracle::fix_d());
}

TEST_CASE("malformed input is a parse error") {
  CHECK_THROWS_WITH_AS(parse_document("{ not json"),
                       doctest::Contains("ParseError"), xmod_error);
  CHECK_THROWS_WITH_AS(parse_document(R"({"kind":"nonsense"})"),
                       doctest::Contains("ParseError"), xmod_error);
  CHECK_THROWS_WITH_AS(parse_document(R"({"kind":"category"})"),
                       doctest::Contains("ParseError"), xmod_error);
}

TEST_CASE("conversions revalidate under the target kind") {
  Document doc = validate_document(
      parse_document(read_file(kFixtures + "/fix-a.xmod.json")));
  InternalCat ic = xmod_to_relcat(std::get<CrossedModule>(doc.body));
  const std::string text =
      serialize_document(make_document("relcat", std::move(ic)));
  Document back = validate_document(parse_document(text));
  CHECK(back.kind == "relcat");
}

TEST_CASE("cli: validate") {
  CHECK(run_cli({"validate", kFixtures + "/fix-a.xmod.json"}) == 0);
  CHECK(run_cli({"validate", kFixtures + "/fix-c.xmod.json"}) == 0);

  std::string err;
  CHECK(run_cli({"validate", kFixtures + "/fix-d.splitepi.json"}, nullptr,
                &err) == 1);
  CHECK(err.find("QNotInvertible") != std::string::npos);
  CHECK(err.find("(a,1)") != std::string::npos);
  CHECK(err.find("(a,g)") != std::string::npos);

  CHECK(run_cli({"validate", kFixtures + "/no-such-file.json"}) == 2);
}

TEST_CASE("cli: convert fix-e to relcat fails with the Peiffer witness") {
  std::string err;
  const int code = run_cli(
      {"convert", "--to", "relcat", kFixtures + "/fix-e.prexmod.json"},
      nullptr, &err);
  CHECK(code == 1);
  CHECK(err.find("PeifferViolated") != std::string::npos);
  CHECK(err.find("(12)") != std::string::npos);
  CHECK(err.find("(123)") != std::string::npos);
}

TEST_CASE("cli: convert along each equivalence and back") {
  std::string out;
  CHECK(run_cli({"convert", "--to", "relcat",
                 kFixtures + "/fix-a.xmod.json"},
                &out) == 0);
  Document rc = validate_document(parse_document(out));
  CHECK(rc.kind == "relcat");

  CHECK(run_cli({"convert", "--to", "action",
                 kFixtures + "/fix-d.splitepi.json"},
                nullptr, nullptr) == 1);  // body fails validation first

  std::string action_out;
  CHECK(run_cli({"convert", "--to", "prexmod", "--via", "reflgraph",
                 kFixtures + "/fix-a.relcat.json"},
                &action_out) == 0);
  CHECK(validate_document(parse_document(action_out)).kind == "prexmod");
}

TEST_CASE("cli: cross-layer jumps without --via are refused") {
  std::string err;
  CHECK(run_cli({"convert", "--to", "relcat",
                 kFixtures + "/z2.category.json"},
                nullptr, &err) == 2);
  CHECK(run_cli({"convert", "--to", "xmod",
                 kFixtures + "/fix-a.relcat.json"},
                nullptr, &err) == 0);  // same layer, fine
}

TEST_CASE("cli: roundtrip") {
  std::string out;
  CHECK(run_cli({"roundtrip", kFixtures + "/fix-b.xmod.json"}, &out) == 0);
  CHECK(out.find("PASS") != std::string::npos);
  CHECK(run_cli({"roundtrip", kFixtures + "/fix-a.relcat.json"}, &out) == 0);
}

TEST_CASE("cli: enumerate") {
  std::string out, err;
  CHECK(run_cli({"--format", "json", "enumerate", "--kind", "xmod", "--base",
                 kFixtures + "/z2.category.json", "--fiber",
                 kFixtures + "/z2.category.json"},
                &out, &err) == 0);
  CHECK(std::count(out.begin(), out.end(), '\n') == 2);  // golden: 2 xmods
  CHECK(err.find("2 xmod instance(s)") != std::string::npos);

  // each streamed instance revalidates
  std::istringstream lines(out);
  std::string line;
  while (std::getline(lines, line)) {
    CHECK(validate_document(parse_document(line)).kind == "xmod");
  }
}

TEST_CASE("cli: check properties and exit codes") {
  CHECK(run_cli({"check", "--property", "peiffer",
                 kFixtures + "/fix-a.xmod.json"}) == 0);
  std::string out;
  CHECK(run_cli({"check", "--property", "peiffer",
                 kFixtures + "/fix-e.prexmod.json"},
                &out) == 1);
  CHECK(out.find("FAIL") != std::string::npos);
  CHECK(run_cli({"check", "--property", "precrossed",
                 kFixtures + "/fix-e.prexmod.json"}) == 0);
  CHECK(run_cli({"check", "--property", "q-invertible",
                 kFixtures + "/fix-d.splitepi.json"}) == 1);
  CHECK(run_cli({"check", "--property", "qn",
                 kFixtures + "/fix-a.relcat.json"}) == 0);
  CHECK(run_cli({"check", "--property", "hn",
                 kFixtures + "/fix-a.relcat.json"}) == 0);
  CHECK(run_cli({"check", "--property", "bn",
                 kFixtures + "/fix-a.xmod.json"}) == 0);
  CHECK(run_cli({"check", "--property", "interchange",
                 kFixtures + "/fix-a.relcat.json"}) == 0);
  CHECK(run_cli({"check", "--property", "d-unique",
                 kFixtures + "/fix-a.relcat.json"}) == 0);
  // property/kind mismatch is a usage error
  CHECK(run_cli({"check", "--property", "peiffer",
                 kFixtures + "/fix-d.splitepi.json"}) == 2);
}

TEST_CASE("cli: budget exhaustion exits 3") {
  std::string s3 = kFixtures + "/tmp-s3.category.json";
  write_file(s3, serialize_document(make_document(
                     "category", oracle::symmetric_group_s3())));
  std::string a3 = kFixtures + "/tmp-a3.category.json";
  write_file(a3, serialize_document(make_document(
                     "category", oracle::alternating_group_a3())));
  CHECK(run_cli({"enumerate", "--kind", "action", "--base", s3, "--fiber", a3,
                 "--budget", "5"}) == 3);
  std::remove(s3.c_str());
  std::remove(a3.c_str());
}

TEST_CASE("cli: json report format") {
  std::string out;
  CHECK(run_cli({"--format", "json", "check", "--property", "peiffer",
                 kFixtures + "/fix-b.xmod.json"},
                &out) == 0);
  CHECK(out.find("\"ok\":true") != std::string::npos);
}

TEST_CASE("cli: XMODKIT_BUDGET environment variable caps searches") {
  setenv("XMODKIT_BUDGET", "5", 1);
  std::string s3 = kFixtures + "/tmp-s3b.category.json";
  write_file(s3, serialize_document(make_document(
                     "category", oracle::symmetric_group_s3())));
  std::string a3 = kFixtures + "/tmp-a3b.category.json";
  write_file(a3, serialize_document(make_document(
                     "category", oracle::alternating_group_a3())));
  CHECK(run_cli({"enumerate", "--kind", "action", "--base", s3, "--fiber",
                 a3}) == 3);
  unsetenv("XMODKIT_BUDGET");
  CHECK(run_cli({"enumerate", "--kind", "action", "--base", s3, "--fiber",
                 a3}) == 0);
  std::remove(s3.c_str());
  std::remove(a3.c_str());
}

TEST_CASE("cli: a bogus --via chain is refused as a usage error") {
  std::string err;
  CHECK(run_cli({"convert", "--to", "relcat", "--via", "splitepi",
                 kFixtures + "/fix-b.xmod.json"},
                nullptr, &err) == 2);
  CHECK(err.find("no direct conversion") != std::string::npos);
}
