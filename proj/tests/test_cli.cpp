#include <doctest.h>

#include <json.hpp>

#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "fuselet/cli.hpp"
#include "fuselet/fixture.hpp"
#include "fuselet/image_io.hpp"
#include "fuselet/metrics.hpp"
#include "test_support.hpp"

using namespace fuselet;
using fuselet::test::read_bytes;
using fuselet::test::tmp_path;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"fuselet"};
  storage.insert(storage.end(), args);
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

struct Pair {
  std::string a, b;
};

Pair write_pair(const std::string& tag, std::size_t size = 32) {
  const MultifocusFixture fx = make_multifocus_fixture(size, 2.0);
  Pair p{tmp_path("cli_" + tag + "_a.pgm").string(), tmp_path("cli_" + tag + "_b.pgm").string()};
  save_image(fx.left_blurred, p.a);
  save_image(fx.right_blurred, p.b);
  return p;
}

}  // namespace

TEST_CASE("fuse writes an image of the input size") {
  const Pair p = write_pair("fuse");
  for (const std::string domain : {"nsct", "wavelet"}) {
    for (const std::string rule : {"entropy", "mean", "sd", "wamm"}) {
      const std::string out = tmp_path("cli_fused_" + domain + "_" + rule + ".pgm").string();
      const Result r = invoke({"fuse", "--domain", domain, "--rule", rule, p.a, p.b, "-o", out});
      CHECK_MESSAGE(r.code == cli::kOk, r.err);
      const Image f = load_image(out);
      CHECK(f.width() == 32);
      CHECK(f.height() == 32);
    }
  }
  const Result png = invoke({"fuse", p.a, p.b, "-o", tmp_path("cli_fused.png").string()});
  CHECK(png.code == cli::kOk);
  CHECK(load_image(tmp_path("cli_fused.png")).width() == 32);
}

TEST_CASE("fuse rejects bad configuration before touching files") {
  const std::string out = tmp_path("cli_never.pgm").string();
  std::filesystem::remove(out);
  const Result r = invoke({"fuse", "--threshold", "0.7", "missing_a.pgm", "missing_b.pgm", "-o", out});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("(0, 0.5)") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(out));

  CHECK(invoke({"fuse", "--threshold", "0", "a", "b", "-o", out}).code == cli::kUsage);
  CHECK(invoke({"fuse", "--levels", "2,9", "a", "b", "-o", out}).code == cli::kUsage);
  CHECK(invoke({"fuse", "--rule", "max", "a", "b", "-o", out}).code == cli::kUsage);
  CHECK(invoke({"fuse", "--domain", "curvelet", "a", "b", "-o", out}).code == cli::kUsage);
  CHECK(invoke({"fuse", "a", "b"}).code == cli::kUsage);
  CHECK(invoke({"frobnicate"}).code == cli::kUsage);
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"fuse", "a.pgm", "b.pgm", "-o", "a.pgm"}).code == cli::kUsage);
}

TEST_CASE("fuse reports I/O and dimension errors") {
  const Pair p = write_pair("err");
  const std::string out = tmp_path("cli_err_out.pgm").string();
  CHECK(invoke({"fuse", tmp_path("does_not_exist.pgm").string(), p.b, "-o", out}).code ==
        cli::kIo);

  const std::string small = tmp_path("cli_small.pgm").string();
  save_image(random_image(16, 16, 1), small);
  const Result r = invoke({"fuse", p.a, small, "-o", out});
  CHECK(r.code == cli::kDimensions);
  CHECK(r.err.find("dimension") != std::string::npos);

  const std::string bogus = tmp_path("cli_bogus.pgm").string();
  fuselet::test::write_bytes(bogus, "GIF89a");
  CHECK(invoke({"fuse", bogus, p.b, "-o", out}).code == cli::kIo);

  const std::string unwritable = tmp_path("no_such_dir/x/out.pgm").string();
  CHECK(invoke({"fuse", p.a, p.b, "-o", unwritable}).code == cli::kIo);
}

TEST_CASE("metrics of a source against itself") {
  const Pair p = write_pair("metrics");
  const std::string copy = tmp_path("cli_metrics_copy.pgm").string();
  save_image(load_image(p.a), copy);
  const Result r = invoke({"metrics", "--fused", copy, p.a, p.a});
  REQUIRE_MESSAGE(r.code == cli::kOk, r.err);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "en1,en2,en3,s,pm");
  char h[32];
  std::snprintf(h, sizeof h, "%.4f", entropy(load_image(p.a)));
  CHECK(rows[1] == std::string(h) + "," + h + "," + h + ",1.0000,1.0000");

  const Result j = invoke({"metrics", "--fused", copy, p.a, p.b, "--format", "json"});
  REQUIRE(j.code == cli::kOk);
  const auto doc = nlohmann::json::parse(j.out);
  for (const char* key : {"en1", "en2", "en3", "s", "pm", "fused", "inputs", "alpha", "window_size"})
    CHECK(doc.contains(key));
  CHECK(doc["inputs"].size() == 2);
  CHECK(doc["window_size"] == 3);

  CHECK(invoke({"metrics", "--fused", copy, p.a, p.b, "--format", "xml"}).code == cli::kUsage);
  CHECK(invoke({"metrics", "--fused", copy, p.a, p.b, "--alpha", "-2"}).code == cli::kUsage);
}

TEST_CASE("bench tabulates eight methods and is reproducible") {
  const Pair p = write_pair("bench");
  const std::string r1 = tmp_path("cli_bench1.csv").string();
  const std::string r2 = tmp_path("cli_bench2.csv").string();
  REQUIRE(invoke({"bench", p.a, p.b, "--out", r1}).code == cli::kOk);
  REQUIRE(invoke({"bench", p.a, p.b, "--out", r2}).code == cli::kOk);
  const std::string text = read_bytes(r1);
  CHECK(text == read_bytes(r2));
  const auto rows = lines(text);
  REQUIRE(rows.size() == 9);
  CHECK(rows[0] == "method,domain,en1,en2,en3,s,pm");
  int nsct = 0, wavelet = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].find(",nsct,") != std::string::npos) ++nsct;
    if (rows[i].find(",wavelet,") != std::string::npos) ++wavelet;
  }
  CHECK(nsct == 4);
  CHECK(wavelet == 4);

  const Result to_stdout = invoke({"bench", p.a, p.b});
  CHECK(to_stdout.out == text);
  CHECK(invoke({"bench", p.a, p.b, "--threshold", "0.5"}).code == cli::kUsage);
}

TEST_CASE("fixture and decompose") {
  const std::string dir = tmp_path("cli_fixture").string();
  REQUIRE(invoke({"fixture", "--size", "32", "-o", dir}).code == cli::kOk);
  for (const char* name : {"truth.pgm", "a.pgm", "b.pgm"})
    CHECK(load_image(std::filesystem::path(dir) / name).width() == 32);

  const std::string nsct_dir = tmp_path("cli_dec_nsct").string();
  std::filesystem::remove_all(nsct_dir);
  const std::string truth = (std::filesystem::path(dir) / "truth.pgm").string();
  REQUIRE(invoke({"decompose", "--levels", "1,2", truth, "-o", nsct_dir}).code == cli::kOk);
  CHECK(std::filesystem::exists(std::filesystem::path(nsct_dir) / "truth_low.pgm"));
  CHECK(std::filesystem::exists(std::filesystem::path(nsct_dir) / "truth_s2_d4.pgm"));

  const std::string wl_dir = tmp_path("cli_dec_wavelet").string();
  REQUIRE(invoke({"decompose", "--domain", "wavelet", "--wavelet-levels", "2", truth, "-o", wl_dir})
              .code == cli::kOk);
  CHECK(std::filesystem::exists(std::filesystem::path(wl_dir) / "truth_ll.pgm"));
  CHECK(std::filesystem::exists(std::filesystem::path(wl_dir) / "truth_l2_hh.pgm"));
}
