#include "fuselet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fuselet/dump.hpp"
#include "fuselet/fixture.hpp"
#include "fuselet/fusion.hpp"
#include "fuselet/image_io.hpp"
#include "fuselet/metrics.hpp"

namespace fuselet::cli {

namespace {

namespace fs = std::filesystem;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".partial";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw ImageIoError(IoErrorKind::write_failed, path.string() + ": cannot write report");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw ImageIoError(IoErrorKind::write_failed, path.string() + ": cannot write report");
  }
}

// Flags shared by fuse and bench.
struct TransformFlags {
  std::vector<int> levels{2, 3};
  int wavelet_levels = 3;
  double threshold = WammThreshold::kDefault;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--levels", levels, "NSCT direction exponents per scale, finest first")
        ->delimiter(',')
        ->allow_extra_args(false)
        ->capture_default_str();
    cmd.add_option("--wavelet-levels", wavelet_levels, "DWT decomposition depth")
        ->capture_default_str();
    cmd.add_option("--threshold", threshold, "WAMM match threshold T in (0, 0.5)")
        ->capture_default_str();
  }

  FusionConfig config(Domain domain, Rule rule) const {
    FusionConfig cfg;
    cfg.domain = domain;
    cfg.rule = rule;
    cfg.nsct_levels = levels;
    cfg.wavelet_levels = wavelet_levels;
    cfg.threshold = WammThreshold(threshold);
    cfg.validate();
    return cfg;
  }
};

// Inputs may repeat; the output must not overwrite one of them.
void require_output_distinct(const std::string& output, const std::vector<std::string>& inputs) {
  for (const auto& in : inputs) {
    if (fs::path(in).lexically_normal() == fs::path(output).lexically_normal()) {
      throw UsageError("output path must differ from the inputs: " + output);
    }
  }
}

QConfig quality_config(double alpha) {
  QConfig q;
  q.alpha = alpha;
  q.validate();
  return q;
}

std::string bench_report(const Image& a, const Image& b, const TransformFlags& flags,
                         const QConfig& qcfg) {
  std::ostringstream csv;
  csv << "method,domain,en1,en2,en3,s,pm\n";
  for (Rule rule : {Rule::entropy, Rule::mean, Rule::sd, Rule::wamm}) {
    for (Domain domain : {Domain::wavelet, Domain::nsct}) {
      const Image fused = quantized(fuse(a, b, flags.config(domain, rule)));
      const MetricsReport m = evaluate_fusion(a, b, fused, qcfg);
      csv << to_string(rule) << ',' << to_string(domain) << ',' << fixed4(m.en1) << ','
          << fixed4(m.en2) << ',' << fixed4(m.en3) << ',' << fixed4(m.s) << ',' << fixed4(m.pm)
          << '\n';
    }
  }
  return csv.str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiscale image fusion: NSCT and wavelet domains, statistical rules, quality metrics"};
  app.name("fuselet");
  app.require_subcommand(1);

  // fuse
  std::string domain_name = "nsct";
  std::string rule_name = "wamm";
  std::string input_a, input_b, output;
  TransformFlags fuse_flags;
  CLI::App* fuse_cmd = app.add_subcommand("fuse", "Fuse two registered images");
  fuse_cmd->add_option("--domain", domain_name, "nsct or wavelet")
      ->check(CLI::IsMember({"nsct", "wavelet"}))
      ->capture_default_str();
  fuse_cmd->add_option("--rule", rule_name, "entropy, mean, sd or wamm")
      ->check(CLI::IsMember({"entropy", "mean", "sd", "wamm"}))
      ->capture_default_str();
  fuse_flags.add_to(*fuse_cmd);
  fuse_cmd->add_option("A", input_a, "first source image")->required();
  fuse_cmd->add_option("B", input_b, "second source image")->required();
  fuse_cmd->add_option("-o,--output", output, "fused image (.pgm or .png)")->required();

  // metrics
  std::string fused_path;
  std::string m_a, m_b;
  double alpha = 1.0;
  std::string format = "csv";
  CLI::App* metrics_cmd = app.add_subcommand("metrics", "Score a fused image against its sources");
  metrics_cmd->add_option("--fused", fused_path, "fused image")->required();
  metrics_cmd->add_option("A", m_a, "first source image")->required();
  metrics_cmd->add_option("B", m_b, "second source image")->required();
  metrics_cmd->add_option("--alpha", alpha, "edge-term exponent")->capture_default_str();
  metrics_cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // bench
  std::string b_a, b_b, report_path;
  double bench_alpha = 1.0;
  TransformFlags bench_flags;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Run every rule in both domains and tabulate the metrics");
  bench_cmd->add_option("A", b_a, "first source image")->required();
  bench_cmd->add_option("B", b_b, "second source image")->required();
  bench_cmd->add_option("--out", report_path, "CSV report path (default: stdout)");
  bench_cmd->add_option("--alpha", bench_alpha, "edge-term exponent")->capture_default_str();
  bench_flags.add_to(*bench_cmd);

  // fixture
  std::size_t fixture_size = 128;
  double fixture_sigma = 2.0;
  std::uint64_t fixture_seed = 20121;
  std::string fixture_dir;
  CLI::App* fixture_cmd = app.add_subcommand(
      "fixture", "Write a synthetic multifocus pair (truth.pgm, a.pgm, b.pgm)");
  fixture_cmd->add_option("--size", fixture_size, "side length, multiple of 8")
      ->capture_default_str();
  fixture_cmd->add_option("--sigma", fixture_sigma, "defocus blur sigma")->capture_default_str();
  fixture_cmd->add_option("--seed", fixture_seed, "scene seed")->capture_default_str();
  fixture_cmd->add_option("-o,--out-dir", fixture_dir, "output directory")->required();

  // decompose
  std::string dec_domain = "nsct";
  std::string dec_input, dec_dir;
  TransformFlags dec_flags;
  CLI::App* dec_cmd =
      app.add_subcommand("decompose", "Dump every subband of one image as a display-scaled PGM");
  dec_cmd->add_option("--domain", dec_domain, "nsct or wavelet")
      ->check(CLI::IsMember({"nsct", "wavelet"}))
      ->capture_default_str();
  dec_cmd->add_option("--levels", dec_flags.levels, "NSCT direction exponents per scale")
      ->delimiter(',')
      ->allow_extra_args(false);
  dec_cmd->add_option("--wavelet-levels", dec_flags.wavelet_levels, "DWT depth");
  dec_cmd->add_option("IMAGE", dec_input, "source image")->required();
  dec_cmd->add_option("-o,--out-dir", dec_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "fuselet: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*fuse_cmd) {
      const FusionConfig cfg =
          fuse_flags.config(*parse_domain(domain_name), *parse_rule(rule_name));
      require_output_distinct(output, {input_a, input_b});
      const Image a = load_image(input_a);
      const Image b = load_image(input_b);
      const Image fused = fuse(a, b, cfg);
      save_image(fused, output);
      out << "fused " << input_a << " + " << input_b << " -> " << output << " (" << a.width()
          << "x" << a.height() << ", domain=" << to_string(cfg.domain)
          << ", rule=" << to_string(cfg.rule) << ", T=" << cfg.threshold.value() << ")\n";
      return kOk;
    }
    if (*metrics_cmd) {
      const QConfig qcfg = quality_config(alpha);
      const Image a = load_image(m_a);
      const Image b = load_image(m_b);
      const Image f = load_image(fused_path);
      require_same_shape(a, b, "inputs");
      require_same_shape(a, f, "fused image");
      const MetricsReport m = evaluate_fusion(a, b, f, qcfg);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["en1"] = m.en1;
        j["en2"] = m.en2;
        j["en3"] = m.en3;
        j["s"] = m.s;
        j["pm"] = m.pm;
        j["fused"] = fused_path;
        j["inputs"] = {m_a, m_b};
        j["alpha"] = qcfg.alpha;
        j["window_size"] = qcfg.window_size;
        out << j.dump() << '\n';
      } else {
        out << "en1,en2,en3,s,pm\n"
            << fixed4(m.en1) << ',' << fixed4(m.en2) << ',' << fixed4(m.en3) << ','
            << fixed4(m.s) << ',' << fixed4(m.pm) << '\n';
      }
      return kOk;
    }
    if (*bench_cmd) {
      const QConfig qcfg = quality_config(bench_alpha);
      bench_flags.config(Domain::nsct, Rule::wamm);  // validates the shared flags
      if (!report_path.empty()) require_output_distinct(report_path, {b_a, b_b});
      const Image a = load_image(b_a);
      const Image b = load_image(b_b);
      require_same_shape(a, b, "inputs");
      const std::string csv = bench_report(a, b, bench_flags, qcfg);
      if (report_path.empty()) {
        out << csv;
      } else {
        write_text_atomic(report_path, csv);
      }
      return kOk;
    }
    if (*fixture_cmd) {
      const MultifocusFixture fx = make_multifocus_fixture(fixture_size, fixture_sigma, fixture_seed);
      fs::create_directories(fixture_dir);
      save_image(fx.truth, fs::path(fixture_dir) / "truth.pgm");
      save_image(fx.left_blurred, fs::path(fixture_dir) / "a.pgm");
      save_image(fx.right_blurred, fs::path(fixture_dir) / "b.pgm");
      out << "wrote truth.pgm, a.pgm, b.pgm to " << fixture_dir << '\n';
      return kOk;
    }
    if (*dec_cmd) {
      if (dec_domain == "nsct") dec_flags.config(Domain::nsct, Rule::wamm);
      const Image img = load_image(dec_input);
      fs::create_directories(dec_dir);
      const std::string prefix = fs::path(dec_input).stem().string();
      const auto written =
          dec_domain == "nsct"
              ? dump_pyramid(nsct_forward(img, dec_flags.levels), dec_dir, prefix)
              : dump_pyramid(dwt_forward(img, dec_flags.wavelet_levels), dec_dir, prefix);
      out << "wrote " << written.size() << " subbands to " << dec_dir << '\n';
      return kOk;
    }
  } catch (const ImageIoError& e) {
    err << "fuselet: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return kIo;
  } catch (const DimensionMismatch& e) {
    err << "fuselet: dimension mismatch: " << e.what() << '\n';
    return kDimensions;
  } catch (const fs::filesystem_error& e) {
    err << "fuselet: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    err << "fuselet: invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "fuselet: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace fuselet::cli
