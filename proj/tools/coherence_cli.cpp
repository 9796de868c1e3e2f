// Command-line surface: compute coherence quantities from state/observable
// files, run the randomized verification suites, run the two-slit demo.
//
// Exit codes: 0 success, 1 suite failure, 2 usage or input error,
// 3 validation failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coherence/coherence.hpp"
#include "coherence/io.hpp"
#include "coherence/twoslit.hpp"
#include "coherence/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_suite_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_validation = 3;

struct LogBase {
  bool bits = false;
  const char* unit() const { return bits ? "bit" : "nat"; }
  double operator()(double nats) const { return bits ? coherence::nats_to_bits(nats) : nats; }
};

LogBase resolve_base(bool bits_flag) {
  LogBase base{bits_flag};
  if (!bits_flag) {
    if (const char* env = std::getenv("COHERENCE_LOG_BASE")) {
      const std::string value(env);
      if (value == "2") {
        base.bits = true;
      } else if (value != "e") {
        throw std::invalid_argument("COHERENCE_LOG_BASE must be 'e' or '2'");
      }
    }
  }
  return base;
}

int run_compute(const std::string& state_path, const std::string& observable_path, bool bits,
                double tol, bool as_json) {
  const LogBase base = resolve_base(bits);
  const auto rho = coherence::io::load_state(state_path);
  const auto a = coherence::io::load_observable(observable_path);

  const auto dec = coherence::entropy_decomposition(a, rho);
  const double ic_entropy_diff = dec.coherence_info;
  const double ic_rel_entropy = coherence::luders_distance(rho, a);
  const double agreement = std::abs(ic_entropy_diff - ic_rel_entropy);
  const bool compatible = coherence::is_compatible(a, rho, tol);
  const double skew = coherence::skew_information(rho, a, 0.5);

  std::vector<std::pair<double, coherence::Matrixd>> doubled;
  for (Eigen::Index l = 0; l < a.outcomes(); ++l) {
    doubled.emplace_back(2.0 * a.label(l), a.projector(l));
  }
  const auto a2 = coherence::make_observable<double>(std::move(doubled));
  const double skew_doubled = coherence::skew_information(rho, a2, 0.5);
  const double ic_doubled = coherence::coherence_information(a2, rho);

  if (as_json) {
    nlohmann::json out{
        {"unit", base.unit()},
        {"state", {{"dim", rho.dim()}, {"rank", rho.rank()}}},
        {"observable", {{"outcomes", a.outcomes()}}},
        {"uncertainty", base(dec.uncertainty)},
        {"conditional_entropy", base(dec.conditional_entropy)},
        {"state_entropy", base(dec.state_entropy)},
        {"coherence_information", base(ic_entropy_diff)},
        {"coherence_information_rel_entropy", base(ic_rel_entropy)},
        {"agreement", base(agreement)},
        {"decomposition_residual", base(dec.residual)},
        {"compatible", compatible},
        {"skew_information_half", skew},
        {"skew_information_half_labels_doubled", skew_doubled},
        {"coherence_information_labels_doubled", base(ic_doubled)},
    };
    std::cout << out.dump(2) << "\n";
    return exit_ok;
  }

  std::printf("state: dim=%lld rank=%lld    observable: %lld outcomes\n",
              static_cast<long long>(rho.dim()), static_cast<long long>(rho.rank()),
              static_cast<long long>(a.outcomes()));
  std::printf("uncertainty                         %12.6f %s\n", base(dec.uncertainty),
              base.unit());
  std::printf("conditional entropy                 %12.6f %s\n", base(dec.conditional_entropy),
              base.unit());
  std::printf("state entropy                       %12.6f %s\n", base(dec.state_entropy),
              base.unit());
  std::printf("coherence info (entropy difference) %12.6f %s\n", base(ic_entropy_diff),
              base.unit());
  std::printf("coherence info (relative entropy)   %12.6f %s\n", base(ic_rel_entropy),
              base.unit());
  std::printf("route agreement |delta|             %12.3e\n", agreement);
  std::printf("decomposition residual              %12.3e\n", dec.residual);
  std::printf("compatible: %s\n", compatible ? "yes" : "no");
  std::printf("skew information (p=1/2)            %12.6f\n", skew);
  std::printf("  with labels doubled               %12.6f (coherence info stays %.6f %s)\n",
              skew_doubled, base(ic_doubled), base.unit());
  return exit_ok;
}

int run_verify(std::string suite, int trials, std::vector<int> dims, std::uint64_t seed,
               double tol, bool as_json) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = coherence::suite_names();
  } else {
    names.push_back(suite);
  }

  bool all_passed = true;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& name : names) {
    const auto report = coherence::run_suite(name, trials, dims.at(0), dims.at(1), seed, tol);
    all_passed = all_passed && report.passed;
    if (as_json) {
      out.push_back(report.to_json());
    } else {
      std::cout << report.to_text() << "\n";
    }
  }
  if (as_json) std::cout << out.dump(2) << "\n";
  return all_passed ? exit_ok : exit_suite_failure;
}

int run_demo(const coherence::twoslit::TwoSlitConfig& cfg, const std::string& out_dir) {
  namespace ts = coherence::twoslit;
  const LogBase base = resolve_base(false);
  const auto model = ts::TwoSlitModel::build(cfg);

  const auto coherent = ts::screen_pattern(model, ts::PatternSource::coherent);
  const auto luders = ts::screen_pattern(model, ts::PatternSource::luders);
  const auto contrast = ts::fringe_contrast(model, coherent, luders);

  const auto spatial = model.spatial_state();
  const bool compatible = coherence::is_compatible(model.slit_observable(), spatial);
  const double ic = coherence::coherence_information(model.slit_observable(), spatial);
  const bool interference = contrast.l1_gap > 1e-8;

  std::filesystem::create_directories(out_dir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };
  coherence::io::save_pattern_text(path("pattern_coherent.txt"), coherent);
  coherence::io::save_pattern_text(path("pattern_luders.txt"), luders);
  coherence::io::save_pattern_json(path("pattern_coherent.json"), coherent);
  coherence::io::save_pattern_json(path("pattern_luders.json"), luders);

  nlohmann::json summary{
      {"grid", cfg.grid},
      {"slit_separation", cfg.slit_separation},
      {"slit_width", cfg.slit_width},
      {"mass", cfg.mass},
      {"time", cfg.time},
      {"polarizers", cfg.polarizers},
      {"l1_gap", contrast.l1_gap},
      {"modulation", contrast.modulation},
      {"coherence_information", base(ic)},
      {"unit", base.unit()},
      {"slit_state_compatible", compatible},
      {"interference", interference},
  };
  {
    std::ofstream out(path("summary.json"));
    out << summary.dump(2) << "\n";
  }

  std::printf("two-slit demo: grid=%d separation=%d width=%d mass=%g time=%g polarizers=%s\n",
              cfg.grid, cfg.slit_separation, cfg.slit_width, cfg.mass, cfg.time,
              cfg.polarizers ? "on" : "off");
  std::printf("coherence info I_C(slits, spatial state) = %.6f %s\n", base(ic), base.unit());
  std::printf("pattern gap (L1) = %.6f   fringe modulation = %.6f\n", contrast.l1_gap,
              contrast.modulation);
  std::printf("interference: %s\n", interference ? "yes" : "no");
  std::printf("patterns written to %s\n", out_dir.c_str());
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence-information toolkit for finite-dimensional quantum states"};
  app.require_subcommand(1);

  // compute
  std::string state_path;
  std::string observable_path;
  bool bits = false;
  bool compute_json = false;
  double compute_tol = coherence::defaults::compat_tol;
  auto* compute = app.add_subcommand(
      "compute", "Coherence information and entropy decomposition for a state/observable pair");
  compute->add_option("state", state_path, "state JSON file")->required();
  compute->add_option("observable", observable_path, "observable JSON file")->required();
  compute->add_flag("--bits", bits, "report entropies in bits instead of nats");
  compute->add_flag("--json", compute_json, "emit a JSON document");
  compute->add_option("--tol", compute_tol, "compatibility tolerance");

  // verify
  std::string suite = "all";
  int trials = 200;
  std::vector<int> dims = {2, 8};
  std::uint64_t seed = 42;
  double verify_tol = 0.0;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Run randomized property suites");
  verify->add_option("--suite", suite, "suite name or 'all'");
  verify->add_option("--trials", trials, "trials per suite");
  verify->add_option("--dims", dims, "dimension range: lo hi")->expected(2);
  verify->add_option("--seed", seed, "master seed");
  verify->add_option("--tol", verify_tol, "tolerance override (0 keeps suite defaults)");
  verify->add_flag("--json", verify_json, "emit JSON reports");

  // demo
  coherence::twoslit::TwoSlitConfig cfg;
  std::string out_dir = "demo_out";
  auto* demo = app.add_subcommand("demo", "Two-slit interference demonstration");
  demo->add_option("--grid", cfg.grid, "number of position cells");
  demo->add_option("--separation", cfg.slit_separation, "slit separation in cells");
  demo->add_option("--width", cfg.slit_width, "slit width in cells");
  demo->add_option("--mass", cfg.mass, "particle mass");
  demo->add_option("--time", cfg.time, "propagation time");
  demo->add_flag("--polarizers", cfg.polarizers, "opposite polarization tags on the slits");
  demo->add_option("--seed", cfg.seed, "global-phase seed");
  demo->add_option("--out", out_dir, "output directory for pattern files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (compute->parsed()) {
      return run_compute(state_path, observable_path, bits, compute_tol, compute_json);
    }
    if (verify->parsed()) {
      return run_verify(suite, trials, dims, seed, verify_tol, verify_json);
    }
    return run_demo(cfg, out_dir);
  } catch (const coherence::io::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const coherence::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  }
}
