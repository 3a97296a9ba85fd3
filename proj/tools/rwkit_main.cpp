// rwkit: command-line front end for purification, sparsity defects,
// certificates and desk-scale robustness evaluation.
//
//   rwkit <gen-data|purify|defect|certify|eval> --config <path> [--seed N] [--out <path>] [--in <path>]
//
// Exit codes: 0 success, 2 configuration or input error, 3 numeric failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rwkit/certify.hpp"
#include "rwkit/defect.hpp"
#include "rwkit/experiment.hpp"
#include "rwkit/parallel.hpp"
#include "rwkit/reconstruct.hpp"
#include "rwkit/rng.hpp"
#include "rwkit/signal_io.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string in;
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(opt.out, std::ios::binary);
  if (!os) {
    throw rwkit::ConfigError("cannot open output '" + opt.out + "'");
  }
  os << text;
}

std::string input_path(const Options& opt, const std::string& from_config, const char* what) {
  const std::string& p = opt.in.empty() ? from_config : opt.in;
  if (p.empty()) {
    throw rwkit::ConfigError(std::string("no ") + what + " given: set '" +
                             (std::string(what) == "dataset" ? "dataset" : "input") + "' in the config or pass --in");
  }
  return p;
}

rwkit::SignalVector load_signal(const std::string& path) {
  try {
    return rwkit::io::read_signal(path);
  } catch (const rwkit::ShapeError& e) {
    throw rwkit::ConfigError(std::string("input signal: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw rwkit::ConfigError(e.what());
  }
}

int cmd_gen_data(const rwkit::ExperimentConfig& cfg, const Options& opt) {
  const auto data = rwkit::gen_data(cfg.n, cfg.count, cfg.sparsity, cfg.master_seed, cfg.weights_seed,
                                    cfg.margin_floor, cfg.unit_magnitude);
  std::ostringstream os;
  rwkit::write_dataset(os, data, rwkit::header_line("gen-data", cfg));
  emit(opt, os.str());
  return 0;
}

int cmd_purify(const rwkit::ExperimentConfig& cfg, const Options& opt) {
  const auto x = load_signal(input_path(opt, cfg.input, "input"));
  const auto result = rwkit::purify(x, cfg.reconstruction(), cfg.master_seed);
  std::string comment = rwkit::header_line("purify", cfg).substr(2) + "\n" +
                        "operator_seed=" + std::to_string(result.operator_seed) +
                        " iterations_run=" + std::to_string(result.iterations_run) +
                        " final_coefficient_l1=" + rwkit::io::format_double(result.final_coefficient_l1) +
                        " imag_residual=" + rwkit::io::format_double(result.imag_residual);
  if (!opt.out.empty() && opt.out.ends_with(".rwb")) {
    rwkit::io::write_signal(opt.out, result.value);
    std::ofstream meta(opt.out + ".meta");
    meta << "# " << comment << '\n';
    return 0;
  }
  std::ostringstream os;
  rwkit::io::write_csv(os, result.value, comment);
  emit(opt, os.str());
  return 0;
}

int cmd_defect(const rwkit::ExperimentConfig& cfg, const Options& opt) {
  const auto x = load_signal(input_path(opt, cfg.input, "input"));
  const auto op = rwkit::make_partial_fourier(x.shape(), cfg.subsample_prob, cfg.master_seed);
  const auto r = rwkit::sparsity_defect(x, op, rwkit::Frame(cfg.frame, cfg.levels), cfg.defect());
  std::ostringstream os;
  os << rwkit::header_line("defect", cfg) << '\n';
  os << "status=" << (r.failed() ? "failed" : "ok") << '\n';
  os << "defect=" << (r.failed() ? std::string("NA") : rwkit::io::format_double(*r.defect)) << '\n';
  os << "iterations=" << r.iterations << '\n';
  os << "final_l1=" << rwkit::io::format_double(r.final_l1) << '\n';
  os << "lambda=" << rwkit::io::format_double(r.lambda) << '\n';
  os << "solution_bound=" << rwkit::io::format_double(cfg.defect_bound) << '\n';
  emit(opt, os.str());
  return 0;
}

int cmd_certify(const rwkit::ExperimentConfig& cfg, const Options& opt) {
  if (!cfg.tau) {
    throw rwkit::ConfigError("config: field 'tau' must be set for certify");
  }
  const auto cert =
      rwkit::certify_probabilistic(cfg.rwp_prob, cfg.alpha, cfg.rho, *cfg.tau, cfg.epsilon, cfg.expected_defect);
  std::ostringstream os;
  os << rwkit::header_line("certify", cfg) << '\n';
  os << rwkit::to_record(cert);
  os << "kappa=" << rwkit::io::format_double(1.0 / cert.gain) << '\n';
  os << "defect_budget="
     << rwkit::io::format_double(rwkit::defect_budget(*cfg.tau, cfg.epsilon, cfg.alpha, cfg.rho)) << '\n';
  if (cfg.alpha < 1.0 / 3.0) {
    os << "rwp_exponent=" << rwkit::io::format_double(rwkit::rwp_probability_exponent(cfg.n, cfg.rho, cfg.alpha))
       << '\n';
  }
  emit(opt, os.str());
  return 0;
}

int cmd_eval(const rwkit::ExperimentConfig& cfg, const Options& opt) {
  const std::string path = input_path(opt, cfg.dataset, "dataset");
  std::ifstream is(path);
  if (!is) {
    throw rwkit::ConfigError("cannot open dataset '" + path + "'");
  }
  const auto data = rwkit::read_dataset(is);
  const auto rows = rwkit::run_eval(cfg, data, rwkit::default_threads());
  emit(opt, rwkit::report_csv(rows, rwkit::header_line("eval", cfg)));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rwkit: compressed-sensing input purification and robustness certificates"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Path to a key=value configuration file")->required();
    sub->add_option("--seed", opt.seed, "Override master_seed");
    sub->add_option("--out", opt.out, "Output path (stdout when omitted)");
    sub->add_option("--in", opt.in, "Input signal or dataset path (overrides the config)");
  };
  auto* gen = app.add_subcommand("gen-data", "Generate a synthetic K-sparse dataset");
  auto* pur = app.add_subcommand("purify", "Purify a signal with the iterative soft-thresholding defense");
  auto* def = app.add_subcommand("defect", "Compute the sparsity defect of a signal");
  auto* cer = app.add_subcommand("certify", "Evaluate the probabilistic robustness certificate");
  auto* eva = app.add_subcommand("eval", "Evaluate a dataset over an epsilon grid and write a CSV report");
  for (auto* sub : {gen, pur, def, cer, eva}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    rwkit::ExperimentConfig cfg = rwkit::load_config(opt.config_path);
    if (opt.seed) {
      cfg.master_seed = *opt.seed;
    }
    cfg.validate();
    if (gen->parsed()) {
      return cmd_gen_data(cfg, opt);
    }
    if (pur->parsed()) {
      return cmd_purify(cfg, opt);
    }
    if (def->parsed()) {
      return cmd_defect(cfg, opt);
    }
    if (cer->parsed()) {
      return cmd_certify(cfg, opt);
    }
    return cmd_eval(cfg, opt);
  } catch (const rwkit::ConfigError& e) {
    std::cerr << "rwkit: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rwkit::ParameterError& e) {
    std::cerr << "rwkit: parameter error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rwkit::InfeasibleError& e) {
    std::cerr << "rwkit: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rwkit::ShapeError& e) {
    std::cerr << "rwkit: shape error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rwkit::NumericError& e) {
    std::cerr << "rwkit: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const rwkit::IterationCapError& e) {
    std::cerr << "rwkit: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const rwkit::EstimationError& e) {
    std::cerr << "rwkit: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "rwkit: " << e.what() << '\n';
    return kExitConfig;
  }
}
