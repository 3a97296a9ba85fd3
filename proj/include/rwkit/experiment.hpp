#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rwkit/classifier.hpp"
#include "rwkit/defect.hpp"
#include "rwkit/frame.hpp"
#include "rwkit/reconstruct.hpp"

namespace rwkit {

/// Flat key=value experiment configuration. Defaults follow the reference
/// Fourier purifier setting (threshold 0.11,
/// 49 iterations, 74.94% of coefficients retained).
struct ExperimentConfig {
  // purifier
  FrameKind frame{FrameKind::dft};
  std::size_t levels{0};
  double threshold{0.11};
  std::size_t iterations{49};
  double subsample_prob{0.7494};

  // sparsity defect
  double defect_bound{1.0};
  double bregman_lambda{0.5};
  double defect_tolerance{1e-6};
  std::size_t defect_max_iterations{10000};
  bool defect_calibrate{true};
  std::size_t num_operators{8};

  // certificate
  double alpha{3.0};
  double rho{0.05};
  std::optional<double> tau;
  double rwp_prob{0.99};
  double expected_defect{0.0};
  double epsilon{0.1};

  // synthetic data
  std::size_t n{128};
  std::size_t count{50};
  std::size_t sparsity{4};
  std::uint64_t weights_seed{7};
  double margin_floor{1e-3};
  bool unit_magnitude{false};

  // run
  std::uint64_t master_seed{0};
  std::vector<double> epsilon_grid{0.05, 0.1, 0.2};
  std::size_t probes{200};
  std::string input;
  std::string dataset;

  ReconstructionParams reconstruction() const;
  DefectParams defect() const;

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses `key = value` lines; `#` starts a comment. Unset keys keep their
/// defaults. Throws ConfigError naming the key on unknown keys or bad values.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

/// Canonical text form: every key, fixed order, %.17g doubles.
std::string serialize(const ExperimentConfig& config);

/// FNV-1a 64 of serialize(config).
std::uint64_t config_hash(const ExperimentConfig& config);
std::string hex64(std::uint64_t v);

struct Dataset {
  LinearClassifier classifier;
  std::vector<SignalVector> samples;
  std::vector<int> labels;
};

/// `count` K-sparse signals of length n. Sample i draws from the stream
/// derive_seed(seed, i): K distinct support positions, values uniform in
/// [-1, 1] (or +-1 when unit_magnitude), redrawn until the margin against the
/// classifier reaches margin_floor. The classifier is a unit Gaussian
/// direction drawn from weights_seed; labels are its predictions.
Dataset gen_data(std::size_t n, std::size_t count, std::size_t sparsity, std::uint64_t seed,
                 std::uint64_t weights_seed, double margin_floor = 1e-3, bool unit_magnitude = false);

void write_dataset(std::ostream& os, const Dataset& data, std::string_view header);
Dataset read_dataset(std::istream& is);

struct ReportRow {
  double epsilon{0.0};
  double clean_accuracy{0.0};
  double defended_accuracy_under_probe{0.0};
  double mean_reconstruction_error{0.0};
  double mean_defect{0.0};
  std::optional<Certificate> certificate;
  std::uint64_t seed{0};
};

/// Evaluates the defended classifier on `data` at every epsilon of the grid.
/// Sample i is purified with the operator seeded derive_seed(master_seed, i).
/// A sample counts as correct under probe at radius eps if the defended label
/// matches its true label at x + eps d for the classifier's worst-case
/// direction d and for `probes` random unit directions.
std::vector<ReportRow> run_eval(const ExperimentConfig& config, const Dataset& data, std::size_t threads);

inline constexpr std::string_view kReportSchema = "rwkit-report-v1";
std::string report_csv(const std::vector<ReportRow>& rows, std::string_view header);

/// "# rwkit <command> config_hash=<hex> master_seed=<n>"
std::string header_line(std::string_view command, const ExperimentConfig& config);

} // namespace rwkit
