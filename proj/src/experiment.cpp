#include "rwkit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>

#include "rwkit/parallel.hpp"
#include "rwkit/rng.hpp"
#include "rwkit/signal_io.hpp"

namespace rwkit {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) {
    return {};
  }
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || !std::isfinite(d)) {
    throw ConfigError("config: field '" + key + "' expects a finite number, got '" + v + "'");
  }
  return d;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  unsigned long long u = 0;
  try {
    u = std::stoull(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size() || v[0] == '-') {
    throw ConfigError("config: field '" + key + "' expects a nonnegative integer, got '" + v + "'");
  }
  return u;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no") {
    return false;
  }
  throw ConfigError("config: field '" + key + "' expects true or false, got '" + v + "'");
}

std::string fmt(double v) { return io::format_double(v); }

struct Field {
  std::string key;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define RWKIT_DOUBLE(name)                                                                                             \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = to_double(#name, v); },                        \
        [](const ExperimentConfig& c) { return fmt(c.name); }}
#define RWKIT_SIZE(name)                                                                                               \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = static_cast<std::size_t>(to_u64(#name, v)); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.name); }}
#define RWKIT_U64(name)                                                                                                \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = to_u64(#name, v); },                           \
        [](const ExperimentConfig& c) { return std::to_string(c.name); }}
#define RWKIT_BOOL(name)                                                                                               \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = to_bool(#name, v); },                          \
        [](const ExperimentConfig& c) { return std::string(c.name ? "true" : "false"); }}
#define RWKIT_STRING(name)                                                                                             \
  Field{#name, [](ExperimentConfig& c, const std::string& v) { c.name = v; },                                          \
        [](const ExperimentConfig& c) { return c.name; }}

const std::vector<Field>& fields() {
  static const std::vector<Field> table{
      Field{"frame",
            [](ExperimentConfig& c, const std::string& v) {
              try {
                c.frame = parse_frame_kind(v);
              } catch (const ParameterError&) {
                throw ConfigError("config: field 'frame' expects identity, haar, db4 or dft, got '" + v + "'");
              }
            },
            [](const ExperimentConfig& c) { return to_string(c.frame); }},
      RWKIT_SIZE(levels),
      RWKIT_DOUBLE(threshold),
      RWKIT_SIZE(iterations),
      RWKIT_DOUBLE(subsample_prob),
      RWKIT_DOUBLE(defect_bound),
      RWKIT_DOUBLE(bregman_lambda),
      RWKIT_DOUBLE(defect_tolerance),
      RWKIT_SIZE(defect_max_iterations),
      RWKIT_BOOL(defect_calibrate),
      RWKIT_SIZE(num_operators),
      RWKIT_DOUBLE(alpha),
      RWKIT_DOUBLE(rho),
      Field{"tau",
            [](ExperimentConfig& c, const std::string& v) {
              if (v == "auto") {
                c.tau.reset();
              } else {
                c.tau = to_double("tau", v);
              }
            },
            [](const ExperimentConfig& c) { return c.tau ? fmt(*c.tau) : std::string("auto"); }},
      RWKIT_DOUBLE(rwp_prob),
      RWKIT_DOUBLE(expected_defect),
      RWKIT_DOUBLE(epsilon),
      RWKIT_SIZE(n),
      RWKIT_SIZE(count),
      RWKIT_SIZE(sparsity),
      RWKIT_U64(weights_seed),
      RWKIT_DOUBLE(margin_floor),
      RWKIT_BOOL(unit_magnitude),
      RWKIT_U64(master_seed),
      Field{"epsilon_grid",
            [](ExperimentConfig& c, const std::string& v) {
              c.epsilon_grid.clear();
              std::istringstream is(v);
              for (std::string tok; std::getline(is, tok, ',');) {
                c.epsilon_grid.push_back(to_double("epsilon_grid", trim(tok)));
              }
            },
            [](const ExperimentConfig& c) {
              std::string out;
              for (std::size_t i = 0; i < c.epsilon_grid.size(); ++i) {
                out += (i ? "," : "") + fmt(c.epsilon_grid[i]);
              }
              return out;
            }},
      RWKIT_SIZE(probes),
      RWKIT_STRING(input),
      RWKIT_STRING(dataset),
  };
  return table;
}

#undef RWKIT_DOUBLE
#undef RWKIT_SIZE
#undef RWKIT_U64
#undef RWKIT_BOOL
#undef RWKIT_STRING

void require(bool ok, const char* field, const std::string& why) {
  if (!ok) {
    throw ConfigError(std::string("config: field '") + field + "' " + why);
  }
}

} // namespace

ReconstructionParams ExperimentConfig::reconstruction() const {
  return {iterations, threshold, subsample_prob, Frame(frame, levels)};
}

DefectParams ExperimentConfig::defect() const {
  return {defect_bound, bregman_lambda, defect_tolerance, defect_max_iterations, defect_calibrate};
}

void ExperimentConfig::validate() const {
  require(iterations >= 1, "iterations", "must be at least 1");
  require(threshold >= 0.0, "threshold", "must be nonnegative");
  require(subsample_prob >= 0.0 && subsample_prob <= 1.0, "subsample_prob", "must lie in [0, 1]");
  require(defect_bound > 0.0, "defect_bound", "must be positive");
  require(bregman_lambda > 0.0, "bregman_lambda", "must be positive");
  require(defect_tolerance > 0.0, "defect_tolerance", "must be positive");
  require(defect_max_iterations >= 1, "defect_max_iterations", "must be at least 1");
  require(num_operators >= 1, "num_operators", "must be at least 1");
  require(alpha > 0.0, "alpha", "must be positive");
  require(rho > 0.0, "rho", "must be positive");
  require(!tau || *tau >= 0.0, "tau", "must be nonnegative or auto");
  require(rwp_prob >= 0.0 && rwp_prob <= 1.0, "rwp_prob", "must lie in [0, 1]");
  require(expected_defect >= 0.0, "expected_defect", "must be nonnegative");
  require(epsilon >= 0.0, "epsilon", "must be nonnegative");
  require(n >= 1, "n", "must be at least 1");
  require(count >= 1, "count", "must be at least 1");
  require(sparsity >= 1 && sparsity <= n, "sparsity", "must lie in [1, n]");
  require(margin_floor >= 0.0, "margin_floor", "must be nonnegative");
  require(probes >= 1, "probes", "must be at least 1");
  require(!epsilon_grid.empty(), "epsilon_grid", "must not be empty");
  for (std::size_t i = 0; i < epsilon_grid.size(); ++i) {
    require(epsilon_grid[i] >= 0.0, "epsilon_grid", "must contain nonnegative radii");
    require(i == 0 || epsilon_grid[i] > epsilon_grid[i - 1], "epsilon_grid", "must be strictly increasing");
  }
  try {
    Frame(frame, levels).check_compatible(Shape::line(n));
  } catch (const ShapeError& e) {
    throw ConfigError(std::string("config: field 'levels' incompatible with n: ") + e.what());
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream is{std::string(text)};
  std::size_t lineno = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(lineno) + " is not key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
    if (it == table.end()) {
      throw ConfigError("config: unknown field '" + key + "' on line " + std::to_string(lineno));
    }
    it->set(cfg, value);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::stringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

std::string serialize(const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key + " = " + f.get(config) + "\n";
  }
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : serialize(config)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string header_line(std::string_view command, const ExperimentConfig& config) {
  return "# rwkit " + std::string(command) + " config_hash=" + hex64(config_hash(config)) +
         " master_seed=" + std::to_string(config.master_seed);
}

Dataset gen_data(std::size_t n, std::size_t count, std::size_t sparsity, std::uint64_t seed,
                 std::uint64_t weights_seed, double margin_floor, bool unit_magnitude) {
  if (n < 1 || sparsity < 1 || sparsity > n) {
    throw ParameterError("gen_data: need 1 <= K <= n");
  }
  if (!(margin_floor >= 0.0)) {
    throw ParameterError("gen_data: margin floor must be nonnegative");
  }

  Rng wrng(weights_seed);
  RealVector w(n);
  double wn = 0.0;
  do {
    wn = 0.0;
    for (auto& v : w) {
      v = wrng.normal();
      wn += v * v;
    }
  } while (wn == 0.0);
  wn = std::sqrt(wn);
  for (auto& v : w) {
    v /= wn;
  }
  Dataset data{LinearClassifier(w), {}, {}};

  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, i));
    for (;;) {
      RealVector x(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        perm[k] = k;
      }
      for (std::size_t k = 0; k < sparsity; ++k) {
        const std::size_t j = k + static_cast<std::size_t>(rng.below(n - k));
        std::swap(perm[k], perm[j]);
        double v = 0.0;
        if (unit_magnitude) {
          v = rng.bernoulli(0.5) ? 1.0 : -1.0;
        } else {
          do {
            v = rng.uniform(-1.0, 1.0);
          } while (v == 0.0);
        }
        x[perm[k]] = v;
      }
      SignalVector sx(Shape::line(n), x);
      if (margin(data.classifier, sx) >= margin_floor) {
        data.labels.push_back(data.classifier(sx));
        data.samples.push_back(std::move(sx));
        break;
      }
    }
  }
  return data;
}

void write_dataset(std::ostream& os, const Dataset& data, std::string_view header) {
  if (!header.empty()) {
    os << header << '\n';
  }
  os << "# rwkit-dataset-v1 n=" << data.classifier.weights().size() << " count=" << data.samples.size() << '\n';
  os << "weights,0";
  for (double w : data.classifier.weights()) {
    os << ',' << fmt(w);
  }
  os << '\n';
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    os << "sample," << data.labels[i];
    for (const auto& v : data.samples[i].values()) {
      os << ',' << fmt(v.real());
    }
    os << '\n';
  }
}

Dataset read_dataset(std::istream& is) {
  std::optional<LinearClassifier> clf;
  std::vector<SignalVector> samples;
  std::vector<int> labels;
  std::size_t lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream fields_in(line);
    std::string kind, label;
    std::getline(fields_in, kind, ',');
    std::getline(fields_in, label, ',');
    RealVector values;
    for (std::string tok; std::getline(fields_in, tok, ',');) {
      values.push_back(to_double("dataset line " + std::to_string(lineno), trim(tok)));
    }
    if (kind == "weights") {
      clf.emplace(std::move(values));
    } else if (kind == "sample") {
      const int lab = static_cast<int>(to_double("dataset label", label));
      if (lab != 1 && lab != -1) {
        throw ConfigError("dataset: label must be +1 or -1 on line " + std::to_string(lineno));
      }
      labels.push_back(lab);
      samples.emplace_back(Shape::line(values.size()), values);
    } else {
      throw ConfigError("dataset: unknown record '" + kind + "' on line " + std::to_string(lineno));
    }
  }
  if (!clf) {
    throw ConfigError("dataset: missing weights record");
  }
  for (const auto& s : samples) {
    if (s.size() != clf->weights().size()) {
      throw ConfigError("dataset: sample length differs from weight length");
    }
  }
  return {std::move(*clf), std::move(samples), std::move(labels)};
}

std::vector<ReportRow> run_eval(const ExperimentConfig& config, const Dataset& data, std::size_t threads) {
  config.validate();
  if (data.samples.empty()) {
    throw ConfigError("eval: dataset has no samples");
  }
  const ReconstructionParams params = config.reconstruction();
  const DefectParams dparams = config.defect();
  const std::size_t count = data.samples.size();
  const std::size_t grid = config.epsilon_grid.size();
  const LinearClassifier& clf = data.classifier;

  struct SampleResult {
    bool clean_correct{false};
    std::vector<std::uint8_t> correct_under_probe;
    std::vector<double> recon_error;
    std::optional<double> defect;
  };
  std::vector<SampleResult> per(count);

  parallel_for(count, threads, [&](std::size_t i) {
    const SignalVector& x = data.samples[i];
    const std::uint64_t seed = derive_seed(config.master_seed, i);
    const SensingOperator op = make_partial_fourier(x.shape(), params.subsample_prob, seed);
    auto defended_label = [&](const SignalVector& v) { return clf(purify_with(v, op, params).value); };

    SampleResult r;
    r.clean_correct = defended_label(x) == data.labels[i];
    const DefectResult d = sparsity_defect(x, op, params.frame, dparams);
    r.defect = d.defect;

    std::vector<SignalVector> dirs{worst_case_direction(clf, x)};
    Rng rng(derive_seed(seed, 1));
    for (std::size_t p = 0; p < config.probes; ++p) {
      RealVector g(x.size());
      for (auto& v : g) {
        v = rng.normal();
      }
      SignalVector gd(x.shape(), g);
      dirs.push_back(gd * (1.0 / gd.norm2()));
    }

    for (const double eps : config.epsilon_grid) {
      r.recon_error.push_back((purify_with(x + dirs.front() * eps, op, params).value - x).norm2());
      bool ok = r.clean_correct;
      if (eps > 0.0) {
        for (const auto& dir : dirs) {
          if (!ok) {
            break;
          }
          ok = defended_label(x + dir * eps) == data.labels[i];
        }
      }
      r.correct_under_probe.push_back(ok ? 1 : 0);
    }
    per[i] = std::move(r);
  });

  double tau = 0.0;
  if (config.tau) {
    tau = *config.tau;
  } else {
    tau = margin(clf, data.samples.front());
    for (const auto& s : data.samples) {
      tau = std::min(tau, margin(clf, s));
    }
  }
  const ExpectedDefect estimate =
      expected_defect(data.samples, params.frame, dparams, params.subsample_prob, config.num_operators,
                      derive_seed(config.master_seed, 0xCE47ULL), threads);

  double clean = 0.0;
  double defect_sum = 0.0;
  std::size_t defect_count = 0;
  for (const auto& r : per) {
    clean += r.clean_correct ? 1.0 : 0.0;
    if (r.defect) {
      defect_sum += *r.defect;
      ++defect_count;
    }
  }

  std::vector<ReportRow> rows;
  for (std::size_t e = 0; e < grid; ++e) {
    ReportRow row;
    row.epsilon = config.epsilon_grid[e];
    row.clean_accuracy = clean / static_cast<double>(count);
    double probe_ok = 0.0;
    double err = 0.0;
    for (const auto& r : per) {
      probe_ok += r.correct_under_probe[e];
      err += r.recon_error[e];
    }
    row.defended_accuracy_under_probe = probe_ok / static_cast<double>(count);
    row.mean_reconstruction_error = err / static_cast<double>(count);
    row.mean_defect = defect_count ? defect_sum / static_cast<double>(defect_count) : std::nan("");
    try {
      row.certificate = certify_probabilistic(config.rwp_prob, config.alpha, config.rho, tau, row.epsilon,
                                              estimate.estimate);
    } catch (const InfeasibleError&) {
      row.certificate.reset();
    }
    row.seed = config.master_seed;
    rows.push_back(row);
  }
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows, std::string_view header) {
  std::ostringstream os;
  if (!header.empty()) {
    os << header << '\n';
  }
  os << "# schema=" << kReportSchema << '\n';
  os << "epsilon,clean_accuracy,defended_accuracy_under_probe,mean_reconstruction_error,mean_defect,"
        "cert_radius,cert_probability,cert_gain,cert_status,seed\n";
  for (const auto& r : rows) {
    os << fmt(r.epsilon) << ',' << fmt(r.clean_accuracy) << ',' << fmt(r.defended_accuracy_under_probe) << ','
       << fmt(r.mean_reconstruction_error) << ',' << fmt(r.mean_defect) << ',';
    if (r.certificate) {
      os << fmt(r.certificate->radius) << ',' << fmt(r.certificate->probability) << ',' << fmt(r.certificate->gain)
         << ',' << (r.certificate->vacuous ? "vacuous" : "ok");
    } else {
      os << "NA,NA,NA,infeasible";
    }
    os << ',' << r.seed << '\n';
  }
  return os.str();
}

} // namespace rwkit
