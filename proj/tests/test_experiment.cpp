#include <filesystem>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "rwkit/experiment.hpp"
#include "rwkit/signal_io.hpp"

using namespace rwkit;

TEST_CASE("config round trip") {
  ExperimentConfig cfg;
  CHECK(parse_config(serialize(cfg)) == cfg);

  cfg.frame = FrameKind::db4;
  cfg.levels = 3;
  cfg.threshold = 0.1 + 0.2;
  cfg.tau = 1.0 / 3.0;
  cfg.epsilon_grid = {0.0, 0.01, 1e-7 * 3.0};
  cfg.unit_magnitude = true;
  cfg.master_seed = std::numeric_limits<std::uint64_t>::max();
  cfg.input = "signal.csv";
  CHECK(parse_config(serialize(cfg)) == cfg);
  CHECK(config_hash(parse_config(serialize(cfg))) == config_hash(cfg));
  CHECK(config_hash(cfg) != config_hash(ExperimentConfig{}));
  CHECK(hex64(0xabcULL) == "0000000000000abc");
}

TEST_CASE("config parsing errors name the field") {
  auto message = [](std::string_view text) {
    try {
      parse_config(text).validate();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("bogus = 1").find("bogus") != std::string::npos);
  CHECK(message("threshold = abc").find("threshold") != std::string::npos);
  CHECK(message("threshold = -1").find("threshold") != std::string::npos);
  CHECK(message("iterations = -3").find("iterations") != std::string::npos);
  CHECK(message("frame = curvelet").find("frame") != std::string::npos);
  CHECK(message("epsilon_grid = 0.2, 0.1").find("epsilon_grid") != std::string::npos);
  CHECK(message("sparsity = 500").find("sparsity") != std::string::npos);
  CHECK(message("frame = haar\nlevels = 9\nn = 128").find("levels") != std::string::npos);
  CHECK(message("just words").find("line 1") != std::string::npos);
  CHECK(message("# comment only\n\nthreshold = 0.5 # trailing").empty());
}

TEST_CASE("shipped default matches the reference Fourier settings") {
  const ExperimentConfig cfg;
  CHECK(cfg.frame == FrameKind::dft);
  CHECK(cfg.threshold == 0.11);
  CHECK(cfg.iterations == 49);
  CHECK(cfg.subsample_prob == 0.7494);
}

TEST_CASE("gen_data") {
  const auto data = gen_data(64, 20, 5, 3, 7);
  REQUIRE(data.samples.size() == 20);
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    std::size_t nonzero = 0;
    for (const auto& v : data.samples[i].values()) {
      nonzero += v != Complex{} ? 1 : 0;
    }
    CHECK(nonzero == 5);
    CHECK(data.labels[i] == data.classifier(data.samples[i]));
    CHECK(margin(data.classifier, data.samples[i]) >= 1e-3);
  }
  CHECK(data.classifier.weight_norm() == doctest::Approx(1.0).epsilon(1e-14));

  const auto dense = gen_data(16, 3, 16, 1, 2);
  for (const auto& s : dense.samples) {
    for (const auto& v : s.values()) {
      CHECK(v != Complex{});
    }
  }
  const auto unit = gen_data(32, 4, 3, 1, 2, 1e-3, true);
  for (const auto& s : unit.samples) {
    for (const auto& v : s.values()) {
      CHECK((v == Complex{} || std::abs(v) == 1.0));
    }
  }

  std::ostringstream a, b, c;
  write_dataset(a, gen_data(64, 10, 4, 11, 7), "# h");
  write_dataset(b, gen_data(64, 10, 4, 11, 7), "# h");
  write_dataset(c, gen_data(64, 10, 4, 12, 7), "# h");
  CHECK(a.str() == b.str());
  CHECK(a.str() != c.str());

  std::istringstream in(a.str());
  const auto back = read_dataset(in);
  const auto orig = gen_data(64, 10, 4, 11, 7);
  CHECK(back.classifier.weights() == orig.classifier.weights());
  CHECK(back.labels == orig.labels);
  for (std::size_t i = 0; i < back.samples.size(); ++i) {
    CHECK(back.samples[i] == orig.samples[i]);
  }

  CHECK_THROWS_AS(gen_data(8, 1, 9, 0, 0), ParameterError);
  CHECK_THROWS_AS(gen_data(8, 1, 0, 0, 0), ParameterError);
}

TEST_CASE("signal files are bit exact") {
  Rng rng(61);
  const SignalVector x(Shape::image(4, 8, 3), oracle::random_complex(rng, 96));
  {
    std::stringstream ss;
    io::write_csv(ss, x, "note");
    CHECK(io::read_csv(ss) == x);
  }
  {
    std::stringstream ss;
    io::write_binary(ss, x);
    CHECK(ss.str().size() == 16 + 96 * 16);
    CHECK(ss.str().substr(0, 4) == "RWKS");
    CHECK(io::read_binary(ss) == x);
  }
  const auto dir = std::filesystem::temp_directory_path() / "rwkit_io_test";
  std::filesystem::create_directories(dir);
  io::write_signal(dir / "x.csv", x);
  io::write_signal(dir / "x.rwb", x);
  CHECK(io::read_signal(dir / "x.csv") == x);
  CHECK(io::read_signal(dir / "x.rwb") == x);
  std::filesystem::remove_all(dir);

  std::istringstream bad("index,real,imag\n0,1,0\n2,1,0\n");
  CHECK_THROWS(io::read_csv(bad));
}

TEST_CASE("eval at zero radius reports the defended clean accuracy") {
  ExperimentConfig cfg;
  cfg.frame = FrameKind::identity;
  cfg.threshold = 0.02;
  cfg.iterations = 100;
  cfg.subsample_prob = 0.5;
  cfg.n = 64;
  cfg.count = 8;
  cfg.probes = 4;
  cfg.num_operators = 2;
  cfg.epsilon_grid = {0.0, 0.05};
  const auto data = gen_data(cfg.n, cfg.count, cfg.sparsity, 1, cfg.weights_seed);
  const auto rows = run_eval(cfg, data, 1);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].defended_accuracy_under_probe == rows[0].clean_accuracy);
  CHECK(rows[1].defended_accuracy_under_probe <= rows[0].clean_accuracy);
  for (const auto& r : rows) {
    CHECK(r.clean_accuracy >= 0.0);
    CHECK(r.clean_accuracy <= 1.0);
  }

  const auto header = header_line("eval", cfg);
  const auto csv1 = report_csv(rows, header);
  const auto csv2 = report_csv(run_eval(cfg, data, 3), header);
  CHECK(csv1 == csv2);
  CHECK(csv1.find("# schema=rwkit-report-v1") != std::string::npos);
  CHECK(csv1.rfind(header, 0) == 0);
}
