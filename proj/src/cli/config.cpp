#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lenia::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& source, int line, const std::string& what) {
  throw std::runtime_error(source + ":" + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double to_double(const std::string& key, const std::string& value, const std::string& source,
                 int line) {
  double out = 0.0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    parse_fail(source, line, key + ": expected a number, got '" + value + "'");
  }
  return out;
}

int to_int(const std::string& key, const std::string& value, const std::string& source,
           int line) {
  int out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    parse_fail(source, line, key + ": expected an integer, got '" + value + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value, const std::string& source,
                     int line) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
  if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
    parse_fail(source, line, key + ": expected an unsigned integer, got '" + value + "'");
  }
  return out;
}

const char* fitness_name(FitnessKind kind) {
  switch (kind) {
    case FitnessKind::kVot: return "vot";
    case FitnessKind::kAe: return "ae";
    case FitnessKind::kAevot: return "aevot";
  }
  return "?";
}

const char* sampling_name(SamplingStrategy::Kind kind) {
  switch (kind) {
    case SamplingStrategy::Kind::kAllFrames: return "all";
    case SamplingStrategy::Kind::kEveryNth: return "every_nth";
    case SamplingStrategy::Kind::kLastK: return "last_k";
  }
  return "?";
}

}  // namespace

GrowthParams ExperimentConfig::growth_params() const {
  return GrowthParams{growth_mu, growth_sigma, dt};
}

GaConfig ExperimentConfig::ga_config() const {
  GaConfig ga;
  ga.population_size = population_size;
  ga.generations = generations;
  ga.mutation_rate = mutation_rate;
  ga.elites = elites;
  ga.board_seed_policy = board_seed_policy;
  ga.master_seed = master_seed;
  ga.board_size = board_size;
  ga.steps = steps;
  return ga;
}

SamplingStrategy ExperimentConfig::sampling_strategy() const {
  return SamplingStrategy{sampling, sampling_param};
}

RingSpec ExperimentConfig::ring_spec() const {
  return RingSpec{ring_radius_center, ring_shell_width};
}

void ExperimentConfig::validate() const {
  auto reject = [](const std::string& key, const std::string& why) {
    throw std::runtime_error("config: " + key + " " + why);
  };
  if (board_size < kGenomeSize) reject("board_size", "must be >= kernel_size (16)");
  if (kernel_size != kGenomeSize) {
    reject("kernel_size", "must be 16 (the genome is a fixed 16x16 grid)");
  }
  if (!(growth_sigma > 0.0)) reject("growth_sigma", "must be > 0");
  if (!(dt >= 0.0)) reject("dt", "must be >= 0");
  if (steps < 0) reject("steps", "must be >= 0");
  if (dataset_size < 1) reject("dataset_size", "must be >= 1");
  if (epochs < 1) reject("epochs", "must be >= 1");
  if (batch_size < 1) reject("batch_size", "must be >= 1");
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    reject("test_fraction", "must be in (0, 1)");
  }
  if (!(learning_rate > 0.0)) reject("learning_rate", "must be > 0");
  if (population_size < 2) reject("population_size", "must be >= 2");
  if (generations < 1) reject("generations", "must be >= 1");
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) {
    reject("mutation_rate", "must be in [0, 1]");
  }
  if (elites < 1 || elites >= population_size) {
    reject("elites", "must satisfy 1 <= elites < population_size");
  }
  if (sampling != SamplingStrategy::Kind::kAllFrames && sampling_param < 1) {
    reject("sampling_param", "must be >= 1");
  }
  if (!(alive_threshold >= 0.0 && alive_threshold <= 1.0)) {
    reject("alive_threshold", "must be in [0, 1]");
  }
  if (!(ring_radius_center > 0.0 && ring_radius_center <= 1.0)) {
    reject("ring_radius_center", "must be in (0, 1]");
  }
  if (!(ring_shell_width > 0.0)) reject("ring_shell_width", "must be > 0");
  if (checkpoint_interval < 1) reject("checkpoint_interval", "must be >= 1");
  if (ae_model.empty()) reject("ae_model", "must not be empty");
  if (dataset_file.empty()) reject("dataset_file", "must not be empty");
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& source) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      parse_fail(source, line_no, "expected key=value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) parse_fail(source, line_no, "empty key");

    if (key == "board_size") cfg.board_size = to_int(key, value, source, line_no);
    else if (key == "kernel_size") cfg.kernel_size = to_int(key, value, source, line_no);
    else if (key == "growth_mu") cfg.growth_mu = to_double(key, value, source, line_no);
    else if (key == "growth_sigma") cfg.growth_sigma = to_double(key, value, source, line_no);
    else if (key == "dt") cfg.dt = to_double(key, value, source, line_no);
    else if (key == "steps") cfg.steps = to_int(key, value, source, line_no);
    else if (key == "dataset_size") cfg.dataset_size = to_int(key, value, source, line_no);
    else if (key == "epochs") cfg.epochs = to_int(key, value, source, line_no);
    else if (key == "batch_size") cfg.batch_size = to_int(key, value, source, line_no);
    else if (key == "test_fraction") cfg.test_fraction = to_double(key, value, source, line_no);
    else if (key == "learning_rate") cfg.learning_rate = to_double(key, value, source, line_no);
    else if (key == "population_size") cfg.population_size = to_int(key, value, source, line_no);
    else if (key == "generations") cfg.generations = to_int(key, value, source, line_no);
    else if (key == "mutation_rate") cfg.mutation_rate = to_double(key, value, source, line_no);
    else if (key == "elites") cfg.elites = to_int(key, value, source, line_no);
    else if (key == "fitness") {
      if (value == "vot") cfg.fitness = FitnessKind::kVot;
      else if (value == "ae") cfg.fitness = FitnessKind::kAe;
      else if (value == "aevot") cfg.fitness = FitnessKind::kAevot;
      else parse_fail(source, line_no, "fitness: expected vot|ae|aevot, got '" + value + "'");
    } else if (key == "sampling") {
      if (value == "all") cfg.sampling = SamplingStrategy::Kind::kAllFrames;
      else if (value == "every_nth") cfg.sampling = SamplingStrategy::Kind::kEveryNth;
      else if (value == "last_k") cfg.sampling = SamplingStrategy::Kind::kLastK;
      else parse_fail(source, line_no, "sampling: expected all|every_nth|last_k, got '" + value + "'");
    } else if (key == "sampling_param") {
      cfg.sampling_param = to_int(key, value, source, line_no);
    } else if (key == "alive_threshold") {
      cfg.alive_threshold = to_double(key, value, source, line_no);
    } else if (key == "ring_radius_center") {
      cfg.ring_radius_center = to_double(key, value, source, line_no);
    } else if (key == "ring_shell_width") {
      cfg.ring_shell_width = to_double(key, value, source, line_no);
    } else if (key == "init") {
      if (value == "random") cfg.init = InitKind::kRandom;
      else if (value == "ring") cfg.init = InitKind::kRing;
      else parse_fail(source, line_no, "init: expected random|ring, got '" + value + "'");
    } else if (key == "master_seed") {
      cfg.master_seed = to_u64(key, value, source, line_no);
    } else if (key == "board_seed_policy") {
      if (value == "fixed") cfg.board_seed_policy = BoardSeedPolicy::kFixedPerRun;
      else if (value == "per_generation") cfg.board_seed_policy = BoardSeedPolicy::kPerGeneration;
      else parse_fail(source, line_no, "board_seed_policy: expected fixed|per_generation");
    } else if (key == "checkpoint_interval") {
      cfg.checkpoint_interval = to_int(key, value, source, line_no);
    } else if (key == "ae_model") {
      cfg.ae_model = value;
    } else if (key == "dataset_file") {
      cfg.dataset_file = value;
    } else {
      parse_fail(source, line_no, "unknown key '" + key + "'");
    }
  }
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "board_size=" << c.board_size << '\n'
      << "kernel_size=" << c.kernel_size << '\n'
      << "growth_mu=" << fmt_double(c.growth_mu) << '\n'
      << "growth_sigma=" << fmt_double(c.growth_sigma) << '\n'
      << "dt=" << fmt_double(c.dt) << '\n'
      << "steps=" << c.steps << '\n'
      << "dataset_size=" << c.dataset_size << '\n'
      << "epochs=" << c.epochs << '\n'
      << "batch_size=" << c.batch_size << '\n'
      << "test_fraction=" << fmt_double(c.test_fraction) << '\n'
      << "learning_rate=" << fmt_double(c.learning_rate) << '\n'
      << "population_size=" << c.population_size << '\n'
      << "generations=" << c.generations << '\n'
      << "mutation_rate=" << fmt_double(c.mutation_rate) << '\n'
      << "elites=" << c.elites << '\n'
      << "fitness=" << fitness_name(c.fitness) << '\n'
      << "sampling=" << sampling_name(c.sampling) << '\n'
      << "sampling_param=" << c.sampling_param << '\n'
      << "alive_threshold=" << fmt_double(c.alive_threshold) << '\n'
      << "ring_radius_center=" << fmt_double(c.ring_radius_center) << '\n'
      << "ring_shell_width=" << fmt_double(c.ring_shell_width) << '\n'
      << "init=" << (c.init == InitKind::kRandom ? "random" : "ring") << '\n'
      << "master_seed=" << c.master_seed << '\n'
      << "board_seed_policy="
      << (c.board_seed_policy == BoardSeedPolicy::kFixedPerRun ? "fixed" : "per_generation")
      << '\n'
      << "checkpoint_interval=" << c.checkpoint_interval << '\n'
      << "ae_model=" << c.ae_model << '\n'
      << "dataset_file=" << c.dataset_file << '\n';
  return out.str();
}

std::string serialize_config_without_seed(const ExperimentConfig& config) {
  ExperimentConfig copy = config;
  copy.master_seed = 0;
  return serialize_config(copy);
}

}  // namespace lenia::cli
