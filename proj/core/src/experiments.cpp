// Copyright 2026 The qdrive Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdrive/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qdrive/energetics.hpp"
#include "qdrive/fluctuation.hpp"
#include "qdrive/jaynes_cummings.hpp"

namespace qdrive::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const std::set<std::string> kKnownKeys = {
    "experiment", "g",       "theta",     "alpha",   "fock_n",  "beta",
    "n_trunc",    "nbar",    "t_measure", "t_max",   "step",    "stride",
    "csv_out",    "json_out"};

struct RawConfig {
  std::map<std::string, std::string> values;
  std::string source;

  bool has(const std::string& key) const { return values.count(key) > 0; }

  std::string get_string(const std::string& key) const { return values.at(key); }

  double get_double(const std::string& key) const {
    const std::string& text = values.at(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      throw ValidationError(source + ": field '" + key + "': not a number: '" + text + "'");
    }
    if (used != text.size()) {
      throw ValidationError(source + ": field '" + key + "': trailing characters in '" +
                            text + "'");
    }
    return v;
  }

  int get_int(const std::string& key) const {
    const double v = get_double(key);
    if (v != std::floor(v)) {
      throw ValidationError(source + ": field '" + key + "': expected an integer");
    }
    return int(v);
  }

  std::vector<double> get_double_list(const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(values.at(key));
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto begin = item.find_first_not_of(" \t");
      if (begin == std::string::npos) {
        throw ValidationError(source + ": field '" + key + "': empty list entry");
      }
      const auto end = item.find_last_not_of(" \t");
      try {
        out.push_back(std::stod(item.substr(begin, end - begin + 1)));
      } catch (const std::exception&) {
        throw ValidationError(source + ": field '" + key + "': not a number list");
      }
    }
    if (out.empty()) {
      throw ValidationError(source + ": field '" + key + "': empty list");
    }
    return out;
  }

  void require(const std::string& key) const {
    if (!has(key)) {
      throw ValidationError(source + ": missing required field '" + key + "'");
    }
  }
};

RawConfig read_raw(std::istream& in, const std::string& source_name) {
  RawConfig raw;
  raw.source = source_name;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string body = line.substr(first, last - first + 1);
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": expected 'key = value', got '" << body
          << "'";
      throw ValidationError(msg.str());
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty() || value.empty()) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": empty key or value";
      throw ValidationError(msg.str());
    }
    if (kKnownKeys.count(key) == 0) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": unknown field '" << key << "'";
      throw ValidationError(msg.str());
    }
    if (raw.values.count(key) > 0) {
      std::ostringstream msg;
      msg << source_name << ":" << line_no << ": duplicate field '" << key << "'";
      throw ValidationError(msg.str());
    }
    raw.values[key] = value;
  }
  return raw;
}

void require_positive(const RawConfig& raw, const std::string& key, double v) {
  if (!(v > 0.0)) {
    throw ValidationError(raw.source + ": field '" + key + "': must be positive");
  }
}

double nbar_of(const ExperimentConfig& c) {
  if (c.alpha) return (*c.alpha) * (*c.alpha);
  return double(*c.fock_n);
}

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::JcUnitary: return "jc-unitary";
    case ExperimentKind::JcDissipative: return "jc-dissipative";
    case ExperimentKind::ClassicalCompare: return "classical-compare";
    case ExperimentKind::BkIdentity: return "bk-identity";
    case ExperimentKind::BkSweep: return "bk-sweep";
  }
  return "?";
}

std::optional<ExperimentKind> parse_experiment_name(const std::string& name) {
  for (ExperimentKind kind :
       {ExperimentKind::JcUnitary, ExperimentKind::JcDissipative,
        ExperimentKind::ClassicalCompare, ExperimentKind::BkIdentity,
        ExperimentKind::BkSweep}) {
    if (name == experiment_name(kind)) return kind;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(std::istream& in, std::optional<ExperimentKind> requested,
                              const std::string& source_name) {
  const RawConfig raw = read_raw(in, source_name);

  std::optional<ExperimentKind> from_file;
  if (raw.has("experiment")) {
    const std::string name = raw.get_string("experiment");
    from_file = parse_experiment_name(name);
    if (!from_file) {
      throw ValidationError(source_name + ": field 'experiment': unknown experiment '" +
                            name + "'");
    }
    if (requested && *from_file != *requested) {
      throw ValidationError(source_name + ": field 'experiment': config says '" + name +
                            "' but '" + std::string(experiment_name(*requested)) +
                            "' was requested");
    }
  }
  if (!requested && !from_file) {
    throw ValidationError(source_name + ": missing required field 'experiment'");
  }
  const ExperimentKind expected = requested ? *requested : *from_file;

  ExperimentConfig c;
  c.experiment = expected;

  raw.require("g");
  c.g = raw.get_double("g");
  require_positive(raw, "g", c.g);

  if (raw.has("theta")) {
    c.theta = raw.get_double("theta");
    if (c.theta < 0.0) {
      throw ValidationError(source_name + ": field 'theta': must be >= 0");
    }
  }
  if (raw.has("alpha")) {
    c.alpha = raw.get_double("alpha");
    if (*c.alpha < 0.0) {
      throw ValidationError(source_name +
                            ": field 'alpha': negative amplitudes are a phase; use >= 0");
    }
  }
  if (raw.has("fock_n")) {
    c.fock_n = raw.get_int("fock_n");
    if (*c.fock_n < 0) {
      throw ValidationError(source_name + ": field 'fock_n': must be >= 0");
    }
  }
  if (c.alpha && c.fock_n) {
    throw ValidationError(source_name + ": give either 'alpha' or 'fock_n', not both");
  }
  if (raw.has("beta")) {
    c.beta = raw.get_double("beta");
    require_positive(raw, "beta", c.beta);
  }
  if (raw.has("n_trunc")) {
    c.n_trunc = raw.get_int("n_trunc");
    if (c.n_trunc < 2) {
      throw ValidationError(source_name + ": field 'n_trunc': must be >= 2");
    }
  }
  if (raw.has("nbar")) c.nbar_list = raw.get_double_list("nbar");
  if (raw.has("t_measure")) {
    c.t_measure = raw.get_double("t_measure");
    require_positive(raw, "t_measure", *c.t_measure);
  }
  if (raw.has("t_max")) {
    c.t_max = raw.get_double("t_max");
    require_positive(raw, "t_max", c.t_max);
  }
  if (raw.has("step")) {
    c.step = raw.get_double("step");
    require_positive(raw, "step", c.step);
  }
  if (raw.has("stride")) {
    c.stride = raw.get_int("stride");
    if (c.stride < 1) {
      throw ValidationError(source_name + ": field 'stride': must be >= 1");
    }
  }
  c.csv_out = raw.has("csv_out") ? raw.get_string("csv_out")
                                 : std::string(experiment_name(expected)) + ".csv";
  c.json_out = raw.has("json_out") ? raw.get_string("json_out")
                                   : std::string(experiment_name(expected)) + ".json";

  // Per-experiment required fields and defaults.
  const auto require_drive_state = [&] {
    if (!c.alpha && !c.fock_n) {
      throw ValidationError(source_name + ": missing required field 'alpha' or 'fock_n'");
    }
  };
  switch (expected) {
    case ExperimentKind::JcUnitary:
      require_drive_state();
      if (c.t_max == 0.0) c.t_max = 20.0;
      break;
    case ExperimentKind::JcDissipative:
      if (!c.fock_n && !c.alpha) c.fock_n = 0;
      if (c.alpha) {
        throw ValidationError(source_name +
                              ": jc-dissipative starts from a Fock drive state; use "
                              "'fock_n'");
      }
      if (c.t_max == 0.0) c.t_max = 120.0;
      break;
    case ExperimentKind::ClassicalCompare:
      if (!c.alpha) {
        throw ValidationError(source_name + ": missing required field 'alpha'");
      }
      if (c.t_max == 0.0) c.t_max = *c.alpha / (2.0 * c.g);  // t_q / 2
      break;
    case ExperimentKind::BkIdentity: {
      require_drive_state();
      raw.require("beta");
      const double nbar = nbar_of(c);
      if (!c.t_measure) {
        if (nbar < 1e-12) {
          throw ValidationError(source_name +
                                ": field 't_measure': required when the mean photon "
                                "number vanishes");
        }
        c.t_measure = std::numbers::pi / (2.0 * c.g * std::sqrt(nbar));
      }
      break;
    }
    case ExperimentKind::BkSweep:
      raw.require("beta");
      raw.require("nbar");
      break;
  }

  if (c.n_trunc == 0) {
    // Derive the truncation from the drive state where one exists.
    if (c.alpha) {
      c.n_trunc = suggested_n_trunc((*c.alpha) * (*c.alpha));
    } else if (c.fock_n) {
      c.n_trunc = std::max(2, *c.fock_n + (expected == ExperimentKind::JcDissipative
                                               ? 4   // golden-rule climb margin
                                               : 2));
    } else {
      c.n_trunc = 2;
    }
  }

  if (expected == ExperimentKind::JcUnitary ||
      expected == ExperimentKind::JcDissipative ||
      expected == ExperimentKind::ClassicalCompare) {
    const auto n_steps = std::llround(c.t_max / c.step);
    if (n_steps < 1 ||
        std::abs(c.t_max - double(n_steps) * c.step) > 1e-9 * std::max(1.0, c.t_max)) {
      throw ValidationError(source_name +
                            ": field 't_max': must be a whole number of steps");
    }
  }
  return c;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path,
                                   std::optional<ExperimentKind> expected) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open config file: " + path.string());
  }
  return parse_config(in, expected, path.string());
}

std::vector<std::pair<std::string, std::string>> resolved_entries(
    const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("experiment", experiment_name(config.experiment));
  out.emplace_back("g", fmt_double(config.g));
  if (config.experiment == ExperimentKind::JcDissipative) {
    out.emplace_back("theta", fmt_double(config.theta));
  }
  if (config.alpha) out.emplace_back("alpha", fmt_double(*config.alpha));
  if (config.fock_n) out.emplace_back("fock_n", std::to_string(*config.fock_n));
  if (config.experiment == ExperimentKind::BkIdentity ||
      config.experiment == ExperimentKind::BkSweep) {
    out.emplace_back("beta", fmt_double(config.beta));
  }
  out.emplace_back("n_trunc", std::to_string(config.n_trunc));
  if (!config.nbar_list.empty()) {
    std::string joined;
    for (std::size_t i = 0; i < config.nbar_list.size(); ++i) {
      if (i) joined += ", ";
      joined += fmt_double(config.nbar_list[i]);
    }
    out.emplace_back("nbar", joined);
  }
  if (config.t_measure) out.emplace_back("t_measure", fmt_double(*config.t_measure));
  if (config.experiment != ExperimentKind::BkIdentity &&
      config.experiment != ExperimentKind::BkSweep) {
    out.emplace_back("t_max", fmt_double(config.t_max));
    out.emplace_back("step", fmt_double(config.step));
    out.emplace_back("stride", std::to_string(config.stride));
  }
  out.emplace_back("csv_out", config.csv_out);
  out.emplace_back("json_out", config.json_out);
  return out;
}

namespace {

JCParams jc_params_of(const ExperimentConfig& c) {
  JCParams params;
  params.g = c.g;
  params.n_trunc = c.n_trunc;
  return params;
}

std::size_t ledger_steps(const ExperimentConfig& c) {
  return static_cast<std::size_t>(std::llround(c.t_max / c.step));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file: " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path& path, const ordered_json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

RunResult run_jc_unitary(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  const JCParams params = jc_params_of(c);
  const HilbertLayout layout = jc_layout(params);
  const CompositeHamiltonian ch = build_jc(params);

  const DriveState drive = c.alpha ? coherent_state(*c.alpha, params.n_trunc)
                                   : fock_state(*c.fock_n, params.n_trunc);
  ComplexMatrix excited = ComplexMatrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  const ComplexMatrix rho0 = product_state({drive.density(), excited}, layout);

  const EnergyLedger ledger = unitary_energy_ledger(
      ch, layout, rho0, c.step, ledger_steps(c), std::size_t(c.stride));

  const std::filesystem::path csv_path = out_dir / c.csv_out;
  std::ostringstream csv;
  write_ledger_csv(ledger, csv);
  write_text_file(csv_path, csv.str());

  ordered_json j;
  j["experiment"] = experiment_name(c.experiment);
  j["g"] = c.g;
  if (c.alpha) j["alpha"] = *c.alpha;
  if (c.fock_n) j["fock_n"] = *c.fock_n;
  j["n_trunc"] = c.n_trunc;
  j["t_max"] = c.t_max;
  j["step"] = c.step;
  j["stride"] = c.stride;
  j["rows"] = ledger.size();
  j["w_q_final"] = ledger.w_q.back();
  j["dh_d_final"] = ledger.h_d_expect.back() - ledger.h_d_expect.front();
  j["max_residual"] = *std::max_element(ledger.residual.begin(), ledger.residual.end());
  const std::filesystem::path json_path = out_dir / c.json_out;
  write_json_file(json_path, j);

  std::ostringstream note;
  note << "jc-unitary: " << ledger.size() << " rows, W_Q(t_max) = "
       << fmt_double(ledger.w_q.back());
  return RunResult{{csv_path, json_path}, note.str()};
}

RunResult run_jc_dissipative(const ExperimentConfig& c,
                             const std::filesystem::path& out_dir) {
  const JCParams params = jc_params_of(c);
  const EnergyLedger ledger = damped_excitation_experiment(
      params, c.theta, c.t_max, c.step, std::size_t(c.stride));

  const std::filesystem::path csv_path = out_dir / c.csv_out;
  std::ostringstream csv;
  write_ledger_csv(ledger, csv);
  write_text_file(csv_path, csv.str());

  ordered_json j;
  j["experiment"] = experiment_name(c.experiment);
  j["g"] = c.g;
  j["theta"] = c.theta;
  j["fock_n"] = *c.fock_n;
  j["n_trunc"] = c.n_trunc;
  j["t_max"] = c.t_max;
  j["step"] = c.step;
  j["stride"] = c.stride;
  j["rows"] = ledger.size();
  j["w_q_final"] = ledger.w_q.back();
  j["q_s_final"] = ledger.q_s.back();
  j["q_d_final"] = ledger.q_d.back();
  j["q_tot_final"] = ledger.q_tot.back();
  j["dh_d_final"] = ledger.h_d_expect.back() - ledger.h_d_expect.front();
  j["max_residual"] = *std::max_element(ledger.residual.begin(), ledger.residual.end());
  const std::filesystem::path json_path = out_dir / c.json_out;
  write_json_file(json_path, j);

  std::ostringstream note;
  note << "jc-dissipative: Q_tot(t_max) = " << fmt_double(ledger.q_tot.back());
  return RunResult{{csv_path, json_path}, note.str()};
}

RunResult run_classical_compare(const ExperimentConfig& c,
                                const std::filesystem::path& out_dir) {
  const JCParams params = jc_params_of(c);
  const std::size_t n_steps = ledger_steps(c);
  std::vector<double> grid(n_steps + 1);
  for (std::size_t i = 0; i <= n_steps; ++i) grid[i] = double(i) * c.step;

  const QuantumClassicalComparison cmp =
      compare_quantum_classical(params, *c.alpha, grid);

  double max_dev = 0.0;
  std::ostringstream csv;
  csv << "# units: energies in hbar*omega, times in 1/omega\n";
  csv << "t,W_Q,W_CL,abs_dev\n";
  const std::size_t stride = std::size_t(c.stride);
  for (std::size_t i = 0; i < cmp.times.size(); ++i) {
    const double dev = std::abs(cmp.w_q[i] - cmp.w_cl[i]);
    max_dev = std::max(max_dev, dev);
    if (i % stride != 0) continue;
    csv << fmt_double(cmp.times[i]) << ',' << fmt_double(cmp.w_q[i]) << ','
        << fmt_double(cmp.w_cl[i]) << ',' << fmt_double(dev) << '\n';
  }
  const std::filesystem::path csv_path = out_dir / c.csv_out;
  write_text_file(csv_path, csv.str());

  ordered_json j;
  j["experiment"] = experiment_name(c.experiment);
  j["g"] = c.g;
  j["alpha"] = *c.alpha;
  j["nbar"] = (*c.alpha) * (*c.alpha);
  j["n_trunc"] = c.n_trunc;
  j["t_max"] = c.t_max;
  j["step"] = c.step;
  j["stride"] = c.stride;
  j["t_q"] = cmp.t_q;
  j["max_abs_dev"] = max_dev;
  const std::filesystem::path json_path = out_dir / c.json_out;
  write_json_file(json_path, j);

  std::ostringstream note;
  note << "classical-compare: max|W_Q - W_CL| = " << fmt_double(max_dev) << " on [0, "
       << fmt_double(c.t_max) << "]";
  return RunResult{{csv_path, json_path}, note.str()};
}

RunResult run_bk_identity(const ExperimentConfig& c,
                          const std::filesystem::path& out_dir) {
  const JCParams params = jc_params_of(c);
  const HilbertLayout layout = jc_layout(params);
  const DriveState drive = c.alpha ? coherent_state(*c.alpha, params.n_trunc)
                                   : fock_state(*c.fock_n, params.n_trunc);
  const double nbar = nbar_of(c);
  const double T = *c.t_measure;

  const ComplexMatrix h = assemble_total(build_jc(params), layout);
  const ComplexMatrix u_T = unitary_propagator(h, T);
  const ComplexMatrix h_s = 0.5 * params.omega * pauli_z();
  const TmaResult res = tma_probabilities(u_T, drive.density(), h_s, c.beta, layout);
  const double bk = bk_average(res, c.beta);
  const double closed = jc_bk_closed_form(drive, params, T, c.beta);

  ordered_json j;
  j["experiment"] = experiment_name(c.experiment);
  j["nbar"] = nbar;
  j["T"] = T;
  j["beta"] = c.beta;
  j["bk_average"] = bk;
  j["deviation"] = bk - 1.0;
  j["closed_form"] = closed;
  if (c.alpha && nbar >= 1.0) {
    const double half = 0.5 * params.omega;
    const double z_s = std::exp(c.beta * half) + std::exp(-c.beta * half);
    const double prefactor = (std::exp(-c.beta * half) - std::exp(c.beta * half)) / z_s;
    j["approx"] = prefactor * large_nbar_deviation(*c.alpha, params);
  } else {
    j["approx"] = nullptr;  // large-nbar form needs a coherent state with nbar >= 1
  }
  const std::filesystem::path json_path = out_dir / c.json_out;
  write_json_file(json_path, j);

  std::ostringstream note;
  note << "bk-identity: <e^{-beta W}> = " << fmt_double(bk);
  return RunResult{{json_path}, note.str()};
}

RunResult run_bk_sweep(const ExperimentConfig& c, const std::filesystem::path& out_dir) {
  const JCParams params = jc_params_of(c);
  const BkSweepResult sweep = bk_scaling_sweep(c.nbar_list, params, c.beta);

  ordered_json j;
  j["experiment"] = experiment_name(c.experiment);
  j["g"] = c.g;
  j["beta"] = c.beta;
  j["slope"] = sweep.slope;
  ordered_json nbar = ordered_json::array();
  ordered_json t_meas = ordered_json::array();
  ordered_json bk = ordered_json::array();
  ordered_json dev = ordered_json::array();
  for (const BkSweepPoint& p : sweep.points) {
    nbar.push_back(p.nbar);
    t_meas.push_back(p.t_measure);
    bk.push_back(p.bk_average);
    dev.push_back(p.deviation);
  }
  j["nbar"] = nbar;
  j["t_measure"] = t_meas;
  j["bk_average"] = bk;
  j["deviation"] = dev;
  const std::filesystem::path json_path = out_dir / c.json_out;
  write_json_file(json_path, j);

  std::ostringstream note;
  note << "bk-sweep: fitted slope = " << fmt_double(sweep.slope);
  return RunResult{{json_path}, note.str()};
}

}  // namespace

RunResult run(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  switch (config.experiment) {
    case ExperimentKind::JcUnitary: return run_jc_unitary(config, out_dir);
    case ExperimentKind::JcDissipative: return run_jc_dissipative(config, out_dir);
    case ExperimentKind::ClassicalCompare: return run_classical_compare(config, out_dir);
    case ExperimentKind::BkIdentity: return run_bk_identity(config, out_dir);
    case ExperimentKind::BkSweep: return run_bk_sweep(config, out_dir);
  }
  throw ValidationError("run: unknown experiment");
}

}  // namespace qdrive::cli
