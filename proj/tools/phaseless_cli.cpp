// Copyright 2026 The phaseless Authors.
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

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phaseless/phaseless.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr const char* kCsvHelp = R"(CSV outputs:
  metrics.csv      run_id,K,a,T_tilde_over_T,N,noise_sigma,rel_l2,max_abs,theta0,n_phasebreaks
  rate_table.csv   K,a,T_tilde_over_T,rate_over_nyquist
  convergence.csv  N,median_abs_err,max_abs_err
Floats use the shortest decimal that round-trips.
The default output directory is $PHASELESS_OUT_DIR, else the working directory.)";

// Raised for errors that originate in the CLI itself.
struct CliError {
  pl_status status;
  std::string message;
};

struct Context {
  std::string command;
  fs::path out_dir;
};

int ExitCodeFor(pl_status status) {
  if (status == PL_OK) return kExitOk;
  if (status == PL_PARSE_ERROR) return kExitUsage;
  return kExitFailure;
}

std::string ReadText(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{PL_IO_ERROR, "cannot open " + path};
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{PL_IO_ERROR, "cannot write " + path.string()};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

void Check(pl_status status) {
  if (status != PL_OK) throw CliError{status, pl_last_error()};
}

// Takes ownership of a string returned by the library.
std::string Take(char* s) {
  std::string out = s != nullptr ? s : "";
  pl_string_free(s);
  return out;
}

void WriteError(const Context& ctx, pl_status status, const std::string& message) {
  const json record = {{"status", pl_status_name(status)},
                       {"code", static_cast<int>(status)},
                       {"command", ctx.command},
                       {"message", message}};
  const std::string text = record.dump();
  std::cerr << text << '\n';
  std::error_code ec;
  if (!ctx.out_dir.empty() && fs::is_directory(ctx.out_dir, ec)) {
    std::ofstream(ctx.out_dir / "error.json") << text << '\n';
  }
}

// Config-file overrides supplied on the command line.
struct Overrides {
  std::optional<std::string> run_id;
  std::optional<int> K;
  std::optional<int> a;
  std::optional<double> T;
  std::optional<double> T_tilde;
  std::optional<double> T_prime;
  std::optional<double> shift_h;
  std::optional<double> H_u;
  std::optional<std::string> D;
  std::optional<std::int64_t> truncation_N;
  std::optional<double> overlap_tol;
  std::optional<double> noise_sigma;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::int64_t> anchor_block;
  std::optional<std::string> frame;
  std::vector<std::int64_t> n_range;
};

void AddOverrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--run-id", o.run_id, "Run identifier for metrics rows");
  cmd->add_option("--K", o.K, "Block length K");
  cmd->add_option("--a", o.a, "Block overlap a");
  cmd->add_option("--T", o.T, "Support length T of the time signal");
  cmd->add_option("--T-tilde", o.T_tilde, "Sampling parameter T~ >= T");
  cmd->add_option("--T-prime", o.T_prime, "Test-signal parameter T < T' < T~");
  cmd->add_option("--shift-h", o.shift_h, "Imaginary shift h of the grid");
  cmd->add_option("--H-u", o.H_u, "Zero-free strip bound H_u of the test signal");
  cmd->add_option("--D", o.D, "Test-signal amplitude, number or 'auto'");
  cmd->add_option("--n-range", o.n_range, "First and last block index")->expected(2);
  cmd->add_option("--N", o.truncation_N, "Series truncation N");
  cmd->add_option("--overlap-tol", o.overlap_tol, "Relative overlap threshold tau");
  cmd->add_option("--noise-sigma", o.noise_sigma, "Gaussian noise level");
  cmd->add_option("--seed", o.seed, "Noise seed");
  cmd->add_option("--mode", o.mode, "LpSeries, BoundedSeries or AugmentedCorollary");
  cmd->add_option("--anchor-block", o.anchor_block, "Block whose phase is fixed");
  cmd->add_option("--frame", o.frame, "Frame JSON path or builtin-k2");
}

std::string LoadConfig(const std::string& path, const Overrides& o) {
  json doc = json::object();
  if (!path.empty()) {
    try {
      doc = json::parse(ReadText(path));
    } catch (const json::exception& e) {
      throw CliError{PL_PARSE_ERROR, path + ": " + e.what()};
    }
    if (!doc.is_object()) throw CliError{PL_PARSE_ERROR, path + ": not a JSON object"};
  }
  auto set = [&](const char* key, const auto& value) {
    if (value) doc[key] = *value;
  };
  set("run_id", o.run_id);
  set("K", o.K);
  set("a", o.a);
  set("T", o.T);
  set("T_tilde", o.T_tilde);
  set("T_prime", o.T_prime);
  set("shift_h", o.shift_h);
  set("H_u", o.H_u);
  set("truncation_N", o.truncation_N);
  set("overlap_tol", o.overlap_tol);
  set("noise_sigma", o.noise_sigma);
  set("seed", o.seed);
  set("mode", o.mode);
  set("anchor_block", o.anchor_block);
  set("frame", o.frame);
  if (o.D) {
    if (*o.D == "auto") {
      doc["D"] = "auto";
    } else {
      try {
        doc["D"] = std::stod(*o.D);
      } catch (const std::exception&) {
        throw CliError{PL_PARSE_ERROR, "--D must be a number or 'auto'"};
      }
    }
  }
  if (!o.n_range.empty()) doc["n_range"] = o.n_range;
  // Relative file paths inside the config resolve against its directory.
  if (!path.empty() && doc.contains("signal") && doc["signal"].contains("path")) {
    const fs::path p = doc["signal"]["path"].get<std::string>();
    if (p.is_relative()) {
      doc["signal"]["path"] = (fs::path(path).parent_path() / p).string();
    }
  }
  if (!path.empty() && doc.contains("frame") && !o.frame) {
    const std::string f = doc["frame"].get<std::string>();
    if (f != "builtin-k2" && fs::path(f).is_relative()) {
      doc["frame"] = (fs::path(path).parent_path() / f).string();
    }
  }
  return doc.dump();
}

struct RunOutput {
  pl_run_output raw{};
  ~RunOutput() { pl_run_output_clear(&raw); }
};

int FinishRun(const Context& ctx, const RunOutput& run) {
  if (run.raw.n_phasebreaks == 0) return kExitOk;
  std::ostringstream os;
  os << run.raw.n_phasebreaks << " PhaseBreak(s); see result.json";
  WriteError(ctx, PL_PHASE_BREAK, os.str());
  return kExitFailure;
}

int CmdValidateFrame(const Context& ctx, const std::string& frame_arg, double tol) {
  pl_frame* frame = nullptr;
  if (frame_arg == "builtin-k2") {
    Check(pl_frame_builtin_k2(&frame));
  } else {
    // Parse without validation so a non-frame still yields a report.
    Check(pl_frame_from_json(ReadText(frame_arg).c_str(), -1.0, &frame));
  }
  pl_frame_report report{};
  std::string text;
  char* raw = nullptr;
  const pl_status s1 = pl_frame_validate(frame, tol, &report);
  const pl_status s2 = s1 == PL_OK ? pl_frame_report_json(frame, tol, &raw) : s1;
  pl_frame_free(frame);
  Check(s2);
  text = Take(raw);
  std::cout << text;
  WriteText(ctx.out_dir / "frame_report.json", text);
  if (!report.pass) {
    WriteError(ctx, PL_FRAME_INVALID, "frame failed validation");
    return kExitFailure;
  }
  return kExitOk;
}

int CmdSimulate(const Context& ctx, const std::string& config) {
  RunOutput run;
  Check(pl_experiment_simulate(config.c_str(), &run.raw));
  WriteText(ctx.out_dir / "measurements.json", run.raw.measurement_json);
  WriteText(ctx.out_dir / "signal.json", run.raw.signal_json);
  return kExitOk;
}

int CmdReconstruct(const Context& ctx, const std::string& config,
                   const std::string& meas_path) {
  RunOutput run;
  Check(pl_experiment_reconstruct(config.c_str(), ReadText(meas_path).c_str(), &run.raw));
  WriteText(ctx.out_dir / "result.json", run.raw.result_json);
  WriteText(ctx.out_dir / "metrics.csv", run.raw.metrics_csv);
  std::cout << run.raw.metrics_csv;
  return FinishRun(ctx, run);
}

int CmdE2e(const Context& ctx, const std::string& config) {
  RunOutput run;
  Check(pl_experiment_e2e(config.c_str(), &run.raw));
  WriteText(ctx.out_dir / "measurements.json", run.raw.measurement_json);
  WriteText(ctx.out_dir / "signal.json", run.raw.signal_json);
  WriteText(ctx.out_dir / "result.json", run.raw.result_json);
  WriteText(ctx.out_dir / "metrics.csv", run.raw.metrics_csv);
  std::cout << run.raw.metrics_csv;
  return FinishRun(ctx, run);
}

int CmdRateTable(const Context& ctx, const std::vector<int>& Ks,
                 const std::vector<int>& as, const std::vector<double>& ratios) {
  char* raw = nullptr;
  Check(pl_rate_table(Ks.data(), Ks.size(), as.data(), as.size(), ratios.data(),
                      ratios.size(), &raw));
  const std::string csv = Take(raw);
  std::cout << csv;
  WriteText(ctx.out_dir / "rate_table.csv", csv);
  return kExitOk;
}

// CLI11 assigns option values only after a successful parse, so usage
// errors recover --out-dir from the raw arguments.
std::string OutDirFromArgs(int argc, char** argv, std::string fallback) {
  const std::string flag = "--out-dir";
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == flag && i + 1 < argc) return argv[i + 1];
    if (arg.rfind(flag + "=", 0) == 0) return arg.substr(flag.size() + 1);
  }
  return fallback;
}

// Strict comma-separated integers; empty lists and empty entries are errors.
std::vector<std::int64_t> ParseNs(const std::string& text) {
  std::vector<std::int64_t> Ns;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    std::int64_t value = 0;
    const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || end != item.data() + item.size()) {
      throw CliError{PL_PARSE_ERROR, "--Ns expects comma-separated integers, got '" + text + "'"};
    }
    Ns.push_back(value);
    pos = comma + 1;
  }
  return Ns;
}

int CmdConvergence(const Context& ctx, const std::string& config,
                   const std::vector<std::int64_t>& Ns) {
  RunOutput run;
  Check(pl_experiment_convergence(config.c_str(), Ns.data(), Ns.size(), &run.raw));
  std::cout << run.raw.convergence_csv;
  WriteText(ctx.out_dir / "convergence.csv", run.raw.convergence_csv);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phaseless frequency sampling: simulation and reconstruction"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(pl_version()));

  const char* env_dir = std::getenv("PHASELESS_OUT_DIR");
  std::string out_dir = env_dir != nullptr && *env_dir != '\0' ? env_dir : ".";
  app.add_option("--out-dir", out_dir, "Output directory (default $PHASELESS_OUT_DIR or .)");

  std::string frame_arg = "builtin-k2";
  double frame_tol = 1e-12;
  auto* validate = app.add_subcommand("validate-frame", "Check a measurement frame");
  validate->add_option("frame", frame_arg, "Frame JSON path or builtin-k2");
  validate->add_option("--tol", frame_tol, "Absolute tolerance of every check");

  std::string config_path;
  std::string meas_path;
  Overrides overrides;
  auto* simulate = app.add_subcommand("simulate", "Write measurements.json and signal.json");
  auto* reconstruct = app.add_subcommand("reconstruct", "Write result.json and metrics.csv");
  auto* e2e = app.add_subcommand("e2e", "Simulate and reconstruct in one run");
  auto* convergence = app.add_subcommand("convergence", "Write convergence.csv");
  for (auto* cmd : {simulate, reconstruct, e2e, convergence}) {
    cmd->add_option("--config", config_path, "Experiment config JSON");
    AddOverrides(cmd, overrides);
  }
  reconstruct->add_option("--measurements", meas_path, "Measurement JSON")->required();
  std::string Ns_text;
  convergence->add_option("--Ns", Ns_text, "Comma-separated truncation values N");

  std::vector<int> Ks{2};
  std::vector<int> as{1};
  std::vector<double> ratios{1.0};
  auto* rate = app.add_subcommand("rate-table", "Write rate_table.csv");
  rate->add_option("--Ks", Ks, "Block lengths K")->delimiter(',');
  rate->add_option("--as", as, "Overlaps a")->delimiter(',');
  rate->add_option("--ratios", ratios, "Oversampling ratios T~/T")->delimiter(',');

  Context ctx;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ctx.command = app.get_subcommands().empty() ? "" : app.get_subcommands()[0]->get_name();
    ctx.out_dir = OutDirFromArgs(argc, argv, out_dir);
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    WriteError(ctx, PL_PARSE_ERROR, e.what());
    return kExitUsage;
  }

  CLI::App* cmd = app.get_subcommands().front();
  ctx.command = cmd->get_name();
  ctx.out_dir = out_dir;
  try {
    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw CliError{PL_IO_ERROR, "cannot create " + out_dir + ": " + ec.message()};
    if (cmd == validate) return CmdValidateFrame(ctx, frame_arg, frame_tol);
    if (cmd == rate) return CmdRateTable(ctx, Ks, as, ratios);
    const std::string config = LoadConfig(config_path, overrides);
    if (cmd == simulate) return CmdSimulate(ctx, config);
    if (cmd == reconstruct) return CmdReconstruct(ctx, config, meas_path);
    if (cmd == e2e) return CmdE2e(ctx, config);
    return CmdConvergence(ctx, config, ParseNs(Ns_text));
  } catch (const CliError& e) {
    WriteError(ctx, e.status, e.message);
    return ExitCodeFor(e.status);
  }
}
