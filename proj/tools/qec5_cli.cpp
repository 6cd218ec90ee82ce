// Copyright 2026 The qec5 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// qec5 command-line front end.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qec5/qec5.hpp"

namespace {

using namespace qec5;

StabilizerCode load_code(const std::string& path) {
  if (path.empty()) return StabilizerCode::five_qubit();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open code file " + path);
  return StabilizerCode::read_definition(in);
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return nlohmann::json::parse(in);
}

// Inline JSON, or @path to read it from a file.
nlohmann::json parse_noise(const std::string& spec) {
  if (!spec.empty() && spec[0] == '@') return load_json(spec.substr(1));
  return nlohmann::json::parse(spec);
}

// Writes to `path`, or stdout when empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write(out);
}

int verify_code(const std::string& code_path) {
  const StabilizerCode code = load_code(code_path);
  const auto& g = code.generators();
  bool ok = true;
  for (int i = 0; i < 4; ++i) {
    std::cout << "generator " << i + 1 << ": " << (code.signs()[i] > 0 ? "+1 " : "-1 ") << g[i].str() << '\n';
    for (int j = i + 1; j < 4; ++j) {
      if (!commutes(g[i], g[j])) {
        std::cout << "  anticommutes with generator " << j + 1 << '\n';
        ok = false;
      }
    }
  }
  const DistanceReport d = verify_distance(g);
  std::cout << "weight 1-2 products checked: " << d.checked << ", undetected: " << d.violations.size() << '\n';
  for (const auto& v : d.violations) std::cout << "  undetected: " << v.str() << '\n';
  ok = ok && d.ok();
  std::array<int, 16> hits{};
  for (const auto& e : enumerate_correctable_errors(kCodeQubits)) {
    const Syndrome s = code.syndrome_of(e);
    ++hits[s.index()];
    std::cout << "  " << e.str() << " -> " << s.str() << " correction " << code.correction_for(s).at(1) << '\n';
  }
  const bool distinct = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
  std::cout << "distinct syndromes: " << (distinct ? "yes" : "no") << '\n';
  std::cout << "logical X: " << code.logical_x().str() << "\nlogical Z: " << code.logical_z().str() << '\n';
  std::cout << "encoder gates: " << code.encoder().ops().size() << '\n';
  ok = ok && distinct;
  std::cout << (ok ? "OK" : "VIOLATION") << '\n';
  return ok ? 0 : 1;
}

int run_grid(double fe, const std::string& noise, const std::string& engine, std::uint64_t seed, const std::string& out,
             const std::string& code_path) {
  NoiseConfig cfg;
  cfg.fe = fe;
  if (!noise.empty()) cfg.extra = parse_noise(noise);
  const BenchmarkReport rep = run_error_grid(load_code(code_path), cfg, parse_engine(engine), seed);
  const std::string text = report_to_json(rep).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  emit(out, [&](std::ostream& os) { os << text; });
  const std::string csv = std::filesystem::path(out).replace_extension(".csv").string();
  emit(csv, [&](std::ostream& os) { write_records_csv(os, rep); });
  std::cout << "wrote " << out << " and " << csv << '\n';
  return 0;
}

int goals(const std::string& report_path) {
  const BenchmarkReport rep = report_from_json(load_json(report_path));
  const auto g = evaluate_goals(rep);
  write_goals_table(std::cout, g);
  std::cout << goals_to_json(g).dump(2) << '\n';
  return 0;
}

int curve(double fe, double pmin, double pmax, int steps, const std::string& out) {
  emit(out, [&](std::ostream& os) { write_curve_csv(os, fe, pmin, pmax, steps); });
  const Crossover c = find_crossover(fe);
  std::ostream& info = out.empty() ? std::cerr : std::cout;
  if (!c.found) {
    info << "crossover: none (encoding never beats 1-3p/4 at fe=" << fe << ")\n";
  } else if (c.tangent) {
    info << "crossover: curves touch at p=" << std::setprecision(10) << c.point() << '\n';
  } else {
    info << "crossover: p=" << std::setprecision(10) << c.point() << " (encoding helps on [" << c.lower << ", "
         << c.upper << "])\n";
  }
  return 0;
}

int histogram(const std::string& report_path, double width, const std::string& out) {
  const BenchmarkReport rep = report_from_json(load_json(report_path));
  const auto bins = polarization_histogram(rep, width);
  emit(out, [&](std::ostream& os) { write_histogram_csv(os, bins); });
  return 0;
}

int verify_random(int samples, std::uint64_t seed, double fe, const std::string& noise, const std::string& engine,
                  bool exhaustive, const std::string& code_path) {
  const StabilizerCode code = load_code(code_path);
  NoiseConfig cfg;
  cfg.fe = fe;
  if (!noise.empty()) cfg.extra = parse_noise(noise);
  const Engine e = parse_engine(engine);
  const VerificationResult r = randomized_verification(code, cfg, samples, seed, e);
  std::cout << std::setprecision(12);
  std::cout << "samples: " << r.samples << "\nseed: " << r.seed << "\nengine: " << r.engine << "\nmean: " << r.mean
            << "\nstddev: " << r.stddev << "\nhalf_width_95: " << r.half_width << '\n';
  if (exhaustive) {
    const VerificationResult ex = exhaustive_verification(code, cfg, e);
    const bool inside = std::abs(r.mean - ex.mean) <= r.half_width;
    std::cout << "exhaustive_mean: " << ex.mean << "\nwithin_interval: " << (inside ? "yes" : "no") << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Five-qubit code simulator and benchmark harness"};
  app.require_subcommand(1);

  std::string code_path;
  auto* vc = app.add_subcommand("verify-code", "Check generators, distance and syndromes");
  vc->add_option("--code", code_path, "Code definition file (default: built-in code)");

  std::string out;
  auto* ex = app.add_subcommand("export-code", "Write the code definition");
  ex->add_option("--code", code_path, "Code definition file to normalize");
  ex->add_option("--out", out, "Output path (default stdout)");

  auto* ct = app.add_subcommand("correction-table", "Write the syndrome -> correction table as CSV");
  ct->add_option("--code", code_path, "Code definition file");
  ct->add_option("--out", out, "Output path (default stdout)");

  double fe = 1.0;
  std::string noise;
  std::string engine = "dense";
  std::uint64_t seed = 0;
  auto* rg = app.add_subcommand("run-grid", "Run the 16 x 3 experiment grid");
  rg->add_option("--fe", fe, "Implementation fidelity")->check(CLI::Range(0.25, 1.0));
  rg->add_option("--noise", noise, "Storage noise spec (JSON, or @file)");
  rg->add_option("--engine", engine, "dense, pauli or both")->check(CLI::IsMember({"dense", "pauli", "both"}));
  rg->add_option("--seed", seed, "Seed recorded in the report");
  rg->add_option("--out", out, "Report path; records go next to it as .csv");
  rg->add_option("--code", code_path, "Code definition file");

  std::string report_path;
  auto* gl = app.add_subcommand("goals", "Evaluate the four goals for a report");
  gl->add_option("--report", report_path, "Report JSON")->required();

  double pmin = 0;
  double pmax = 1;
  int steps = 100;
  auto* cv = app.add_subcommand("curve", "Encoded and unencoded fidelity vs p as CSV");
  cv->add_option("--fe", fe, "Implementation fidelity")->check(CLI::Range(0.25, 1.0));
  cv->add_option("--pmin", pmin, "First p")->check(CLI::Range(0.0, 1.0));
  cv->add_option("--pmax", pmax, "Last p")->check(CLI::Range(0.0, 1.0));
  cv->add_option("--steps", steps, "Number of intervals")->check(CLI::PositiveNumber);
  cv->add_option("--out", out, "Output path (default stdout)");

  double width = 0.05;
  auto* hg = app.add_subcommand("histogram", "Polarization histogram of a report as CSV");
  hg->add_option("--report", report_path, "Report JSON")->required();
  hg->add_option("--bin-width", width, "Bin width")->check(CLI::PositiveNumber);
  hg->add_option("--out", out, "Output path (default stdout)");

  int samples = 4096;
  bool exhaustive = false;
  std::string vengine = "pauli";
  auto* vr = app.add_subcommand("verify-random", "Randomized stabilizer verification");
  vr->add_option("--samples", samples, "Number of sampled Pauli products")->check(CLI::PositiveNumber);
  vr->add_option("--seed", seed, "Sampler seed");
  vr->add_option("--fe", fe, "Implementation fidelity")->check(CLI::Range(0.25, 1.0));
  vr->add_option("--noise", noise, "Storage noise spec (JSON, or @file)");
  vr->add_option("--engine", vengine, "dense, pauli or both")->check(CLI::IsMember({"dense", "pauli", "both"}));
  vr->add_flag("--exhaustive", exhaustive, "Also average over all 1024 products");
  vr->add_option("--code", code_path, "Code definition file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*vc) return verify_code(code_path);
    if (*ex) {
      const StabilizerCode code = load_code(code_path);
      emit(out, [&](std::ostream& os) { code.write_definition(os); });
      return 0;
    }
    if (*ct) {
      const StabilizerCode code = load_code(code_path);
      emit(out, [&](std::ostream& os) { code.write_correction_csv(os); });
      return 0;
    }
    if (*rg) return run_grid(fe, noise, engine, seed, out, code_path);
    if (*gl) return goals(report_path);
    if (*cv) return curve(fe, pmin, pmax, steps, out);
    if (*hg) return histogram(report_path, width, out);
    if (*vr) return verify_random(samples, seed, fe, noise, vengine, exhaustive, code_path);
  } catch (const EngineMismatch& e) {
    std::cerr << "engine mismatch: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
