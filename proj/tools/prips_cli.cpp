// Copyright 2026 The prips Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Exit codes: 0 success, 1 parse error, 2 validation
// error, 3 version mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "prips/distance.hpp"
#include "prips/error.hpp"
#include "prips/hsmp.hpp"
#include "prips/pipeline.hpp"
#include "prips/polymer.hpp"
#include "prips/stats.hpp"
#include "prips/trend.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

enum ExitCode { kOk = 0, kParse = 1, kValidation = 2, kVersion = 3, kInternal = 4 };

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const prips::ParseError*>(&e)) return kParse;
  if (dynamic_cast<const prips::ValidationError*>(&e)) return kValidation;
  if (dynamic_cast<const prips::VersionMismatch*>(&e)) return kVersion;
  if (dynamic_cast<const std::ios_base::failure*>(&e)) return kParse;
  return kInternal;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Writes via a sibling temporary file and rename so readers never see a
// partial file.
void write_atomically(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// Input files: the path itself, or every *.json under a directory, sorted.
std::vector<fs::path> expand_inputs(const std::string& input) {
  const fs::path p(input);
  if (!fs::exists(p)) throw prips::ParseError("input not found: " + input);
  if (!fs::is_directory(p)) return {p};
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(p)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw prips::ParseError("no .json units in " + input);
  return out;
}

class RunManifest {
 public:
  explicit RunManifest(std::string subcommand)
      : started_(utc_now()), clock_(std::chrono::steady_clock::now()) {
    doc_["subcommand"] = std::move(subcommand);
    doc_["tool_version"] = kToolVersion;
    doc_["feature_schema"] = std::string(prips::schema::kVersion);
    doc_["inputs"] = json::array();
    doc_["config"] = json::object();
  }

  json& doc() { return doc_; }
  void add_input(const std::string& path) { doc_["inputs"].push_back(path); }

  void write(const fs::path& path) {
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_).count();
    json out = doc_;
    out["timing"] = {{"started_utc", started_}, {"elapsed_seconds", elapsed}};
    write_atomically(path, out.dump(2) + "\n");
  }

 private:
  json doc_;
  std::string started_;
  std::chrono::steady_clock::time_point clock_;
};

json cutoffs_json(const std::vector<double>& cutoffs) {
  json a = json::array();
  for (double c : cutoffs) a.push_back(c);
  return a;
}

struct Failure {
  std::string path;
  std::string message;
  int code;
};

int report_failures(const std::vector<Failure>& failures, std::size_t total, json& manifest) {
  json list = json::array();
  for (const auto& f : failures) {
    std::cerr << "failed: " << f.path << ": " << f.message << '\n';
    list.push_back({{"input", f.path}, {"error", f.message}, {"exit_code", f.code}});
  }
  manifest["failures"] = list;
  if (failures.empty()) return kOk;
  std::cerr << failures.size() << " of " << total << " inputs failed\n";
  return failures.front().code;
}

// --- rips ---------------------------------------------------------------------

struct RipsArgs {
  std::string input;
  std::vector<double> cutoffs{2.0, 3.0, 4.0};
  int max_dim = 2;
  std::string out;
  bool non_periodic = false;
  std::string matrix_format = "csv";
};

int run_rips(const RipsArgs& a) {
  RunManifest manifest("rips");
  manifest.add_input(a.input);
  manifest.doc()["config"] = {{"cutoffs", cutoffs_json(a.cutoffs)},
                              {"max_dim", a.max_dim},
                              {"periodic", !a.non_periodic},
                              {"matrix_format", a.matrix_format}};
  const auto unit = prips::load_repeating_unit(a.input);
  const auto d = prips::unit_distance_matrix(unit, !a.non_periodic);
  const auto filtration = prips::build_filtration(d, a.cutoffs, a.max_dim);
  const fs::path out(a.out);
  json outputs = json::array();
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    std::ostringstream text;
    prips::write_complex_text(text, filtration.level(i).complex);
    const auto name = "level" + std::to_string(i) + ".txt";
    write_atomically(out / name, text.str());
    outputs.push_back(name);
  }
  if (a.matrix_format == "csv") {
    std::ostringstream text;
    prips::write_matrix_csv(text, d);
    write_atomically(out / "distance.csv", text.str());
    outputs.push_back("distance.csv");
  } else if (a.matrix_format == "binary") {
    std::ostringstream bin;
    prips::write_matrix_binary(bin, d);
    write_atomically(out / "distance.bin", bin.str());
    outputs.push_back("distance.bin");
  }
  manifest.doc()["output"] = a.out;
  manifest.doc()["files"] = outputs;
  manifest.write(out / "manifest.json");
  return kOk;
}

// --- curvature ----------------------------------------------------------------

struct CurvatureArgs {
  std::string input;
  std::vector<double> cutoffs{2.0, 3.0, 4.0};
  int max_dim = 2;
  std::string out;
  bool non_periodic = false;
};

int run_curvature(const CurvatureArgs& a) {
  RunManifest manifest("curvature");
  manifest.add_input(a.input);
  manifest.doc()["config"] = {{"cutoffs", cutoffs_json(a.cutoffs)},
                              {"max_dim", a.max_dim},
                              {"periodic", !a.non_periodic},
                              {"delta", prips::kProfileDelta},
                              {"steps", prips::kProfileSteps},
                              {"temperature", prips::kDefaultTemperature}};
  const auto unit = prips::load_repeating_unit(a.input);
  prips::PipelineOptions opts;
  opts.cutoffs = a.cutoffs;
  opts.max_dim = a.max_dim;
  opts.periodic = !a.non_periodic;
  const auto fu = prips::featurize_unit(unit, opts);
  std::ostringstream text;
  prips::write_curvature_csv(text, fu);
  const fs::path out(a.out);
  write_atomically(out / "curvature.csv", text.str());
  manifest.doc()["output"] = a.out;
  manifest.doc()["files"] = json::array({"curvature.csv"});
  manifest.write(out / "manifest.json");
  return kOk;
}

// --- featurize ----------------------------------------------------------------

struct FeaturizeArgs {
  std::string input;
  std::string out;
  std::vector<double> cutoffs{2.0, 3.0, 4.0};
  bool non_periodic = false;
  bool csv = false;
};

int run_featurize(const FeaturizeArgs& a) {
  RunManifest manifest("featurize");
  manifest.doc()["config"] = {{"cutoffs", cutoffs_json(a.cutoffs)},
                              {"periodic", !a.non_periodic},
                              {"csv", a.csv}};
  const auto inputs = expand_inputs(a.input);
  prips::PipelineOptions opts;
  opts.cutoffs = a.cutoffs;
  opts.periodic = !a.non_periodic;
  const fs::path out(a.out);
  fs::create_directories(out);

  std::vector<std::optional<Failure>> results(inputs.size());
  std::mutex write_mutex;
  prips::parallel_for(inputs.size(), prips::worker_count(), [&](std::size_t i) {
    const auto& path = inputs[i];
    try {
      const auto unit = prips::load_repeating_unit(path.string());
      const auto fu = prips::featurize_unit(unit, opts);
      std::ostringstream bin;
      prips::feature_archive(unit, fu, opts.periodic).write(bin);
      std::string csv;
      if (a.csv) {
        std::ostringstream text;
        prips::write_features_csv(text, fu);
        csv = text.str();
      }
      std::lock_guard lock(write_mutex);
      write_atomically(out / (path.stem().string() + ".features"), bin.str());
      if (a.csv) write_atomically(out / (path.stem().string() + ".features.csv"), csv);
    } catch (const std::exception& e) {
      results[i] = Failure{path.string(), e.what(), exit_code_for(e)};
    }
  });

  std::vector<Failure> failures;
  json outputs = json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    manifest.add_input(inputs[i].string());
    if (results[i]) failures.push_back(*results[i]);
    else outputs.push_back(inputs[i].stem().string() + ".features");
  }
  manifest.doc()["output"] = a.out;
  manifest.doc()["files"] = outputs;
  const int code = report_failures(failures, inputs.size(), manifest.doc());
  manifest.write(out / "manifest.json");
  return code;
}

// --- predict ------------------------------------------------------------------

struct PredictArgs {
  std::string input;
  std::vector<std::string> weights;
  std::string out;
  bool non_periodic = false;
  bool f32 = false;
};

int run_predict(const PredictArgs& a) {
  RunManifest manifest("predict");
  std::vector<prips::ModelWeights> models;
  json weight_info = json::array();
  for (const auto& path : a.weights) {
    models.push_back(prips::load_weights(path));
    const auto& cfg = models.back().config();
    if (cfg.feature_schema != prips::schema::kVersion) {
      throw prips::VersionMismatch("weights " + path + " use feature schema '" +
                                   cfg.feature_schema + "', expected '" +
                                   std::string(prips::schema::kVersion) + "'");
    }
    if (cfg.cutoffs != models.front().config().cutoffs ||
        cfg.max_dim != models.front().config().max_dim) {
      throw prips::ValidationError("weight files disagree on cutoffs or max_dim");
    }
    json info = {{"path", path}, {"format", std::string(prips::kWeightFormat)},
                 {"hidden_dim", cfg.hidden_dim}, {"heads", cfg.heads}};
    if (auto seed = models.back().seed()) info["seed"] = *seed;
    weight_info.push_back(info);
  }
  manifest.doc()["weights"] = weight_info;
  manifest.doc()["config"] = {{"cutoffs", cutoffs_json(models.front().config().cutoffs)},
                              {"periodic", !a.non_periodic},
                              {"precision", a.f32 ? "f32" : "f64"}};
  const auto inputs = expand_inputs(a.input);
  const auto opts = prips::options_for(models.front().config(), !a.non_periodic);
  const auto precision = a.f32 ? prips::Precision::F32 : prips::Precision::F64;

  struct Row {
    prips::UnitMeta meta;
    std::vector<double> folds;
  };
  std::vector<Row> rows(inputs.size());
  std::vector<std::optional<Failure>> results(inputs.size());
  prips::parallel_for(inputs.size(), prips::worker_count(), [&](std::size_t i) {
    try {
      const auto unit = prips::load_repeating_unit(inputs[i].string());
      const auto fu = prips::featurize_unit(unit, opts);
      rows[i].meta = unit.meta;
      if (rows[i].meta.name.empty()) rows[i].meta.name = inputs[i].stem().string();
      for (const auto& m : models) {
        rows[i].folds.push_back(
            prips::hsmp_forward(fu.features, fu.filtration, m, prips::schema::kVersion, precision)
                .prediction);
      }
    } catch (const std::exception& e) {
      results[i] = Failure{inputs[i].string(), e.what(), exit_code_for(e)};
    }
  });

  std::ostringstream csv;
  csv << "id,family,substitution_key";
  for (std::size_t k = 0; k < models.size(); ++k) csv << ",fold_" << (k + 1);
  csv << ",mean,sd\n";
  std::vector<Failure> failures;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    manifest.add_input(inputs[i].string());
    if (results[i]) {
      failures.push_back(*results[i]);
      continue;
    }
    const auto& r = rows[i];
    csv << r.meta.name << ',' << r.meta.family << ',' << r.meta.substitution_key;
    for (double v : r.folds) csv << ',' << format_double(v);
    const auto s = prips::stats::summarize(r.folds);
    csv << ',' << format_double(s.mean) << ',' << (s.sd ? format_double(*s.sd) : "") << '\n';
  }
  write_atomically(a.out, csv.str());
  manifest.doc()["output"] = a.out;
  const int code = report_failures(failures, inputs.size(), manifest.doc());
  manifest.write(a.out + ".manifest.json");
  return code;
}

// --- analyze ------------------------------------------------------------------

struct AnalyzeArgs {
  std::string predictions;
  std::string comparison = "all";
  std::string out;
};

int run_analyze(const AnalyzeArgs& a) {
  RunManifest manifest("analyze");
  manifest.add_input(a.predictions);
  manifest.doc()["config"] = {{"comparison", a.comparison}, {"confidence_level", 0.99}};
  std::ifstream in(a.predictions);
  if (!in) throw prips::ParseError("cannot open " + a.predictions);
  const auto records = prips::read_predictions_csv(in);
  const auto rows = prips::analyze(records, a.comparison);
  std::ostringstream csv;
  prips::write_analysis_csv(csv, rows);
  write_atomically(a.out, csv.str());
  manifest.doc()["output"] = a.out;
  manifest.write(a.out + ".manifest.json");
  return kOk;
}

// --- gen-test-weights ---------------------------------------------------------

struct GenArgs {
  std::string out;
  std::uint64_t seed = 0;
  int hidden_dim = 768;
  int heads = 12;
  std::string dtype = "f64";
};

int run_gen(const GenArgs& a) {
  RunManifest manifest("gen-test-weights");
  prips::ModelConfig cfg;
  cfg.hidden_dim = a.hidden_dim;
  cfg.heads = a.heads;
  manifest.doc()["config"] = {{"seed", a.seed}, {"hidden_dim", a.hidden_dim},
                              {"heads", a.heads}, {"dtype", a.dtype}};
  const auto w = prips::generate_test_weights(cfg, a.seed);
  std::ostringstream bin;
  w.to_archive(a.dtype == "f32" ? prips::DType::F32 : prips::DType::F64).write(bin);
  write_atomically(a.out, bin.str());
  manifest.doc()["output"] = a.out;
  manifest.write(a.out + ".manifest.json");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic Vietoris-Rips features and HSMP inference for polymers"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  RipsArgs rips;
  auto* rips_cmd = app.add_subcommand("rips", "Build the Vietoris-Rips filtration of a unit");
  rips_cmd->add_option("--input", rips.input, "Repeating-unit JSON file")->required();
  rips_cmd->add_option("--cutoffs", rips.cutoffs, "Ascending cutoffs in angstrom")->delimiter(',');
  rips_cmd->add_option("--max-dim", rips.max_dim, "Highest simplex dimension (0-3)");
  rips_cmd->add_option("--out", rips.out, "Output directory")->required();
  rips_cmd->add_flag("--non-periodic", rips.non_periodic, "Use the frame-0 intra-unit matrix");
  rips_cmd->add_option("--matrix-format", rips.matrix_format, "csv, binary or none")
      ->check(CLI::IsMember({"csv", "binary", "none"}));

  CurvatureArgs curv;
  auto* curv_cmd = app.add_subcommand("curvature", "Export Forman curvature profiles");
  curv_cmd->add_option("--input", curv.input, "Repeating-unit JSON file")->required();
  curv_cmd->add_option("--cutoffs", curv.cutoffs, "Ascending cutoffs in angstrom")->delimiter(',');
  curv_cmd->add_option("--max-dim", curv.max_dim, "Highest simplex dimension (0-2)");
  curv_cmd->add_option("--out", curv.out, "Output directory")->required();
  curv_cmd->add_flag("--non-periodic", curv.non_periodic, "Use the frame-0 intra-unit matrix");

  FeaturizeArgs feat;
  auto* feat_cmd = app.add_subcommand("featurize", "Write per-level simplex features");
  feat_cmd->add_option("--input", feat.input, "Unit file or directory of units")->required();
  feat_cmd->add_option("--out", feat.out, "Output directory")->required();
  feat_cmd->add_option("--cutoffs", feat.cutoffs, "Ascending cutoffs in angstrom")->delimiter(',');
  feat_cmd->add_flag("--non-periodic", feat.non_periodic, "Use the frame-0 intra-unit matrix");
  feat_cmd->add_flag("--csv", feat.csv, "Also write a CSV debug export");

  PredictArgs pred;
  auto* pred_cmd = app.add_subcommand("predict", "Run the encoder; one fold column per weight file");
  pred_cmd->add_option("--input", pred.input, "Unit file or directory of units")->required();
  pred_cmd->add_option("--weights", pred.weights, "Weight files")->required()->expected(1, -1);
  pred_cmd->add_option("--out", pred.out, "Predictions CSV")->required();
  pred_cmd->add_flag("--non-periodic", pred.non_periodic, "Use the frame-0 intra-unit matrix");
  pred_cmd->add_flag("--f32", pred.f32, "Single-precision forward pass");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "Matched-pair trend analysis of predictions");
  an_cmd->add_option("--predictions", an.predictions, "Predictions CSV")->required();
  an_cmd->add_option("--comparison", an.comparison,
                     "all, AM_vs_A, MAM_vs_MA, MA_vs_A, MAM_vs_AM, ester_to_amide or alpha_methylation");
  an_cmd->add_option("--out", an.out, "Analysis CSV")->required();

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-test-weights", "Write seed-generated test weights");
  gen_cmd->add_option("--out", gen.out, "Weight file")->required();
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");
  gen_cmd->add_option("--hidden-dim", gen.hidden_dim, "Hidden width D");
  gen_cmd->add_option("--heads", gen.heads, "Message-passing heads k");
  gen_cmd->add_option("--dtype", gen.dtype, "f64 or f32")->check(CLI::IsMember({"f64", "f32"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*rips_cmd) return run_rips(rips);
    if (*curv_cmd) return run_curvature(curv);
    if (*feat_cmd) return run_featurize(feat);
    if (*pred_cmd) return run_predict(pred);
    if (*an_cmd) return run_analyze(an);
    if (*gen_cmd) return run_gen(gen);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kInternal;
}
