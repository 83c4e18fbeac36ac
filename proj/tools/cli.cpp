/*
 * Copyright (c) 2026, The scd-axes Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "digest.hpp"
#include "report.hpp"
#include "scdaxes/scdaxes.hpp"
#include "scdaxes/synthkit.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace scdaxes::cli {
namespace {

const std::vector<double> kDefaultFractions = {0.05, 0.1, 0.2, 0.5, 1.0};

class Stopwatch {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string shortest(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void check_fractions(const std::vector<double>& fractions) {
  if (fractions.empty()) throw std::invalid_argument("--fractions must not be empty");
  for (double f : fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      throw std::invalid_argument("fraction " + shortest(f) + " is outside (0, 1]");
    }
  }
}

AxisTransform resolve_transform(const std::string& spec, const EmbeddingStore& store) {
  if (spec == "raw") return fit_raw(store.dim());
  AxisTransform t = load_transform(spec);
  if (t.dim() != store.dim()) {
    throw FormatError("transform at " + spec + " expects dim " + std::to_string(t.dim()) +
                      ", store has dim " + std::to_string(store.dim()));
  }
  return t;
}

std::string transform_digest(const std::string& spec) {
  return spec == "raw" ? std::string("raw") : digest_transform(spec);
}

json describe(const AxisTransform& t) {
  return {{"kind", std::string(to_string(t.kind))},
          {"dim", t.dim()},
          {"axis_count", t.axis_count()},
          {"fitted_on", t.fitted_on},
          {"seed", t.seed ? json(*t.seed) : json(nullptr)},
          {"converged", t.converged},
          {"iterations", t.iterations}};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
}

template <typename Writer>
void write_with(const fs::path& path, Writer&& writer) {
  std::ostringstream ss;
  writer(ss);
  write_text(path, ss.str());
}

std::string run_label(std::string_view method, double fraction) {
  return std::string(method) + "_" + shortest(fraction);
}

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
  std::string store;
  std::string method = "pca";
  std::uint64_t seed = 0;
  int max_iter = 200;
  double tol = 1e-4;
  std::size_t n_components = 0;
  std::string pairs;
  std::string temporal;
  std::string out_dir;
};

int cmd_fit(const FitOptions& o, std::ostream& out, std::ostream& err) {
  const EmbeddingStore store = load_store(o.store);
  const TransformKind kind = parse_transform_kind(o.method);

  Eigen::MatrixXd X;
  if (!o.pairs.empty()) {
    X = store.gather(referenced_rows(load_pairs(o.pairs, store), store));
  } else if (!o.temporal.empty()) {
    X = store.gather(referenced_rows(load_temporal(o.temporal, store), store));
  } else if (kind != TransformKind::Raw) {
    X = store.to_matrix();
  }

  AxisTransform t;
  switch (kind) {
    case TransformKind::Raw: t = fit_raw(store.dim()); break;
    case TransformKind::Pca: t = fit_pca(X); break;
    case TransformKind::Ica: {
      IcaConfig cfg;
      cfg.max_iter = o.max_iter;
      cfg.tol = o.tol;
      cfg.seed = o.seed;
      if (o.n_components > 0) cfg.n_components = o.n_components;
      t = fit_ica(X, cfg);
      break;
    }
  }
  save_transform(t, o.out_dir);

  out << "fitted " << to_string(t.kind) << " transform: dim " << t.dim() << ", "
      << t.axis_count() << " axes, " << t.fitted_on << " rows\n";
  out << "axis_scores:";
  const Eigen::Index shown = std::min<Eigen::Index>(t.axis_scores.size(), 10);
  for (Eigen::Index i = 0; i < shown; ++i) out << ' ' << shortest(t.axis_scores(i));
  if (shown < t.axis_scores.size()) out << " ...";
  out << '\n';
  if (!t.converged) {
    err << "warning: FastICA did not converge within " << o.max_iter << " iterations\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval-wic

struct WicOptions {
  std::string store;
  std::string pairs;
  std::string transform;
  std::vector<double> fractions = kDefaultFractions;
  std::string report;
  std::string roc_dir;
  bool timings = false;
};

int cmd_eval_wic(const WicOptions& o, std::ostream& out) {
  check_fractions(o.fractions);
  Stopwatch total;
  RunReport report("eval-wic");

  Stopwatch load;
  const EmbeddingStore store = load_store(o.store);
  const PairDataset pairs = load_pairs(o.pairs, store);
  const AxisTransform transform = resolve_transform(o.transform, store);
  report.add_timing("load", load.elapsed_ms());

  const auto n_true = static_cast<std::size_t>(std::count_if(
      pairs.instances.begin(), pairs.instances.end(), [](const auto& i) { return i.label; }));

  auto& body = report.body();
  body["inputs"] = {{"store_sha256", digest_store(o.store)},
                    {"pairs_sha256", digest_file(o.pairs)},
                    {"transform_sha256", transform_digest(o.transform)}};
  body["transform"] = describe(transform);
  body["dataset"] = {{"instances", pairs.size()},
                     {"same_meaning", n_true},
                     {"different_meaning", pairs.size() - n_true}};
  body["fractions"] = o.fractions;

  Stopwatch eval;
  json results = json::array();
  auto evaluate = [&](const AxisTransform& t, std::string_view method, double fraction) {
    const auto distances = wic_distances(store, pairs, t, fraction);
    const RocResult roc = wic_roc(distances);
    const std::size_t n_axes = top_axis_count(t.axis_count(), fraction);
    results.push_back({{"method", std::string(method)},
                       {"fraction", fraction},
                       {"n_axes", n_axes},
                       {"auc", roc.auc}});
    out << std::left << std::setw(8) << method << std::setw(10) << shortest(fraction)
        << std::setw(8) << n_axes << shortest(roc.auc) << '\n';
    if (!o.roc_dir.empty()) {
      write_with(fs::path(o.roc_dir) / (run_label(method, fraction) + ".csv"),
                 [&](std::ostream& s) { write_roc_csv(roc, s); });
    }
  };
  out << std::left << std::setw(8) << "method" << std::setw(10) << "fraction" << std::setw(8)
      << "axes" << "auc\n";
  evaluate(fit_raw(store.dim()), "raw", 1.0);
  const std::string method(to_string(transform.kind));
  for (double f : o.fractions) evaluate(transform, method, f);
  body["results"] = std::move(results);
  report.add_timing("evaluate", eval.elapsed_ms());
  report.add_timing("total", total.elapsed_ms());

  if (!o.report.empty()) report.write(o.report, o.timings);
  out << "report_digest " << report.digest() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// eval-temporal

struct TemporalOptions {
  std::string store;
  std::string temporal;
  std::string transform;
  std::vector<double> fractions = kDefaultFractions;
  std::size_t cap = kDefaultOccurrenceCap;
  std::uint64_t seed = 0;
  std::string sweep_grid = "auto";
  std::string report;
  std::string roc_dir;
  std::string tables_dir;
  bool timings = false;
};

std::vector<std::size_t> parse_grid(const std::string& text, std::size_t m) {
  if (text == "auto") return default_sweep_grid(m);
  std::vector<std::size_t> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size()) {
      throw std::invalid_argument("--sweep-grid: cannot parse \"" + item + "\"");
    }
    grid.push_back(v);
  }
  return grid;
}

int cmd_eval_temporal(const TemporalOptions& o, std::ostream& out) {
  check_fractions(o.fractions);
  Stopwatch total;
  RunReport report("eval-temporal");

  Stopwatch load;
  const EmbeddingStore store = load_store(o.store);
  const TemporalDataset temporal = load_temporal(o.temporal, store);
  const AxisTransform transform = resolve_transform(o.transform, store);
  report.add_timing("load", load.elapsed_ms());

  const auto n_graded = static_cast<std::size_t>(
      std::count_if(temporal.targets.begin(), temporal.targets.end(),
                    [](const auto& t) { return t.graded_gold.has_value(); }));
  const auto n_binary = static_cast<std::size_t>(
      std::count_if(temporal.targets.begin(), temporal.targets.end(),
                    [](const auto& t) { return t.binary_gold.has_value(); }));
  if (n_graded == 0 && n_binary == 0) {
    throw UndefinedError("temporal dataset has neither graded_gold nor binary_gold annotations");
  }
  // A cap no period exceeds selects nothing, so it is recorded as exhaustive.
  std::size_t largest_period = 0;
  for (const auto& t : temporal.targets) {
    largest_period = std::max({largest_period, t.period1_rows.size(), t.period2_rows.size()});
  }
  const OccurrenceCap cap =
      (o.cap == 0 || o.cap >= largest_period) ? OccurrenceCap{} : OccurrenceCap{o.cap};
  const auto grid = parse_grid(o.sweep_grid, transform.axis_count());

  auto& body = report.body();
  body["inputs"] = {{"store_sha256", digest_store(o.store)},
                    {"temporal_sha256", digest_file(o.temporal)},
                    {"transform_sha256", transform_digest(o.transform)}};
  body["transform"] = describe(transform);
  body["dataset"] = {{"targets", temporal.size()},
                     {"with_graded_gold", n_graded},
                     {"with_binary_gold", n_binary}};
  body["config"] = {{"cap", cap ? json(*cap) : json(nullptr)},
                    {"seed", cap ? json(o.seed) : json(nullptr)},
                    {"fractions", o.fractions}};

  Stopwatch eval;
  json results = json::array();
  out << std::left << std::setw(8) << "method" << std::setw(10) << "fraction" << std::setw(8)
      << "axes" << std::setw(22) << "auc" << "spearman\n";
  auto evaluate = [&](const AxisTransform& t, std::string_view method, double fraction) {
    const ChangeScoreTable table = score_targets(store, temporal, t, fraction, cap, o.seed);
    json row = {{"method", std::string(method)},
                {"fraction", fraction},
                {"n_axes", table.n_axes},
                {"auc", nullptr},
                {"spearman", nullptr}};
    if (n_binary > 0) {
      const RocResult roc = temporal_roc(table);
      row["auc"] = roc.auc;
      if (!o.roc_dir.empty()) {
        write_with(fs::path(o.roc_dir) / (run_label(method, fraction) + ".csv"),
                   [&](std::ostream& s) { write_roc_csv(roc, s); });
      }
    }
    if (n_graded > 0) row["spearman"] = graded_spearman(table);
    if (!o.tables_dir.empty()) {
      const fs::path stem = fs::path(o.tables_dir) / ("scores_" + run_label(method, fraction));
      write_with(stem.string() + ".csv", [&](std::ostream& s) { write_table_csv(table, s); });
      write_text(stem.string() + ".json", table_to_json(table) + "\n");
    }
    out << std::left << std::setw(8) << method << std::setw(10) << shortest(fraction)
        << std::setw(8) << table.n_axes << std::setw(22)
        << (row["auc"].is_null() ? std::string("-") : shortest(row["auc"].get<double>()))
        << (row["spearman"].is_null() ? std::string("-")
                                      : shortest(row["spearman"].get<double>()))
        << '\n';
    results.push_back(std::move(row));
  };
  evaluate(fit_raw(store.dim()), "raw", 1.0);
  const std::string method(to_string(transform.kind));
  for (double f : o.fractions) evaluate(transform, method, f);
  body["results"] = std::move(results);
  report.add_timing("evaluate", eval.elapsed_ms());

  Stopwatch sweep_timer;
  json sweeps = json::object();
  auto record_sweep = [&](const SweepResult& sweep) {
    const std::string name(to_string(sweep.metric));
    sweeps[name] = {{"axis_counts", sweep.axis_counts}, {"values", sweep.metric_values}};
    if (!o.tables_dir.empty()) {
      const fs::path stem = fs::path(o.tables_dir) / ("sweep_" + method + "_" + name);
      write_with(stem.string() + ".csv", [&](std::ostream& s) { write_sweep_csv(sweep, s); });
      write_text(stem.string() + ".json", sweep_to_json(sweep) + "\n");
    }
    out << "cumulative " << name << ":";
    for (std::size_t i = 0; i < sweep.axis_counts.size(); ++i) {
      out << ' ' << sweep.axis_counts[i] << '=' << shortest(sweep.metric_values[i]);
    }
    out << '\n';
  };
  if (n_graded > 0) {
    record_sweep(spearman_sweep(store, temporal, transform, grid, cap, o.seed));
  }
  if (n_binary > 0) record_sweep(auc_sweep(store, temporal, transform, grid, cap, o.seed));
  body["sweep"] = std::move(sweeps);
  report.add_timing("sweep", sweep_timer.elapsed_ms());
  report.add_timing("total", total.elapsed_ms());

  if (!o.report.empty()) report.write(o.report, o.timings);
  out << "report_digest " << report.digest() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------------------
// heatmap

struct HeatmapOptions {
  std::string store;
  std::string pairs;
  std::string transform;
  std::size_t axes = kDefaultDisplayedAxes;
  double fraction = 1.0;
  bool normalize = true;
  std::string svg;
  std::string csv;
};

int cmd_heatmap(const HeatmapOptions& o, std::ostream& out) {
  const EmbeddingStore store = load_store(o.store);
  const PairDataset pairs = load_pairs(o.pairs, store);
  const AxisTransform transform = resolve_transform(o.transform, store);
  const DiffMatrix m = diff_matrix(store, pairs, transform, o.fraction, o.normalize, o.axes);

  if (!o.csv.empty()) write_with(o.csv, [&](std::ostream& s) { write_diff_csv(m, s); });
  if (!o.svg.empty()) write_with(o.svg, [&](std::ostream& s) { write_diff_svg(m, s); });
  if (o.csv.empty() && o.svg.empty()) {
    write_diff_csv(m, out);
  } else {
    out << "heatmap: " << m.rows() << " instances (" << m.n_true << " same meaning) x "
        << m.axes() << " axes\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOptions {
  std::string kind;
  std::string out_dir;
  synth::PlantedSpec spec;
  bool csv = false;
};

int cmd_synth(const SynthOptions& o, std::ostream& out) {
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  auto save = [&](const EmbeddingStore& store) {
    if (o.csv) {
      save_store_csv(store, dir / "store.csv");
    } else {
      save_store(store, dir / "store");
    }
  };
  if (o.kind == "pairs") {
    const auto fixture = synth::gen_planted_pairs(o.spec);
    save(fixture.store);
    save_pairs(fixture.pairs, dir / "pairs.jsonl");
    out << "wrote " << fixture.pairs.size() << " pair instances, " << fixture.store.count()
        << " rows\n";
  } else {
    const auto fixture = synth::gen_planted_temporal(o.spec);
    save(fixture.store);
    save_temporal(fixture.temporal, dir / "temporal.jsonl");
    out << "wrote " << fixture.temporal.size() << " targets, " << fixture.store.count()
        << " rows\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic-change-aware axes in contextual embedding spaces", "scd-axes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  FitOptions fit_opts;
  auto* fit = app.add_subcommand("fit", "Fit a raw, PCA or FastICA axis transform");
  fit->add_option("store", fit_opts.store, "Store directory or CSV file")->required();
  fit->add_option("--method", fit_opts.method, "raw | pca | ica")
      ->check(CLI::IsMember({"raw", "pca", "ica"}))
      ->capture_default_str();
  fit->add_option("--seed", fit_opts.seed, "FastICA initialisation seed")->capture_default_str();
  fit->add_option("--max-iter", fit_opts.max_iter, "FastICA iteration limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--tol", fit_opts.tol, "FastICA convergence tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--n-components", fit_opts.n_components, "FastICA components (default: dim)");
  auto* fit_pairs =
      fit->add_option("--pairs", fit_opts.pairs, "Fit only on rows referenced by a pair dataset");
  fit->add_option("--temporal", fit_opts.temporal,
                  "Fit only on rows referenced by a temporal dataset")
      ->excludes(fit_pairs);
  fit->add_option("--out", fit_opts.out_dir, "Output transform directory")->required();

  WicOptions wic_opts;
  auto* wic = app.add_subcommand("eval-wic", "Pair classification AUC per top-k% of axes");
  wic->add_option("store", wic_opts.store)->required();
  wic->add_option("pairs", wic_opts.pairs)->required();
  wic->add_option("transform", wic_opts.transform, "Transform directory, or \"raw\"")
      ->required();
  wic->add_option("--fractions", wic_opts.fractions)->delimiter(',')->capture_default_str();
  wic->add_option("--report", wic_opts.report, "JSON report path");
  wic->add_option("--roc-csv", wic_opts.roc_dir, "Directory for ROC point CSVs");
  wic->add_flag("--timings", wic_opts.timings, "Include wall-clock timings in the report");

  TemporalOptions tmp_opts;
  auto* tmp =
      app.add_subcommand("eval-temporal", "Temporal change AUC, Spearman and cumulative sweeps");
  tmp->add_option("store", tmp_opts.store)->required();
  tmp->add_option("temporal", tmp_opts.temporal)->required();
  tmp->add_option("transform", tmp_opts.transform, "Transform directory, or \"raw\"")
      ->required();
  tmp->add_option("--fractions", tmp_opts.fractions)->delimiter(',')->capture_default_str();
  tmp->add_option("--cap", tmp_opts.cap, "Occurrences per period (0 = exhaustive)")
      ->capture_default_str();
  tmp->add_option("--seed", tmp_opts.seed, "Subsampling seed")->capture_default_str();
  tmp->add_option("--sweep-grid", tmp_opts.sweep_grid, "\"auto\" or comma-separated axis counts")
      ->capture_default_str();
  tmp->add_option("--report", tmp_opts.report, "JSON report path");
  tmp->add_option("--roc-csv", tmp_opts.roc_dir, "Directory for ROC point CSVs");
  tmp->add_option("--tables", tmp_opts.tables_dir,
                  "Directory for change-score tables and sweep curves");
  tmp->add_flag("--timings", tmp_opts.timings, "Include wall-clock timings in the report");

  HeatmapOptions heat_opts;
  auto* heat = app.add_subcommand("heatmap", "Difference-vector heatmap of pair instances");
  heat->add_option("store", heat_opts.store)->required();
  heat->add_option("pairs", heat_opts.pairs)->required();
  heat->add_option("transform", heat_opts.transform, "Transform directory, or \"raw\"")
      ->required();
  heat->add_option("--axes", heat_opts.axes, "Number of leading axes shown")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  heat->add_option("--fraction", heat_opts.fraction, "Top fraction of axes projected")
      ->capture_default_str();
  heat->add_flag("--normalize,!--no-normalize", heat_opts.normalize,
                 "Min-max scale each axis to [0, 1] (default on)");
  heat->add_option("--svg", heat_opts.svg, "SVG output path");
  heat->add_option("--csv", heat_opts.csv, "CSV output path");

  SynthOptions syn_opts;
  auto* syn = app.add_subcommand("synth", "Write a planted-signal fixture");
  syn->add_option("kind", syn_opts.kind, "pairs | temporal")
      ->required()
      ->check(CLI::IsMember({"pairs", "temporal"}));
  syn->add_option("--out", syn_opts.out_dir)->required();
  syn->add_option("--dim", syn_opts.spec.d)->capture_default_str();
  syn->add_option("--signal-axes", syn_opts.spec.n_signal_axes)->capture_default_str();
  syn->add_option("--strength", syn_opts.spec.signal_strength)->capture_default_str();
  syn->add_option("--sigma", syn_opts.spec.noise_sigma)->capture_default_str();
  syn->add_option("--instances", syn_opts.spec.n_instances)->capture_default_str();
  syn->add_option("--targets", syn_opts.spec.n_targets)->capture_default_str();
  syn->add_option("--occurrences", syn_opts.spec.occurrences_per_period)->capture_default_str();
  syn->add_option("--golds", syn_opts.spec.golds, "Explicit graded golds (temporal)")
      ->delimiter(',');
  syn->add_option("--seed", syn_opts.spec.seed)->capture_default_str();
  syn->add_flag("--csv", syn_opts.csv, "Write the store as CSV instead of binary");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFormat;
  }

  try {
    if (fit->parsed()) return cmd_fit(fit_opts, out, err);
    if (wic->parsed()) return cmd_eval_wic(wic_opts, out);
    if (tmp->parsed()) return cmd_eval_temporal(tmp_opts, out);
    if (heat->parsed()) return cmd_heatmap(heat_opts, out);
    if (syn->parsed()) return cmd_synth(syn_opts, out);
  } catch (const UndefinedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUndefined;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  return kExitFormat;
}

}  // namespace scdaxes::cli
