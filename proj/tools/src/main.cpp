#include <cstdint>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metiblt/annealing.hpp"
#include "metiblt/cell_codec.hpp"
#include "metiblt/config_io.hpp"
#include "metiblt/cost_model.hpp"
#include "metiblt/density_evolution.hpp"
#include "metiblt/design.hpp"
#include "metiblt/experiments.hpp"
#include "metiblt/protocol.hpp"
#include "metiblt/table.hpp"

namespace {

using namespace metiblt;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCheckFailed = 2;

void write_table(const ResultTable& table, const std::string& out, const std::string& format) {
  TableFormat fmt = parse_table_format(format);
  if (out.empty()) {
    emit(table, fmt, std::cout);
  } else {
    emit_to_file(table, fmt, out);
  }
}

struct ThresholdArgs {
  std::string config_path;
  double tol = 1e-4;
  int prefix_max = 0;  // 0: every cell type
  std::string out;
  std::string format = "csv";
};

int run_threshold(const ThresholdArgs& args) {
  MetConfig config = load_config(args.config_path);
  EnsembleParams ensemble = make_ensemble(config);
  int last = ensemble.cell_types();
  if (args.prefix_max > 0) last = std::min(last, args.prefix_max);

  ResultTable table;
  table.x_name = "prefix_types";
  for (int i = 1; i <= last; ++i) {
    ThresholdResult result = prefix_threshold(ensemble, i, args.tol);
    ResultRow row;
    row.x = i;
    row.id = config.id;
    row.stat = "eta_star";
    row.value = result.found ? result.eta_star : 0.0;
    row.ci_low = result.bracket_low;
    row.ci_high = result.bracket_high;
    table.rows.push_back(row);
  }
  write_table(table, args.out, args.format);
  return kExitOk;
}

struct PeSweepArgs {
  std::string config_path;
  std::vector<std::uint64_t> m_totals;
  std::vector<double> etas;
  std::uint64_t trials = 50;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
};

int run_pe_sweep_cmd(const PeSweepArgs& args) {
  PeSweepSpec spec;
  spec.config = load_config(args.config_path);
  spec.m_totals = args.m_totals;
  spec.etas = args.etas;
  spec.trials = args.trials;
  spec.seed = args.seed;
  write_table(run_pe_sweep(spec), args.out, args.format);
  return kExitOk;
}

struct ReconcileArgs {
  std::string config_path;
  std::vector<std::uint64_t> deltas;
  std::uint64_t set_size = 10000;
  bool full_scale = false;
  std::uint64_t trials = 100;
  std::uint64_t seed = 1;
  std::uint64_t packet_cells = 1;
  std::uint64_t regular_m = 10000;
  std::uint64_t regular_packet_cells = 100;
  std::string dd_table_path;
  double dd_oversize = 1.0;
  bool no_regular = false;
  bool no_dd = false;
  bool no_cpi = false;
  bool check = false;
  std::string out;
  std::string format = "csv";
};

int run_reconcile_sweep_cmd(const ReconcileArgs& args) {
  ReconcileSweepSpec spec;
  spec.met_config = load_config(args.config_path);
  spec.deltas = args.deltas;
  spec.set_size = args.full_scale ? 100000 : args.set_size;
  spec.trials = args.trials;
  spec.seed = args.seed;
  spec.met_packet_cells = args.packet_cells;
  spec.run_regular = !args.no_regular;
  spec.regular_m = args.regular_m;
  spec.regular_packet_cells = args.regular_packet_cells;
  spec.model_difference_digest = !args.no_dd;
  spec.model_cpi = !args.no_cpi;
  spec.dd_oversize_c = args.dd_oversize;
  if (spec.model_difference_digest) {
    if (args.dd_table_path.empty())
      throw std::runtime_error("--dd-table is required unless --no-dd is given");
    spec.dd_table = DiffDigestTable::load(args.dd_table_path);
  }

  auto points = reconcile_sweep_points(spec);

  ResultTable table;
  table.x_name = "delta";
  for (const ReconcilePoint& point : points) {
    auto push = [&](const std::string& stat, double value, double lo, double hi) {
      table.rows.push_back(
          {static_cast<double>(point.delta), point.scheme, stat, value, lo, hi});
    };
    push("cell_bytes_mean", point.cell_bytes.mean, point.cell_bytes.low, point.cell_bytes.high);
    push("wire_bytes_mean", point.wire_bytes.mean, point.wire_bytes.low, point.wire_bytes.high);
    if (point.trials == 0) {
      push("success_rate", point.success_rate, point.success_rate, point.success_rate);
    } else {
      Interval ci = wilson_interval(point.successes, point.trials);
      push("success_rate", point.success_rate, ci.low, ci.high);
    }
  }
  write_table(table, args.out, args.format);

  if (args.check) {
    bool ok = true;
    for (const ReconcilePoint& point : points) {
      if (point.scheme != "met-rateless") continue;
      if (point.success_rate < 1.0) {
        std::cerr << "check: met-rateless failed " << (point.trials - point.successes)
                  << " of " << point.trials << " trials at delta " << point.delta << '\n';
        ok = false;
      }
      for (const ReconcilePoint& other : points) {
        if (other.delta == point.delta && other.scheme == "difference-digest" &&
            point.wire_bytes.mean > other.wire_bytes.mean) {
          std::cerr << "check: met-rateless above difference-digest at delta " << point.delta
                    << " (" << point.wire_bytes.mean << " > " << other.wire_bytes.mean << ")\n";
          ok = false;
        }
      }
    }
    if (!ok) return kExitCheckFailed;
  }
  return kExitOk;
}

struct AnnealArgs {
  std::string design_path;
  std::uint64_t budget = 2000;
  std::uint64_t seed = 1;
  int probe_types = 8;
  double threshold_tol = 1e-3;
  std::string out;
  std::string trace;
  std::string format = "csv";
};

int run_anneal_cmd(const AnnealArgs& args) {
  ExtendableDesign initial =
      args.design_path.empty() ? reference_design() : load_design(args.design_path);

  AnnealOptions options;
  options.budget = args.budget;
  options.seed = args.seed;
  options.probe_types = args.probe_types;
  options.threshold_tol = args.threshold_tol;

  AnnealResult result = anneal(initial, options);
  std::cout << "best worst-prefix threshold " << result.best_objective << " after "
            << result.trace.size() << " evaluations\n";
  if (!args.out.empty()) save_design(result.best, args.out);

  if (!args.trace.empty()) {
    ResultTable table;
    table.x_name = "evaluation";
    for (const AnnealTraceRow& row : result.trace) {
      double x = static_cast<double>(row.evaluation);
      table.rows.push_back({x, "anneal", "objective", row.objective, 0.0, 0.0});
      table.rows.push_back({x, "anneal", "best_objective", row.best_objective, 0.0, 0.0});
      table.rows.push_back({x, "anneal", "accepted", row.accepted ? 1.0 : 0.0, 0.0, 0.0});
    }
    emit_to_file(table, parse_table_format(args.format), args.trace);
  }
  return kExitOk;
}

struct DemoArgs {
  std::string config_path;
  std::uint64_t set_size = 1000;
  std::uint64_t delta = 20;
  std::uint64_t seed = 1;
  std::uint64_t packet_cells = 1;
};

int run_protocol_demo(const DemoArgs& args) {
  MetConfig config = load_config(args.config_path);
  config.validate_for_reconciliation();

  std::mt19937_64 rng(args.seed);
  SetPair sets = sample_set_pair(args.set_size, args.delta, config.kappa_bits, rng);
  std::vector<KeyValuePair> set_a;
  for (std::uint64_t v : sets.a) set_a.push_back(KeyValuePair::from_value(v, config));
  std::vector<KeyValuePair> set_b;
  for (std::uint64_t v : sets.b) set_b.push_back(KeyValuePair::from_value(v, config));

  ProtocolOptions options;
  options.packet_cells = args.packet_cells;
  ProtocolResult result = run_protocol(set_a, set_b, config, options);

  std::cout << "config " << config.id << ": " << config.total_cells() << " cells, "
            << cell_wire_size(config) << " B each\n";
  std::cout << "sets of " << sets.a.size() << " and " << sets.b.size() << " elements, difference "
            << args.delta << "\n\n";
  for (const TranscriptEntry& entry : result.transcript.entries) {
    const char* arrow = entry.direction == TranscriptEntry::Direction::a_to_b ? "A -> B" : "B -> A";
    std::cout << arrow << "  ";
    switch (entry.tag) {
      case MessageTag::cells:
        std::cout << "cells " << entry.cells;
        break;
      case MessageTag::ack:
        std::cout << "ack";
        break;
      case MessageTag::fail:
        std::cout << "fail";
        break;
    }
    std::cout << "  (" << entry.wire_bytes << " B on the wire)\n";
  }
  std::cout << '\n';

  switch (result.outcome) {
    case ProtocolOutcome::success:
      std::cout << "reconciled: " << result.difference.only_in_a.size() << " only at A, "
                << result.difference.only_in_b.size() << " only at B\n";
      break;
    case ProtocolOutcome::failed:
      std::cout << "reconciliation failed after the full table\n";
      break;
    case ProtocolOutcome::config_mismatch:
      std::cout << "hosts disagree on the table config\n";
      break;
  }
  std::cout << result.transcript.cells_sent() << " cells, " << result.transcript.bytes_sent()
            << " B total\n";
  return result.outcome == ProtocolOutcome::success ? kExitOk : kExitCheckFailed;
}

struct CalibrateArgs {
  std::string out;
  std::vector<std::uint64_t> t_grid = {10, 20, 50, 100, 200, 500, 1000};
  double target = 0.99;
  std::uint64_t trials = 200;
  std::uint64_t seed = 7;
};

int run_calibrate_dd(const CalibrateArgs& args) {
  DiffDigestTable table = calibrate_diff_digest(args.t_grid, args.target, args.trials, args.seed);
  table.save(args.out, args.trials, args.seed, args.target);
  std::cout << "calibrated " << table.rows.size() << " sizes into " << args.out << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-edge-type IBLT toolkit"};
  app.require_subcommand(1);

  ThresholdArgs threshold_args;
  auto* threshold = app.add_subcommand("threshold", "Load thresholds of every prefix of a config");
  threshold->add_option("--config", threshold_args.config_path, "table config (json)")
      ->required();
  threshold->add_option("--tol", threshold_args.tol, "bisection width");
  threshold->add_option("--prefix-max", threshold_args.prefix_max, "stop after this many types");
  threshold->add_option("--out", threshold_args.out, "output file (default stdout)");
  threshold->add_option("--format", threshold_args.format, "csv or json");

  PeSweepArgs pe_args;
  auto* pe = app.add_subcommand("pe-sweep", "Monte-Carlo recovery loss across loads");
  pe->add_option("--config", pe_args.config_path, "table config (json)")->required();
  pe->add_option("--m", pe_args.m_totals, "total cells (repeatable)")->required();
  pe->add_option("--eta", pe_args.etas, "loads to probe (repeatable)")->required();
  pe->add_option("--trials", pe_args.trials, "trials per point");
  pe->add_option("--seed", pe_args.seed, "experiment seed");
  pe->add_option("--out", pe_args.out, "output file (default stdout)");
  pe->add_option("--format", pe_args.format, "csv or json");

  ReconcileArgs rec_args;
  auto* rec = app.add_subcommand("reconcile-sweep", "Transfer cost across difference sizes");
  rec->add_option("--config", rec_args.config_path, "streaming table config (json)")->required();
  rec->add_option("--delta", rec_args.deltas, "difference sizes (repeatable)")->required();
  rec->add_option("--set-size", rec_args.set_size, "elements per set");
  rec->add_flag("--full-scale", rec_args.full_scale, "use 100000-element sets");
  rec->add_option("--trials", rec_args.trials, "trials per point");
  rec->add_option("--seed", rec_args.seed, "experiment seed");
  rec->add_option("--packet-cells", rec_args.packet_cells, "cells per streamed burst");
  rec->add_option("--regular-m", rec_args.regular_m, "cells of the single-type baseline");
  rec->add_option("--regular-packet-cells", rec_args.regular_packet_cells,
                  "burst size of the single-type baseline");
  rec->add_option("--dd-table", rec_args.dd_table_path, "sizing table for difference digest");
  rec->add_option("--dd-oversize", rec_args.dd_oversize, "difference-digest oversizing factor");
  rec->add_flag("--no-regular", rec_args.no_regular, "skip the single-type baseline");
  rec->add_flag("--no-dd", rec_args.no_dd, "skip the difference-digest model");
  rec->add_flag("--no-cpi", rec_args.no_cpi, "skip the interpolation model");
  rec->add_flag("--check", rec_args.check,
                "exit 2 unless the streaming scheme succeeds everywhere and stays below "
                "difference digest");
  rec->add_option("--out", rec_args.out, "output file (default stdout)");
  rec->add_option("--format", rec_args.format, "csv or json");

  AnnealArgs anneal_args;
  auto* annealc = app.add_subcommand("anneal", "Search degree layouts by simulated annealing");
  annealc->add_option("--design", anneal_args.design_path,
                      "starting design (json; default: shipped reference)");
  annealc->add_option("--budget", anneal_args.budget, "candidate evaluations");
  annealc->add_option("--seed", anneal_args.seed, "search seed");
  annealc->add_option("--probe-types", anneal_args.probe_types, "prefixes in the objective");
  annealc->add_option("--threshold-tol", anneal_args.threshold_tol, "objective bisection width");
  annealc->add_option("--out", anneal_args.out, "write the best design here (json)");
  annealc->add_option("--trace", anneal_args.trace, "write the search trace here");
  annealc->add_option("--format", anneal_args.format, "trace format, csv or json");

  DemoArgs demo_args;
  auto* demo = app.add_subcommand("protocol-demo", "Run one reconciliation and print the exchange");
  demo->add_option("--config", demo_args.config_path, "table config (json)")->required();
  demo->add_option("--set-size", demo_args.set_size, "elements per set");
  demo->add_option("--delta", demo_args.delta, "difference size");
  demo->add_option("--seed", demo_args.seed, "set sampling seed");
  demo->add_option("--packet-cells", demo_args.packet_cells, "cells per streamed burst");

  CalibrateArgs cal_args;
  auto* cal = app.add_subcommand("calibrate-dd", "Calibrate the difference-digest sizing table");
  cal->add_option("--out", cal_args.out, "output csv path")->required();
  cal->add_option("--t", cal_args.t_grid, "element counts to size (repeatable)");
  cal->add_option("--target", cal_args.target, "required recovery success rate");
  cal->add_option("--trials", cal_args.trials, "trials per probe");
  cal->add_option("--seed", cal_args.seed, "calibration seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (threshold->parsed()) return run_threshold(threshold_args);
    if (pe->parsed()) return run_pe_sweep_cmd(pe_args);
    if (rec->parsed()) return run_reconcile_sweep_cmd(rec_args);
    if (annealc->parsed()) return run_anneal_cmd(anneal_args);
    if (demo->parsed()) return run_protocol_demo(demo_args);
    if (cal->parsed()) return run_calibrate_dd(cal_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
