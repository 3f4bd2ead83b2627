#include "metiblt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "metiblt/iblt.hpp"
#include "metiblt/key_value.hpp"
#include "metiblt/prf.hpp"
#include "metiblt/protocol.hpp"

namespace metiblt {

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  return prf64(seed, PrfDomain::trial_seed, stream, trial);
}

MetConfig scale_config_cells(const MetConfig& config, std::uint64_t m_total) {
  config.validate();
  if (m_total < config.cells_per_type.size()) {
    throw std::invalid_argument("scale_config_cells: fewer cells than cell types");
  }
  const std::uint64_t old_total = config.total_cells();
  MetConfig scaled = config;
  scaled.extendable.reset();

  // Largest-remainder apportionment of m_total over the old fractions,
  // with every type kept nonempty.
  std::vector<double> exact(config.cells_per_type.size());
  std::uint64_t assigned = 0;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    exact[i] = static_cast<double>(m_total) * static_cast<double>(config.cells_per_type[i]) /
               static_cast<double>(old_total);
    scaled.cells_per_type[i] = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(exact[i]));
    assigned += scaled.cells_per_type[i];
  }
  std::vector<std::size_t> order(exact.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double ra = exact[a] - std::floor(exact[a]);
    double rb = exact[b] - std::floor(exact[b]);
    return ra > rb;
  });
  std::size_t cursor = 0;
  while (assigned < m_total) {
    ++scaled.cells_per_type[order[cursor % order.size()]];
    ++cursor;
    ++assigned;
  }
  while (assigned > m_total) {
    std::size_t i = order[order.size() - 1 - (cursor % order.size())];
    if (scaled.cells_per_type[i] > 1) {
      --scaled.cells_per_type[i];
      --assigned;
    }
    ++cursor;
  }
  scaled.validate();
  return scaled;
}

std::vector<std::uint64_t> sample_distinct_values(std::uint64_t count, int kappa_bits,
                                                  std::mt19937_64& rng) {
  const std::uint64_t mask = low_bits_mask(kappa_bits);
  if (kappa_bits < 64 && count > (mask >> 1) + 1) {
    throw std::invalid_argument("sample_distinct_values: count too large for value width");
  }
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(count);
  std::vector<std::uint64_t> values;
  values.reserve(count);
  while (values.size() < count) {
    std::uint64_t v = rng() & mask;
    if (seen.insert(v).second) values.push_back(v);
  }
  return values;
}

SetPair sample_set_pair(std::uint64_t set_size, std::uint64_t delta, int kappa_bits,
                        std::mt19937_64& rng) {
  const std::uint64_t a_only = (delta + 1) / 2;
  const std::uint64_t b_only = delta / 2;
  if (set_size < a_only) {
    throw std::invalid_argument("sample_set_pair: difference larger than the set");
  }
  const std::uint64_t shared = set_size - a_only;
  auto values = sample_distinct_values(shared + a_only + b_only, kappa_bits, rng);

  SetPair pair;
  pair.a.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(shared + a_only));
  pair.b.assign(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(shared));
  pair.b.insert(pair.b.end(), values.begin() + static_cast<std::ptrdiff_t>(shared + a_only),
                values.end());
  return pair;
}

std::vector<PePoint> pe_sweep_points(const PeSweepSpec& spec) {
  spec.config.validate();
  if (spec.trials == 0) throw std::invalid_argument("pe_sweep: trials must be positive");
  std::vector<PePoint> points;
  for (std::size_t mi = 0; mi < spec.m_totals.size(); ++mi) {
    MetConfig scaled = scale_config_cells(spec.config, spec.m_totals[mi]);
    const std::uint64_t m = scaled.total_cells();
    for (std::size_t ei = 0; ei < spec.etas.size(); ++ei) {
      const double eta = spec.etas[ei];
      const auto inserted = static_cast<std::uint64_t>(std::llround(eta * static_cast<double>(m)));
      std::uint64_t lost = 0;
      for (std::uint64_t trial = 0; trial < spec.trials; ++trial) {
        std::mt19937_64 rng(trial_seed(spec.seed, (mi << 20) ^ ei, trial));
        MetConfig table_config = scaled;
        table_config.seed = rng();
        auto values = sample_distinct_values(inserted, table_config.kappa_bits, rng);
        Iblt table(table_config);
        for (std::uint64_t v : values) {
          table.insert(KeyValuePair::from_value(v, table_config));
        }
        auto result = table.recover();
        lost += inserted - result.pairs.size();
      }
      PePoint point;
      point.m = m;
      point.eta = eta;
      point.inserted = inserted;
      point.trials = spec.trials;
      const std::uint64_t total = inserted * spec.trials;
      point.pe = total == 0 ? 0.0 : static_cast<double>(lost) / static_cast<double>(total);
      point.ci = wilson_interval(lost, total);
      points.push_back(point);
    }
  }
  return points;
}

ResultTable run_pe_sweep(const PeSweepSpec& spec) {
  ResultTable table;
  table.x_name = "eta";
  for (const PePoint& point : pe_sweep_points(spec)) {
    ResultRow row;
    row.x = point.eta;
    row.id = spec.config.id + "@m=" + std::to_string(point.m);
    row.stat = "pe";
    row.value = point.pe;
    row.ci_low = point.ci.low;
    row.ci_high = point.ci.high;
    table.rows.push_back(row);
  }
  return table;
}

namespace {

struct SchemeTally {
  std::vector<double> cell_bytes;
  std::vector<double> wire_bytes;
  std::uint64_t successes = 0;
};

ReconcilePoint finish_point(std::uint64_t delta, std::string scheme, const SchemeTally& tally) {
  ReconcilePoint point;
  point.delta = delta;
  point.scheme = std::move(scheme);
  point.trials = tally.cell_bytes.size();
  point.successes = tally.successes;
  point.cell_bytes = mean_interval(tally.cell_bytes);
  point.wire_bytes = mean_interval(tally.wire_bytes);
  point.success_rate =
      point.trials == 0 ? 1.0
                        : static_cast<double>(tally.successes) / static_cast<double>(point.trials);
  return point;
}

ReconcilePoint analytic_point(std::uint64_t delta, std::string scheme, double cell_bytes,
                              double wire_bytes) {
  ReconcilePoint point;
  point.delta = delta;
  point.scheme = std::move(scheme);
  point.cell_bytes = {cell_bytes, cell_bytes, cell_bytes};
  point.wire_bytes = {wire_bytes, wire_bytes, wire_bytes};
  return point;
}

SchemeTally run_protocol_trials(const MetConfig& base_config, const ProtocolOptions& options,
                                const ReconcileSweepSpec& spec, std::uint64_t delta,
                                std::uint64_t stream) {
  SchemeTally tally;
  for (std::uint64_t trial = 0; trial < spec.trials; ++trial) {
    std::mt19937_64 rng(trial_seed(spec.seed, stream, trial));
    MetConfig config = base_config;
    config.seed = rng();
    SetPair sets = sample_set_pair(spec.set_size, delta, config.kappa_bits, rng);

    std::vector<KeyValuePair> set_a;
    set_a.reserve(sets.a.size());
    for (std::uint64_t v : sets.a) set_a.push_back(KeyValuePair::from_value(v, config));
    std::vector<KeyValuePair> set_b;
    set_b.reserve(sets.b.size());
    for (std::uint64_t v : sets.b) set_b.push_back(KeyValuePair::from_value(v, config));

    ProtocolResult result = run_protocol(set_a, set_b, config, options);
    tally.cell_bytes.push_back(static_cast<double>(result.transcript.cell_payload_bytes()));
    tally.wire_bytes.push_back(static_cast<double>(result.transcript.bytes_sent()));
    if (result.outcome == ProtocolOutcome::success) ++tally.successes;
  }
  return tally;
}

}  // namespace

std::vector<ReconcilePoint> reconcile_sweep_points(const ReconcileSweepSpec& spec) {
  if (spec.trials == 0) throw std::invalid_argument("reconcile_sweep: trials must be positive");
  if (spec.run_met) spec.met_config.validate_for_reconciliation();

  MetConfig regular;
  if (spec.run_regular) {
    regular.id = "regular-rateless";
    regular.nu_bits = spec.met_config.nu_bits;
    regular.kappa_bits = spec.met_config.kappa_bits;
    regular.type_dist = {1.0};
    regular.degree = {{3}};
    regular.cells_per_type = {spec.regular_m};
    regular.validate_for_reconciliation();
  }

  std::vector<ReconcilePoint> points;
  for (std::size_t di = 0; di < spec.deltas.size(); ++di) {
    const std::uint64_t delta = spec.deltas[di];
    if (spec.run_met) {
      ProtocolOptions options;
      options.packet_cells = spec.met_packet_cells;
      points.push_back(finish_point(
          delta, "met-rateless",
          run_protocol_trials(spec.met_config, options, spec, delta, (1ull << 32) | di)));
    }
    if (spec.run_regular) {
      ProtocolOptions options;
      options.packet_cells = spec.regular_packet_cells;
      points.push_back(finish_point(
          delta, "regular-rateless",
          run_protocol_trials(regular, options, spec, delta, (2ull << 32) | di)));
    }
    if (spec.model_difference_digest) {
      const auto total = static_cast<double>(
          difference_digest_bytes(delta, spec.dd_table, spec.dd_oversize_c));
      points.push_back(analytic_point(delta, "difference-digest",
                                      total - static_cast<double>(kStrataEstimatorBytes), total));
    }
    if (spec.model_cpi) {
      const auto total = static_cast<double>(cpi_bytes(delta));
      points.push_back(analytic_point(delta, "cpi", total, total));
    }
  }
  return points;
}

ResultTable run_reconciliation_sweep(const ReconcileSweepSpec& spec) {
  ResultTable table;
  table.x_name = "delta";
  for (const ReconcilePoint& point : reconcile_sweep_points(spec)) {
    auto push = [&](const std::string& stat, double value, double lo, double hi) {
      ResultRow row;
      row.x = static_cast<double>(point.delta);
      row.id = point.scheme;
      row.stat = stat;
      row.value = value;
      row.ci_low = lo;
      row.ci_high = hi;
      table.rows.push_back(row);
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
  return table;
}

}  // namespace metiblt
