#include "commands.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include <fmt/format.h>

#include "vsrcost/arch.h"
#include "vsrcost/clip.h"
#include "vsrcost/cost_model.h"
#include "vsrcost/errors.h"
#include "vsrcost/executor.h"
#include "vsrcost/graph_io.h"
#include "vsrcost/impact.h"
#include "vsrcost/quantize.h"
#include "vsrcost/weights_io.h"

namespace vsrcost::cli {

namespace {

using nlohmann::json;

constexpr double kListedEnergyTolerance = 0.01;

DType dtype_from(const std::string& text) {
  auto d = parse_dtype(text);
  if (!d) throw UsageError("unknown dtype '" + text + "'");
  return *d;
}

DramEnergy dram_from(const std::string& text) {
  if (text == "low") return DramEnergy::low;
  if (text == "high") return DramEnergy::high;
  if (text == "midpoint") return DramEnergy::midpoint;
  throw UsageError("unknown DRAM level '" + text + "'");
}

void emit(const Table& table, Format format) {
  switch (format) {
    case Format::json:
      std::cout << table.to_json().dump(2) << '\n';
      break;
    case Format::csv:
      table.write_csv(std::cout);
      break;
    case Format::table:
      table.write_table(std::cout, use_color());
      break;
  }
}

std::uint64_t file_size(const std::vector<std::uint8_t>& bytes) { return bytes.size(); }

std::vector<std::string> read_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open labels file '" + path.string() + "'");
  std::vector<std::string> labels;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    labels.push_back(line);
  }
  return labels;
}

}  // namespace

std::vector<int> parse_alpha_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string_view item(text.data() + start, end - start);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || value < 1) {
      throw UsageError("--alphas: '" + std::string(item) + "' is not a positive integer");
    }
    out.push_back(value);
    start = end + 1;
  }
  return out;
}

int cmd_build(const BuildOptions& o) {
  ChannelPlan plan = default_channel_plan();
  if (!o.plan.empty()) {
    auto found = find_channel_plan(o.plan);
    if (!found) throw UsageError("unknown channel plan '" + o.plan + "'");
    plan = *found;
  }
  const LayerGraph graph = build_mobivsr(o.alpha, plan);
  save_graph(graph, o.out);
  std::cout << fmt::format("wrote {} ({} nodes, plan {}) to {}\n", graph.name,
                           graph.nodes().size(), graph.channel_plan, o.out.string());
  return 0;
}

int cmd_init_weights(const InitWeightsOptions& o) {
  const LayerGraph graph = load_graph(o.graph);
  const WeightStore weights = init_weights(graph, o.seed);
  save_weights(weights, o.out);
  std::cout << fmt::format("wrote {} tensors ({} values, seed {}) to {}\n",
                           weights.entries().size(), weights.element_count(), o.seed,
                           o.out.string());
  return 0;
}

int cmd_report(const ReportOptions& o) {
  const LayerGraph graph = load_graph(o.graph);
  const CostReport costs = aggregate(graph, dtype_from(o.dtype));
  const ImpactReport impact = impact_report(costs);

  Table t;
  t.columns = {{"id", "layer"},
               {"kind", "kind"},
               {"input_shape", "input"},
               {"output_shape", "output"},
               {"params", "params"},
               {"memory_accesses", "mem accesses"},
               {"flops", "FLOPs"},
               {"energy_mj", "energy mJ", 4},
               {"co2_mg", "CO2 mg", 4}};
  for (const auto& e : costs.per_layer) {
    const double mj = energy_per_inference(static_cast<double>(e.cost.flops),
                                           static_cast<double>(e.cost.memory_accesses));
    t.add_row({e.id, e.kind, to_string(e.input_shape), to_string(e.output_shape), e.cost.params,
               e.cost.memory_accesses, e.cost.flops, mj, co2_per_inference(mj)});
  }
  t.add_row({std::string("total"), std::monostate{}, to_string(graph.input_shape),
             costs.per_layer.empty() ? std::string() : to_string(costs.per_layer.back().output_shape),
             costs.totals.params, costs.totals.memory_accesses, costs.totals.flops,
             impact.energy_mj, impact.co2_mg});

  const ModelFigures fig = figures_of(costs);
  if (o.format == Format::json) {
    json rows = t.to_json();
    json totals = rows.back();
    rows.erase(rows.size() - 1);
    json doc = {
        {"model", graph.name},
        {"channel_plan", graph.channel_plan},
        {"dtype", std::string(to_string(costs.dtype))},
        {"size_bytes", costs.size_bytes},
        {"size_mb", fig.size_mb},
        {"params_m", fig.params_m},
        {"memory_accesses_k", fig.mem_access_k},
        {"flops_b", fig.flops_b},
        {"memory_source", std::string(to_string(impact.source))},
        {"energy_low_mj", impact.energy_low_mj},
        {"energy_high_mj", impact.energy_high_mj},
        {"layers", rows},
        {"totals", totals},
    };
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  emit(t, o.format);
  if (o.format == Format::table) {
    std::cout << fmt::format(
        "\n{} [{}]  size {:.2f} MB ({})  params {:.2f}M  FLOPs {:.2f}B\n"
        "energy {:.2f} mJ (DRAM range {:.2f}-{:.2f})  CO2 {:.2f} mg  memory from {}\n",
        graph.name, graph.channel_plan, fig.size_mb, to_string(costs.dtype), fig.params_m,
        fig.flops_b, impact.energy_mj, impact.energy_low_mj, impact.energy_high_mj, impact.co2_mg,
        to_string(impact.source));
  }
  return 0;
}

int cmd_compare(const CompareOptions& o) {
  const std::vector<int> alphas = parse_alpha_list(o.alphas);
  const DType dtype = dtype_from(o.dtype);

  Table t;
  t.columns = {{"model", "model"},
               {"alpha", "alpha"},
               {"size_mb", "size MB", 1},
               {"params", "params"},
               {"params_m", "params M", 2},
               {"increment_per_alpha", "+params/alpha"},
               {"memory_accesses", "mem accesses"},
               {"memory_accesses_k", "mem K", 1},
               {"flops_b", "FLOPs B", 2},
               {"energy_mj", "energy mJ", 2},
               {"co2_mg", "CO2 mg", 2},
               {"memory_source", "mem source"},
               {"top1", "top-1 %", 1},
               {"acc_per_mb", "acc/MB", 2},
               {"acc_per_gflop", "acc/GFLOP", 2},
               {"acc_per_mparam", "acc/Mparam", 2},
               {"acc_per_kaccess", "acc/Kaccess", 2},
               {"listed_energy_mj", "listed mJ", 2},
               {"note", "note"}};

  std::optional<std::pair<int, std::uint64_t>> previous;
  for (int alpha : alphas) {
    const LayerGraph graph = build_mobivsr(alpha);
    const CostReport costs = aggregate(graph, dtype);
    const ModelFigures fig = figures_of(costs);
    const ImpactReport impact = impact_report(costs);
    Cell increment;
    if (previous && alpha != previous->first) {
      const auto dp = static_cast<std::int64_t>(costs.totals.params) -
                      static_cast<std::int64_t>(previous->second);
      increment = static_cast<double>(dp) / (alpha - previous->first);
    }
    previous = {alpha, costs.totals.params};
    t.add_row({graph.name, static_cast<std::int64_t>(alpha), fig.size_mb, costs.totals.params,
               fig.params_m, increment, costs.totals.memory_accesses, fig.mem_access_k,
               fig.flops_b, impact.energy_mj, impact.co2_mg,
               std::string(to_string(impact.source))});
  }
  if (o.presets) {
    for (const auto& p : reference_presets()) {
      const ImpactReport impact = impact_report(p);
      const EfficiencyRatios r = efficiency_ratios(figures_of(p), p.top1);
      Cell note;
      if (std::abs(impact.energy_mj / p.listed_energy_mj - 1.0) > kListedEnergyTolerance) {
        note = std::string("listed energy inconsistent with its FLOPs");
      }
      t.add_row({std::string(p.name), std::monostate{}, p.size_mb, std::monostate{}, p.params_m,
                 std::monostate{}, std::monostate{}, p.mem_access_k, p.flops_b, impact.energy_mj,
                 impact.co2_mg, std::string(to_string(impact.source)), p.top1, r.acc_per_mb,
                 r.acc_per_gflop, r.acc_per_mparam, r.acc_per_kaccess, p.listed_energy_mj, note});
    }
  }
  emit(t, o.format);
  return 0;
}

int cmd_infer(const InferOptions& o) {
  const LayerGraph graph = load_graph(o.graph);
  const WeightStore weights = load_weights(o.weights);
  check_weights(graph, weights);

  std::error_code ec;
  const Clip clip = std::filesystem::is_directory(o.input, ec)
                        ? preprocess_clip(read_frame_directory(o.input))
                        : load_clip(o.input);
  const Tensor input = clip.as_input();
  const GraphRun run = run_graph(graph, weights, input, o.counted);
  const Tensor& probs = run.output;
  if (probs.rank() != 1) {
    throw ValidationError("graph output has shape " + to_string(probs.shape()) +
                          "; expected a probability vector");
  }

  std::vector<std::string> labels;
  if (o.labels) {
    labels = read_labels(*o.labels);
    if (static_cast<std::int64_t>(labels.size()) != probs.size()) {
      throw ValidationError(fmt::format("labels file has {} lines, the model has {} classes",
                                        labels.size(), probs.size()));
    }
  }

  std::vector<std::int64_t> order(static_cast<std::size_t>(probs.size()));
  std::iota(order.begin(), order.end(), 0);
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(o.top_k), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](auto a, auto b) { return probs[a] > probs[b] || (probs[a] == probs[b] && a < b); });
  double sum = 0;
  for (float p : probs.data()) sum += p;

  Table t;
  t.columns = {{"rank", "rank"}, {"class", "class"}, {"label", "label"}, {"probability", "probability", 6}};
  for (std::size_t i = 0; i < k; ++i) {
    const auto c = order[i];
    t.add_row({static_cast<std::int64_t>(i + 1), c,
               labels.empty() ? fmt::format("class_{}", c) : labels[static_cast<std::size_t>(c)],
               static_cast<double>(probs[c])});
  }

  json ledger;
  json analytic;
  if (o.counted) {
    const CostReport costs = aggregate(graph, input.shape());
    ledger = {{"multiplies", run.total.multiplies},
              {"adds", run.total.adds},
              {"param_reads", run.total.param_reads},
              {"activation_reads", run.total.activation_reads},
              {"output_writes", run.total.output_writes},
              {"flops", run.total.flops()},
              {"memory_accesses", run.total.memory_accesses()}};
    analytic = {{"flops", costs.totals.flops}, {"memory_accesses", costs.totals.memory_accesses}};
  }

  if (o.format == Format::json) {
    json doc = {{"model", graph.name}, {"top_k", t.to_json()}, {"probability_sum", sum}};
    if (o.counted) {
      doc["ledger"] = ledger;
      doc["analytic"] = analytic;
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  emit(t, o.format);
  if (o.format == Format::table) {
    std::cout << fmt::format("\nprobability sum {:.6f}\n", sum);
    if (o.counted) {
      std::cout << fmt::format(
          "counted: multiplies {} adds {} param reads {} activation reads {} output writes {}\n"
          "counted FLOPs {}  analytic FLOPs {}\n"
          "counted memory accesses {}  analytic memory accesses {}\n",
          run.total.multiplies, run.total.adds, run.total.param_reads, run.total.activation_reads,
          run.total.output_writes, run.total.flops(), analytic["flops"].get<std::uint64_t>(),
          run.total.memory_accesses(), analytic["memory_accesses"].get<std::uint64_t>());
    }
  }
  return 0;
}

int cmd_quantize(const QuantizeOptions& o) {
  const WeightStore weights = load_weights(o.weights);
  const WeightStore q = quantize_int8(weights);
  const auto fp32_bytes = serialize_weights(dequantize_weights(weights));
  const auto int8_bytes = serialize_weights(q);
  save_weights(q, o.out);

  Table t;
  t.columns = {{"dtype", "dtype"},
               {"tensors", "tensors"},
               {"values", "values"},
               {"file_bytes", "file bytes"},
               {"file_mb", "file MB", 2}};
  const auto tensors = static_cast<std::uint64_t>(q.entries().size());
  const auto values = static_cast<std::uint64_t>(q.element_count());
  t.add_row({std::string("fp32"), tensors, values, file_size(fp32_bytes),
             static_cast<double>(fp32_bytes.size()) / 1e6});
  t.add_row({std::string("int8"), tensors, values, file_size(int8_bytes),
             static_cast<double>(int8_bytes.size()) / 1e6});
  emit(t, o.format);
  if (o.format == Format::table) {
    std::cout << fmt::format("\nwrote {} ({:.2f} MB)\n", o.out.string(),
                             static_cast<double>(int8_bytes.size()) / 1e6);
  }
  return 0;
}

int cmd_preprocess(const PreprocessOptions& o) {
  const Clip clip = preprocess_clip(read_frame_directory(o.frames));
  save_clip(clip, o.out);
  std::cout << fmt::format("wrote {} clip to {}\n", to_string(clip.frames.shape()), o.out.string());
  return 0;
}

int cmd_energy(const EnergyOptions& o) {
  const EnergyTable table;
  const DramEnergy level = dram_from(o.dram);
  const double mj = energy_per_inference(o.flops, o.mem, table, level);
  const double co2 = co2_per_inference(mj, CarbonFactor{o.carbon});

  Table t;
  t.columns = {{"flops", "FLOPs", 0},
               {"memory_accesses", "mem accesses", 0},
               {"dram_pj", "DRAM pJ", 0},
               {"energy_mj", "energy mJ", 2},
               {"co2_mg", "CO2 mg", 2}};
  t.add_row({o.flops, o.mem, table.dram_pj(level), mj, co2});
  if (o.format == Format::json) {
    std::cout << t.to_json().at(0).dump(2) << '\n';
    return 0;
  }
  emit(t, o.format);
  return 0;
}

}  // namespace vsrcost::cli
