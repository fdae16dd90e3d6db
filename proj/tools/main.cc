#include <CLI11.hpp>

#include <iostream>

#include "commands.h"
#include "vsrcost/errors.h"

namespace {

using vsrcost::cli::Format;

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

void add_format(CLI::App* cmd, Format& format) {
  cmd->add_option_function<std::string>(
         "--format",
         [&format](const std::string& name) {
           format = name == "json" ? Format::json : name == "csv" ? Format::csv : Format::table;
         },
         "Output format")
      ->transform(CLI::IsMember({"table", "json", "csv"}, CLI::ignore_case))
      ->option_text("TEXT:{table,json,csv} [table]");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = vsrcost::cli;
  CLI::App app{"Cost, energy and inference tooling for MobiVSR lip-reading networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "vsrcost 0.1.0");

  cli::BuildOptions build;
  auto* c_build = app.add_subcommand("build", "Write the MobiVSR graph for a given alpha");
  c_build->add_option("--alpha", build.alpha, "LipRes blocks per subgraph")
      ->required()
      ->check(CLI::Range(1, 1000));
  c_build->add_option("--plan", build.plan, "Channel plan name (default: calibrated plan)");
  c_build->add_option("--out", build.out, "Output graph JSON")->required();

  cli::InitWeightsOptions init;
  auto* c_init = app.add_subcommand("init-weights", "Seeded random weights for a graph");
  c_init->add_option("graph", init.graph, "Graph JSON")->required();
  c_init->add_option("--seed", init.seed, "RNG seed")->capture_default_str();
  c_init->add_option("--out", init.out, "Output weights file")->required();

  cli::ReportOptions report;
  auto* c_report = app.add_subcommand("report", "Per-layer and total costs, energy and CO2");
  c_report->add_option("graph", report.graph, "Graph JSON")->required();
  c_report->add_option("--dtype", report.dtype, "Weight type for the size column")
      ->check(CLI::IsMember({"fp32", "int8"}))
      ->capture_default_str();
  add_format(c_report, report.format);

  cli::CompareOptions compare;
  auto* c_compare = app.add_subcommand("compare", "Compare MobiVSR variants with published models");
  c_compare->add_option("--alphas", compare.alphas, "Comma-separated alpha values (may be empty)")
      ->capture_default_str();
  c_compare->add_flag("--presets,!--no-presets", compare.presets,
                      "Include the published comparison models (default on)");
  c_compare->add_option("--dtype", compare.dtype, "Weight type for the size column")
      ->check(CLI::IsMember({"fp32", "int8"}))
      ->capture_default_str();
  add_format(c_compare, compare.format);

  cli::InferOptions infer;
  auto* c_infer = app.add_subcommand("infer", "Run the reference forward pass on a clip");
  c_infer->add_option("graph", infer.graph, "Graph JSON")->required();
  c_infer->add_option("weights", infer.weights, "Weights file")->required();
  c_infer->add_option("input", infer.input, "Frame directory or preprocessed clip file")->required();
  c_infer->add_flag("--counted", infer.counted, "Run in counting mode and print the ledger");
  c_infer->add_option("--top-k", infer.top_k, "Number of classes to print")
      ->check(CLI::Range(1, 100000))
      ->capture_default_str();
  c_infer->add_option("--labels", infer.labels, "Text file with one class label per line");
  add_format(c_infer, infer.format);

  cli::QuantizeOptions quantize;
  auto* c_quant = app.add_subcommand("quantize", "Per-tensor int8 post-training quantization");
  c_quant->add_option("weights", quantize.weights, "fp32 weights file")->required();
  c_quant->add_option("--out", quantize.out, "Output int8 weights file")->required();
  add_format(c_quant, quantize.format);

  cli::PreprocessOptions prep;
  auto* c_prep = app.add_subcommand("preprocess", "Crop and convert 29 frames into a clip file");
  c_prep->add_option("frames", prep.frames, "Directory of 29 PPM or raw RGB frames")->required();
  c_prep->add_option("--out", prep.out, "Output clip file")->required();

  cli::EnergyOptions energy;
  auto* c_energy = app.add_subcommand("energy", "Energy and CO2 per inference");
  c_energy->add_option("--flops", energy.flops, "Floating-point operations")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_energy->add_option("--mem", energy.mem, "Memory accesses")
      ->required()
      ->check(CLI::NonNegativeNumber);
  c_energy->add_option("--dram", energy.dram, "DRAM energy level: low, midpoint or high")
      ->check(CLI::IsMember({"low", "midpoint", "high"}))
      ->capture_default_str();
  c_energy->add_option("--carbon", energy.carbon, "CO2 milligrams per millijoule")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_format(c_energy, energy.format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*c_build) return cli::cmd_build(build);
    if (*c_init) return cli::cmd_init_weights(init);
    if (*c_report) return cli::cmd_report(report);
    if (*c_compare) return cli::cmd_compare(compare);
    if (*c_infer) return cli::cmd_infer(infer);
    if (*c_quant) return cli::cmd_quantize(quantize);
    if (*c_prep) return cli::cmd_preprocess(prep);
    if (*c_energy) return cli::cmd_energy(energy);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const vsrcost::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const vsrcost::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}
