// Copyright 2026 The ldpix Authors
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

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ldpix/cli.hpp"

namespace {

// "4:1:1" -> {4, 1, 1}; throws CLI::ValidationError on anything else.
std::vector<double> parse_weight_ratio(const std::string& text) {
  std::vector<double> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ':')) {
    try {
      std::size_t used = 0;
      const double value = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      parts.push_back(value);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--weights",
                                 "expected Y:Cb:Cr with numeric components");
    }
  }
  if (parts.size() != 3) {
    throw CLI::ValidationError("--weights", "expected exactly three components");
  }
  for (double w : parts) {
    if (!(w > 0.0)) {
      throw CLI::ValidationError("--weights", "components must be positive");
    }
  }
  return parts;
}

ldpix::PlaneOverride parse_injection(const std::string& text) {
  // channel:bit:p_keep, e.g. 0:8:0.9
  ldpix::PlaneOverride po;
  char sep1 = 0, sep2 = 0;
  std::stringstream stream(text);
  if (!(stream >> po.channel >> sep1 >> po.significance >> sep2 >>
        po.p_keep) ||
      sep1 != ':' || sep2 != ':' || !stream.eof()) {
    throw CLI::ValidationError("--inject-miscalibration",
                               "expected channel:bit:p_keep");
  }
  return po;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Per-pixel locally differentially private image publication: "
      "bit-plane randomized response with wavelet-based perceptual "
      "obfuscation and utility-weighted budget allocation."};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  ldpix::RunConfig config;
  std::string weights_text;
  std::string inject_text;

  auto add_common = [&](CLI::App* cmd, bool wants_prune) {
    cmd->add_option("--epsilon", config.epsilon_total,
                    "Total per-pixel privacy budget")
        ->capture_default_str();
    cmd->add_option("--seed", config.seed,
                    "Master seed (fresh random when omitted; always recorded "
                    "in the report)");
    cmd->add_option("--weights", weights_text,
                    "Channel weight ratio as Y:Cb:Cr (default 4:1:1)");
    cmd->add_flag("--grayscale", config.grayscale,
                  "Single-channel pipeline (converts color inputs to luma)");
    if (wants_prune) {
      cmd->add_flag(
          "--no-ll-prune",
          [&config](std::int64_t count) { config.prune = count == 0; },
          "Skip the perceptual-obfuscation stage (keep the LL band)");
    }
    cmd->add_option("--report", config.report_path,
                    "Write the JSON report to this path");
  };

  CLI::App* privatize =
      app.add_subcommand("privatize", "Privatize one or more images");
  add_common(privatize, true);
  privatize->add_option("inputs", config.inputs, "Input images (PNG/PPM/PGM)")
      ->required();
  privatize->add_option("-o,--output", config.output_dir,
                        "Output directory (created if missing)")
      ->capture_default_str();
  privatize->add_option("--workers", config.workers,
                        "Batch worker threads")
      ->capture_default_str();

  CLI::App* certify = app.add_subcommand(
      "certify", "Statistically certify the privacy guarantee");
  add_common(certify, true);
  certify->add_option("--trials", config.trials,
                      "Monte-Carlo trials per bit plane (>= 100000)")
      ->capture_default_str();
  certify->add_option("--confidence", config.confidence,
                      "Family-wise confidence level")
      ->capture_default_str();
  certify
      ->add_option("--inject-miscalibration", inject_text,
                   "Test hook: run one plane at channel:bit:p_keep instead "
                   "of its calibrated keep probability")
      ->group("");  // hidden from --help

  CLI::App* report = app.add_subcommand(
      "report", "Print allocation, flip probabilities, and privacy bounds");
  add_common(report, true);

  try {
    app.parse(argc, argv);
    if (!weights_text.empty()) {
      config.weight_ratio = parse_weight_ratio(weights_text);
      config.weights_explicit = true;
    }
    if (!inject_text.empty()) {
      config.inject = parse_injection(inject_text);
    }
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    app.exit(e);
    return ldpix::kExitUsage;
  }

  if (config.grayscale && config.weights_explicit) {
    std::cerr << "error: --grayscale and --weights are mutually exclusive\n";
    return ldpix::kExitUsage;
  }

  if (privatize->parsed()) {
    return ldpix::run_privatize(config, std::cout, std::cerr);
  }
  if (certify->parsed()) {
    return ldpix::run_certify(config, std::cout, std::cerr);
  }
  return ldpix::run_report(config, std::cout, std::cerr);
}
