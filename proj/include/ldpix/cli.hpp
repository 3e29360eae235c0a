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

#ifndef LDPIX_CLI_HPP_
#define LDPIX_CLI_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldpix/verify.hpp"

namespace ldpix {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;        // everything succeeded
inline constexpr int kExitCheckFail = 1; // a statistical check failed
inline constexpr int kExitUsage = 2;     // bad arguments or I/O failure

// One parsed command line. The same struct feeds all three subcommands;
// each reads the fields it cares about.
struct RunConfig {
  double epsilon_total = 20.0;
  std::vector<double> weight_ratio = {4.0, 1.0, 1.0};  // Y:Cb:Cr
  bool weights_explicit = false;  // --weights was passed
  bool grayscale = false;         // single-channel pipeline
  bool prune = true;              // --no-ll-prune clears this
  std::optional<std::uint64_t> seed;  // fresh random when absent
  std::vector<std::string> inputs;
  std::string output_dir = ".";
  std::string report_path;  // extra merged/certification report location
  std::int64_t trials = 1000000;
  double confidence = 0.999;
  int workers = 1;  // batch worker pool size
  std::optional<PlaneOverride> inject;  // certification negative-control hook
};

// Privatizes every input image into output_dir, one privatized image and
// one JSON report per input (plus a merged report at report_path when
// set). Batch items run on `workers` threads; outputs are byte-identical
// for every worker count under a fixed seed. Per-file failures are
// reported and skipped; the final status is then kExitUsage.
int run_privatize(const RunConfig& config, std::ostream& out,
                  std::ostream& err);

// Statistical self-test at the configured budget: per-plane certification
// on a built-in synthetic image's allocation, exact worst-case TV
// spot checks against the closed-form bound, and a quality-vs-budget
// monotonicity sweep. Writes a JSON certification report and returns
// kExitCheckFail naming the failing check if any piece fails.
int run_certify(const RunConfig& config, std::ostream& out,
                std::ostream& err);

// Prints the allocation table, keep probabilities, privacy bounds, and a
// comparison against a mechanism quoted per block coefficient, as JSON.
int run_report(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ldpix

#endif  // LDPIX_CLI_HPP_
