// Copyright 2026 The qrep Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrep/bounds.hpp"
#include "qrep/posver.hpp"
#include "qrep/qudit.hpp"
#include "qrep/timeline.hpp"

namespace qrep {

/// Config problem; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class Command { simulate, timeline, optimize, bounds, posver, decompose, report };
enum class OutputFormat { human, records, csv };

std::string_view to_string(Command c);
std::string_view to_string(OutputFormat f);

struct RunConfig {
  Command command = Command::report;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::human;
  std::optional<std::string> svg_path;

  // timeline
  std::optional<ProtocolVariant> variant;
  std::vector<Rational> notify_offsets;
  CostParams cost;

  // simulate, decompose
  std::string protocol = "all";
  std::string gate;
  std::string unitary_path;
  std::string input_path;
  std::vector<int> dims = {2, 2};
  int trials = 20;

  // optimize
  std::string family;
  int n = -1;
  OptMethod method = OptMethod::exact;
  int grid_q = 1000;

  // bounds
  bool table = true;

  // posver
  std::string mode = "two";
  Geometry2D geometry;
  int repeaters = 3;  // -1 for unbounded
  bool exact = true;
  bool capacity_condition = false;

  bool operator==(const RunConfig&) const = default;
};

/// Parses `key = value` lines; '#' starts a comment. Rationals are exact
/// ("1/5" or "0.2"); lists use [a, b]; points use (x, y). Unknown keys,
/// malformed values and unknown variants throw ConfigError with the line.
RunConfig parse_config(std::string_view document);
/// Applies further `key = value` pairs on top of an existing config.
void apply_config(RunConfig& cfg, std::string_view document);
/// Canonical document that parse_config maps back to `cfg`.
std::string emit_config(const RunConfig& cfg);

/// Keys accepted by parse_config.
const std::vector<std::string>& config_keys();

/// Exit status: 0 success, 1 verification failure, 2 config error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Matrix or state file: `dims = [..]`, `rows`, `cols` and
/// `entries = [(re, im), ...]` in row-major, little-endian order. A state is
/// a single column. Entries may span lines; '#' starts a comment.
struct MatrixDocument {
  std::vector<int> dims;
  ComplexMatrix matrix;
};

MatrixDocument parse_matrix_text(std::string_view text);
MatrixDocument read_matrix_file(const std::string& path);
std::string emit_matrix_text(const MatrixDocument& doc);

}  // namespace qrep
