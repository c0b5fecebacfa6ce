// Copyright (c) 2026 The dce-bands authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end: configuration layering (preset, then config file,
// then flags), dispatch, atomic artifact writes and a one-line JSON summary.

#include "dce/oracle.hpp"
#include "dce/params.hpp"
#include "dce/spectrum.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dce::cli {

  enum class Command { spectrum, rates, toy, oracle_check, params_audit };
  enum class Format { csv, json };

  const char *to_string(Command c);
  Command command_from_string(const std::string &name);

  /// Parameters as the user wrote them (drive frequency in Hz).
  struct ParamInputs {
    double gamma0_len = 0.0;
    double omega0_hz = 0.0;
    double epsilon = 0.0;
    double tau = 0.0;
    double v = 0.0;
    int order = 0;
    Gamma0Sign sign = Gamma0Sign::positive;

    PhysicalParams physical() const;
  };

  ParamInputs preset(const std::string &name);

  /// Grid bounds in units of omega0; an unset grid means the default grid.
  struct GridSpec {
    std::optional<double> min;
    std::optional<double> max;
    std::optional<int> count;
  };

  struct RunConfig {
    Command command = Command::spectrum;
    ParamInputs params;
    GridSpec grid;
    std::optional<std::string> preset_name;
    std::string output; // empty: <command>.<ext> in the working directory
    Format format = Format::csv;
    RateConvention convention;
    std::vector<double> oracle_points;     // units of omega0
    std::vector<double> oracle_omega0_tau; // finite-tau values to check
    QuadSpec quad;
  };

  /// Flat key = value settings, from a text file or a JSON object (a nested
  /// "params" object is read as a fragment).
  std::map<std::string, std::string> read_config_file(const std::string &path);

  /// Thrown by parse for --help and --version.
  struct HelpRequest {
    std::string text;
  };

  /// Builds a validated configuration. Throws ValidationError.
  RunConfig parse(int argc, const char *const *argv);

  /// FNV-1a over the canonical parameter record.
  std::string params_digest(const ParamInputs &p);
  nlohmann::json params_json(const ParamInputs &p);

  std::vector<double> grid_for(const RunConfig &config, double omega0);

  /// CSV with one Np_over_tau column per order present.
  std::string to_csv(const SpectralResult &r);

  /// Writes through a temporary file and renames it into place.
  void write_atomic(const std::string &path, const std::string &content);

  /// Runs one command; returns the exit status. Summary goes to out, errors to err.
  int run(const RunConfig &config, std::ostream &out, std::ostream &err);

  /// parse + run with exit-status mapping: 0 ok, 1 validation, 2 numerical.
  int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace dce::cli
