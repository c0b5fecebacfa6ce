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

#include "dce/cli.hpp"

#include "dce/errors.hpp"
#include "dce/recurrence.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <unistd.h>

namespace dce::cli {

  namespace {

    using nlohmann::json;
    using std::numbers::pi;

    constexpr Command kCommands[] = {Command::spectrum, Command::rates, Command::toy, Command::oracle_check,
                                     Command::params_audit};

    struct Key {
      const char *name;
      const char *flags;
      const char *help;
    };

    // Settings accepted from files and flags alike.
    constexpr Key kKeys[] = {
        {"preset", "--preset", "parameter preset (squid)"},
        {"gamma0_len", "--gamma0-len,--gamma0_len", "static Robin length [m]"},
        {"omega0_hz", "--omega0-hz,--omega0_hz", "drive frequency [Hz]"},
        {"epsilon", "--epsilon", "drive amplitude, 0 < epsilon < 1"},
        {"tau", "--tau", "envelope decay time [s]"},
        {"v", "--v", "waveguide light speed [m/s]"},
        {"order", "--order,-N", "perturbative order N"},
        {"sign", "--sign", "sign of gamma0: + or -"},
        {"grid_min", "--grid-min,--grid_min", "first grid frequency [omega0]"},
        {"grid_max", "--grid-max,--grid_max", "last grid frequency [omega0]"},
        {"grid_count", "--grid-count,--grid_count", "number of grid points"},
        {"output", "--output,-o", "artifact path"},
        {"format", "--format", "csv or json"},
        {"measure_divisor", "--measure-divisor,--measure_divisor", "rate = int N dw / divisor (2 pi for cyclic)"},
        {"per_tau", "--per-tau,--per_tau", "true: rate per tau; false: number per pulse"},
        {"points", "--points", "oracle frequencies, comma separated [omega0]"},
        {"omega0_tau", "--omega0-tau,--omega0_tau", "oracle omega0 * tau values, comma separated"},
        {"rel_tol", "--rel-tol,--rel_tol", "oracle relative tolerance"},
    };

    bool known_key(const std::string &k) {
      return std::any_of(std::begin(kKeys), std::end(kKeys), [&](const Key &key) { return k == key.name; });
    }

    std::string trim(const std::string &s) {
      const auto a = s.find_first_not_of(" \t\r\n");
      if (a == std::string::npos)
        return "";
      const auto b = s.find_last_not_of(" \t\r\n");
      return s.substr(a, b - a + 1);
    }

    double to_double(const std::string &key, const std::string &text) {
      try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size())
          return v;
      } catch (const std::exception &) {
      }
      throw ValidationError(key, "expected a number, got '" + text + "'");
    }

    int to_int(const std::string &key, const std::string &text) {
      try {
        std::size_t used = 0;
        const long v = std::stol(text, &used);
        if (used == text.size() && v >= INT32_MIN && v <= INT32_MAX)
          return static_cast<int>(v);
      } catch (const std::exception &) {
      }
      throw ValidationError(key, "expected an integer, got '" + text + "'");
    }

    bool to_bool(const std::string &key, const std::string &text) {
      if (text == "true" || text == "1" || text == "yes")
        return true;
      if (text == "false" || text == "0" || text == "no")
        return false;
      throw ValidationError(key, "expected true or false, got '" + text + "'");
    }

    std::vector<double> to_list(const std::string &key, const std::string &text) {
      std::vector<double> out;
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ','))
        out.push_back(to_double(key, trim(item)));
      if (out.empty())
        throw ValidationError(key, "empty list");
      return out;
    }

    Gamma0Sign to_sign(const std::string &text) {
      if (text == "+" || text == "positive")
        return Gamma0Sign::positive;
      if (text == "-" || text == "negative")
        return Gamma0Sign::negative;
      throw ValidationError("sign", "expected + or -, got '" + text + "'");
    }

    std::string scalar_text(const json &v) {
      if (v.is_string())
        return v.get<std::string>();
      if (v.is_array()) {
        std::string s;
        for (const auto &x : v)
          s += (s.empty() ? "" : ",") + x.dump();
        return s;
      }
      return v.dump();
    }

    std::string number(double v) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      return buf;
    }

    std::string extension(Format f) { return f == Format::csv ? "csv" : "json"; }

    std::string output_path(const RunConfig &c) {
      if (!c.output.empty())
        return c.output;
      return std::string(to_string(c.command)) + "." + extension(c.format);
    }

    void emit_summary(std::ostream &out, const RunConfig &c, const std::string &path, json headline) {
      json s{{"command", to_string(c.command)},
             {"status", "ok"},
             {"params_digest", params_digest(c.params)},
             {"output", path}};
      s.update(headline);
      out << s.dump() << '\n';
    }

    json spectrum_headline(const SpectralResult &r) {
      const auto t = r.total();
      const auto it = std::max_element(t.begin(), t.end());
      const auto i = static_cast<std::size_t>(it - t.begin());
      return {{"points", r.grid.size()},
              {"max_total_over_tau", *it},
              {"argmax_omega_over_omega0", r.grid[i] / r.params.omega0()}};
    }

    std::string spectrum_artifact(const RunConfig &c, const SpectralResult &r) {
      if (c.format == Format::csv)
        return to_csv(r);
      json j = to_json(r);
      j["params"] = params_json(c.params);
      j["params_digest"] = params_digest(c.params);
      return j.dump(2) + "\n";
    }

    void require_json(const RunConfig &c) {
      if (c.format != Format::json)
        throw ValidationError("format", std::string(to_string(c.command)) + " writes JSON only");
    }

  } // namespace

  const char *to_string(Command c) {
    switch (c) {
    case Command::spectrum:
      return "spectrum";
    case Command::rates:
      return "rates";
    case Command::toy:
      return "toy";
    case Command::oracle_check:
      return "oracle-check";
    case Command::params_audit:
      return "params-audit";
    }
    return "?";
  }

  Command command_from_string(const std::string &name) {
    for (auto c : kCommands)
      if (name == to_string(c))
        return c;
    throw ValidationError("command", "unknown command '" + name + "'");
  }

  PhysicalParams ParamInputs::physical() const {
    PhysicalParams p;
    p.gamma0_len = gamma0_len;
    p.omega0 = 2.0 * pi * omega0_hz;
    p.epsilon = epsilon;
    p.tau = tau;
    p.v = v;
    p.order = order;
    return p;
  }

  ParamInputs preset(const std::string &name) {
    if (name != "squid")
      throw ValidationError("preset", "unknown preset '" + name + "' (available: squid)");
    const auto p = squid_preset();
    return {p.gamma0_len, p.omega0 / (2.0 * pi), p.epsilon, p.tau, p.v, p.order, Gamma0Sign::positive};
  }

  std::map<std::string, std::string> read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
      throw ValidationError("config", "cannot read '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    std::map<std::string, std::string> kv;

    if (trim(text).starts_with("{")) {
      json j;
      try {
        j = json::parse(text);
      } catch (const json::exception &e) {
        throw ValidationError("config", path + ": " + e.what());
      }
      const json &flat = j.contains("params") ? j.at("params") : j;
      if (!flat.is_object())
        throw ValidationError("config", path + ": expected an object");
      for (const auto &[k, v] : flat.items())
        kv[k] = scalar_text(v);
    } else {
      std::istringstream lines(text);
      std::string line;
      int number = 0;
      while (std::getline(lines, line)) {
        ++number;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
          line.erase(hash);
        line = trim(line);
        if (line.empty())
          continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
          throw ValidationError("config", path + ":" + std::to_string(number) + ": expected key = value");
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
      }
    }
    for (const auto &[k, v] : kv)
      if (!known_key(k))
        throw ValidationError(k, "unknown configuration key in " + path);
    return kv;
  }

  RunConfig parse(int argc, const char *const *argv) {
    CLI::App app{"Particle creation spectra for a periodically driven Robin boundary"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "dce-bands 1.0");

    std::string config_path;
    app.add_option("--config,-c", config_path, "key = value or JSON settings file");
    std::map<std::string, std::string> flags;
    std::map<std::string, CLI::Option *> options;
    for (const auto &k : kKeys)
      options[k.name] = app.add_option(k.flags, flags[k.name], k.help);

    for (auto c : kCommands) {
      const char *help = "";
      switch (c) {
      case Command::spectrum:
        help = "N_p(w) / tau on a frequency grid";
        break;
      case Command::rates:
        help = "band and total creation rates";
        break;
      case Command::toy:
        help = "spectrum with gamma(t) = gamma0 [1 + eps f(t)], order 3";
        break;
      case Command::oracle_check:
        help = "monochromatic limit against finite-tau quadrature";
        break;
      case Command::params_audit:
        help = "natural-unit parameters and normalization record";
        break;
      }
      app.add_subcommand(to_string(c), help)->fallthrough();
    }

    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
      throw HelpRequest{app.help()};
    } catch (const CLI::CallForAllHelp &) {
      throw HelpRequest{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::CallForVersion &) {
      throw HelpRequest{app.version() + "\n"};
    } catch (const CLI::ParseError &e) {
      throw ValidationError("arguments", e.what());
    }

    std::map<std::string, std::string> kv;
    if (!config_path.empty())
      kv = read_config_file(config_path);
    for (const auto &[k, opt] : options)
      if (opt->count() > 0)
        kv[k] = flags[k];

    RunConfig c;
    c.command = command_from_string(app.get_subcommands().front()->get_name());
    if (kv.count("preset")) {
      c.preset_name = kv["preset"];
      c.params = preset(*c.preset_name);
    }
    auto &p = c.params;
    for (const auto &[k, v] : kv) {
      if (k == "gamma0_len")
        p.gamma0_len = to_double(k, v);
      else if (k == "omega0_hz")
        p.omega0_hz = to_double(k, v);
      else if (k == "epsilon")
        p.epsilon = to_double(k, v);
      else if (k == "tau")
        p.tau = to_double(k, v);
      else if (k == "v")
        p.v = to_double(k, v);
      else if (k == "order")
        p.order = to_int(k, v);
      else if (k == "sign")
        p.sign = to_sign(v);
      else if (k == "grid_min")
        c.grid.min = to_double(k, v);
      else if (k == "grid_max")
        c.grid.max = to_double(k, v);
      else if (k == "grid_count")
        c.grid.count = to_int(k, v);
      else if (k == "output")
        c.output = v;
      else if (k == "format") {
        if (v == "csv")
          c.format = Format::csv;
        else if (v == "json")
          c.format = Format::json;
        else
          throw ValidationError(k, "expected csv or json, got '" + v + "'");
      } else if (k == "measure_divisor")
        c.convention.measure_divisor = to_double(k, v);
      else if (k == "per_tau")
        c.convention.per_tau = to_bool(k, v);
      else if (k == "points")
        c.oracle_points = to_list(k, v);
      else if (k == "omega0_tau")
        c.oracle_omega0_tau = to_list(k, v);
      else if (k == "rel_tol")
        c.quad.rel_tol = to_double(k, v);
    }
    if (!kv.count("format") && c.command != Command::spectrum && c.command != Command::toy)
      c.format = Format::json;

    validate(p.physical());
    if (!(c.convention.measure_divisor > 0.0) || !std::isfinite(c.convention.measure_divisor))
      throw ValidationError("measure_divisor", "must be finite and > 0");
    c.quad.validate();
    if (c.grid.count && *c.grid.count < 2)
      throw ValidationError("grid_count", "must be >= 2");
    if (c.oracle_points.empty())
      c.oracle_points = {0.15, 0.3, 0.45, 0.6, 0.75, 0.9, 1.15, 1.3, 1.45, 1.6};
    if (c.oracle_omega0_tau.empty())
      c.oracle_omega0_tau = {2000.0};
    for (double x : c.oracle_omega0_tau)
      if (!(x > 0.0))
        throw ValidationError("omega0_tau", "values must be > 0");
    return c;
  }

  std::string params_digest(const ParamInputs &p) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "gamma0_len=%.17g;omega0_hz=%.17g;epsilon=%.17g;tau=%.17g;v=%.17g;order=%d;sign=%c",
                  p.gamma0_len, p.omega0_hz, p.epsilon, p.tau, p.v, p.order,
                  p.sign == Gamma0Sign::negative ? '-' : '+');
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char *s = buf; *s; ++s) {
      h ^= static_cast<unsigned char>(*s);
      h *= 0x100000001b3ULL;
    }
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return hex;
  }

  json params_json(const ParamInputs &p) {
    return {{"gamma0_len", p.gamma0_len},
            {"omega0_hz", p.omega0_hz},
            {"epsilon", p.epsilon},
            {"tau", p.tau},
            {"v", p.v},
            {"order", p.order},
            {"sign", p.sign == Gamma0Sign::negative ? "-" : "+"}};
  }

  std::vector<double> grid_for(const RunConfig &c, double omega0) {
    const double upper = std::max(2.05, (c.params.order + 1) / 2 + 0.05);
    const auto &g = c.grid;
    if (!g.min && !g.max && !g.count)
      return default_grid(omega0, upper);
    const double lo = g.min.value_or(1.0 / 400.0);
    const double hi = g.max.value_or(upper);
    if (!(lo > 0.0) || !(hi > lo))
      throw ValidationError("grid", "need 0 < grid_min < grid_max");
    const int n = g.count.value_or(static_cast<int>(std::lround((hi - lo) * 400.0)) + 1);
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
      out[i] = omega0 * (i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1));
    return out;
  }

  std::string to_csv(const SpectralResult &r) {
    std::string s = "omega,omega_over_omega0";
    for (const auto &[p, values] : r.per_order)
      s += ",N" + std::to_string(p) + "_over_tau";
    s += ",total_over_tau\n";
    const auto total = r.total();
    for (std::size_t i = 0; i < r.grid.size(); ++i) {
      s += number(r.grid[i]) + "," + number(r.grid[i] / r.params.omega0());
      for (const auto &[p, values] : r.per_order)
        s += "," + number(values[i]);
      s += "," + number(total[i]) + "\n";
    }
    return s;
  }

  void write_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out)
        throw ValidationError("output", "cannot write '" + tmp.string() + "'");
      out << content;
      out.close();
      if (!out)
        throw ValidationError("output", "write failed for '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
      fs::remove(tmp, ec);
      throw ValidationError("output", "cannot move result to '" + path + "'");
    }
  }

  int run(const RunConfig &c, std::ostream &out, std::ostream &) {
    const auto phys = c.params.physical();
    const auto np = to_natural(phys, c.params.sign);
    const auto path = output_path(c);

    switch (c.command) {
    case Command::spectrum:
    case Command::toy: {
      const auto grid = grid_for(c, np.omega0());
      const auto r = c.command == Command::toy ? dirichlet_toy(np, grid) : spectral_density(np, grid, np.order());
      write_atomic(path, spectrum_artifact(c, r));
      emit_summary(out, c, path, spectrum_headline(r));
      return 0;
    }
    case Command::rates: {
      require_json(c);
      const auto grid = grid_for(c, np.omega0());
      const auto r = spectral_density(np, grid, np.order());
      const auto rep = photon_rate(r, c.convention);
      json j = to_json(rep);
      j["params"] = params_json(c.params);
      j["params_digest"] = params_digest(c.params);
      j["normalization_tag"] = r.normalization_tag;
      j["order"] = np.order();
      write_atomic(path, j.dump(2) + "\n");
      emit_summary(out, c, path,
                   {{"total_rate", rep.total_rate},
                    {"enhancement", rep.enhancement},
                    {"band_fractions", rep.band_fractions},
                    {"convention", rep.convention.describe()}});
      return 0;
    }
    case Command::oracle_check: {
      require_json(c);
      json rows = json::array();
      double worst = 0.0;
      for (double wt : c.oracle_omega0_tau) {
        const auto p = np.with_tau(wt / np.omega0());
        for (double x : c.oracle_points) {
          const double w = x * np.omega0();
          const std::vector<double> g{w};
          const double mono = spectral_density(p, g, np.order()).total()[0];
          const auto o = finite_tau_spectrum(w, p, np.order(), c.quad);
          json row{{"omega", w},       {"omega_over_omega0", x}, {"omega0_tau", wt},
                   {"mono", mono},     {"oracle", o.value},      {"estimate", o.error}};
          if (mono != 0.0) {
            const double rel = std::abs(o.value - mono) / std::abs(mono);
            row["rel_error"] = rel;
            worst = std::max(worst, rel);
          } else
            row["rel_error"] = nullptr;
          rows.push_back(row);
        }
      }
      json j{{"params", params_json(c.params)}, {"params_digest", params_digest(c.params)}, {"rows", rows}};
      write_atomic(path, j.dump(2) + "\n");
      emit_summary(out, c, path, {{"rows", rows.size()}, {"max_rel_error", worst}});
      return 0;
    }
    case Command::params_audit: {
      require_json(c);
      json counts = json::array();
      const auto chain = build_all(np, DriveModel(DriveProfile(np)), np.order());
      for (const auto &g : chain)
        counts.push_back(g.terms.size());
      bool mono = true;
      try {
        require_monochromatic(np);
      } catch (const ValidationError &) {
        mono = false;
      }
      json j{{"params", params_json(c.params)},
             {"params_digest", params_digest(c.params)},
             {"natural",
              {{"gamma0", np.gamma0()},
               {"signed_gamma0", np.signed_gamma0()},
               {"omega0", np.omega0()},
               {"tau", np.tau()},
               {"gamma0_omega0", np.gamma0_omega0()},
               {"omega0_tau", np.omega0_tau()},
               {"monochromatic", mono}}},
             {"normalization_tag", kNormalizationTag},
             {"normalization", kSpectralNormalization},
             {"rate_convention", c.convention.describe()},
             {"term_counts", counts}};
      write_atomic(path, j.dump(2) + "\n");
      emit_summary(out, c, path, {{"gamma0_omega0", np.gamma0_omega0()}, {"omega0_tau", np.omega0_tau()}});
      return 0;
    }
    }
    return 1;
  }

  int main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    try {
      const auto config = parse(argc, argv);
      return run(config, out, err);
    } catch (const HelpRequest &h) {
      out << h.text;
      return 0;
    } catch (const ValidationError &e) {
      err << "error: " << e.what() << '\n';
      return 1;
    } catch (const NumericalError &e) {
      err << "numerical error: " << e.what() << '\n';
      return 2;
    } catch (const std::exception &e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  }

} // namespace dce::cli
