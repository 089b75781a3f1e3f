#pragma once

// Command-line front end. Exit codes: 0 ok, 2 usage or malformed input,
// 3 validation failure, 4 separability hypothesis failure (and failed audits).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wtangle/audit.hpp"
#include "wtangle/json_io.hpp"
#include "wtangle/measures.hpp"
#include "wtangle/separability.hpp"
#include "wtangle/states.hpp"
#include "wtangle/sweep.hpp"

namespace wtangle::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kValidation = 3, kHypothesis = 4 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidZ:
      return kUsage;
    case ErrorCode::CoherencesNotZero:
      return kHypothesis;
    default:
      return kValidation;
  }
}

namespace detail {

inline complex parse_complex(const std::string& text) {
  // "re", "re:im"
  try {
    const auto colon = text.find(':');
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const double im = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {re, im};
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "cannot parse number '" + text + "'");
  }
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

inline io::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  try {
    return io::json::parse(in);
  } catch (const io::json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

struct StateFlags {
  std::string state_file;
  int n = 0;
  std::string symmetric_a;
  std::string asymmetric_k;
  int cap = kDefaultFullSpaceCap;

  void attach(CLI::App& cmd) {
    cmd.add_option("--state", state_file, "state JSON file (compact or full)");
    cmd.add_option("--n", n, "qubit count for the builder flags");
    cmd.add_option("--symmetric-a", symmetric_a, "build (a|0..0> + sum e_i)/norm; a as re or re:im");
    cmd.add_option("--asymmetric-k", asymmetric_k, "build sum k_i e_i; comma separated, entries re or re:im");
    cmd.add_option("--cap", cap, "full-space qubit limit")->capture_default_str();
  }

  io::StateInput resolve() const {
    const int sources = !state_file.empty() + !symmetric_a.empty() + !asymmetric_k.empty();
    if (sources != 1)
      throw Error(ErrorCode::ParseError, "give exactly one of --state, --symmetric-a, --asymmetric-k");
    if (!state_file.empty()) return io::state_input_from_json(read_json_file(state_file), cap);
    if (n == 0) throw Error(ErrorCode::ParseError, "builder flags need --n");
    if (!symmetric_a.empty()) return states::build_symmetric(n, parse_complex(symmetric_a));
    std::vector<complex> k;
    for (const auto& tok : split(asymmetric_k, ',')) k.push_back(parse_complex(tok));
    return states::build_asymmetric(n, k);
  }
};

struct ZFlags {
  std::string preset;
  std::optional<double> z;
  std::string pi_preset;
  std::optional<double> z_pi;

  void attach(CLI::App& cmd) {
    auto* p = cmd.add_option("--z-preset", preset, "three-qubit | large-n-two-tangle | large-n-pi");
    auto* v = cmd.add_option("--z", z, "normalization constant for the sums");
    p->excludes(v);
    auto* pp = cmd.add_option("--z-pi-preset", pi_preset, "separate preset for the sum of pi-tangles");
    auto* pv = cmd.add_option("--z-pi", z_pi, "separate constant for the sum of pi-tangles");
    pp->excludes(pv);
  }

  double two(double fallback = 1.0) const {
    if (!preset.empty()) return measures::z_preset(preset);
    return z.value_or(fallback);
  }

  double pi(double fallback = 1.0) const {
    if (!pi_preset.empty()) return measures::z_preset(pi_preset);
    if (z_pi) return *z_pi;
    if (!preset.empty() || z) return two();
    return fallback;
  }
};

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("WTANGLE_SEED")) {
    try {
      std::size_t used = 0;
      const std::string s(env);
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, std::string("WTANGLE_SEED is not a 64-bit integer: ") + env);
    }
  }
  return 0;
}

/// Writes through a temporary file so a failure never leaves partial output.
template <class Writer>
void write_atomically(const std::string& path, Writer&& writer) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".partial";
  try {
    {
      std::ofstream os(tmp);
      if (!os) throw Error(ErrorCode::ParseError, "cannot write '" + tmp.string() + "'");
      writer(os);
      if (!os) throw Error(ErrorCode::ParseError, "write to '" + tmp.string() + "' failed");
    }
    std::filesystem::rename(tmp, target);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

inline void print_table(std::ostream& out, const MeasureReport& r) {
  out << std::setprecision(12);
  out << "n = " << r.n << "\n\npair      concurrence       negativity\n";
  for (const auto& [k, c] : r.pair_concurrence)
    out << "(" << k.first << "," << k.second << ")    " << std::setw(16) << c << "  " << std::setw(16)
        << r.pair_negativity.at(k) << "\n";
  out << "\npivot     pi_tangle         one_tangle\n";
  for (const auto& [q, v] : r.pi_tangle) {
    out << q << "         " << std::setw(16) << v << "  ";
    if (r.one_tangle) out << std::setw(16) << r.one_tangle->at(q);
    else out << std::setw(16) << "-";
    out << "\n";
  }
  out << "\nsum_two_tangles = " << r.sum_two_tangles << "   (Z = " << r.Z_two << ")\n";
  out << "sum_pi_tangles  = " << r.sum_pi_tangles << "   (Z = " << r.Z_pi << ")\n";
}

inline void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
    return;
  }
  write_atomically(path, [&](std::ostream& os) { os << text; });
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement measures and separability certificates for W-class states", "wtangle"};
  app.require_subcommand(1);
  double tol = kDefaultTol;
  app.add_option("--tol", tol, "numerical tolerance")->capture_default_str();

  // measure
  auto* measure = app.add_subcommand("measure", "concurrences, negativities, tangles and their sums");
  detail::StateFlags m_state;
  detail::ZFlags m_z;
  std::string m_format = "json";
  std::string m_out;
  m_state.attach(*measure);
  m_z.attach(*measure);
  measure->add_option("--format", m_format, "json | table")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  measure->add_option("--out", m_out, "write the report here instead of stdout");
  measure->add_option("--tol", tol, "numerical tolerance");

  // certify
  auto* certify = app.add_subcommand("certify", "separable decomposition of a zero-coherence state");
  std::string c_state;
  double c_tol = kDefaultTol;
  std::string c_out;
  certify->add_option("--state", c_state, "state JSON file")->required();
  certify->add_option("--coherence-tol", c_tol, "largest accepted |B_sr|")->capture_default_str();
  certify->add_option("--out", c_out, "write the certificate here instead of stdout");

  // audit
  auto* audit = app.add_subcommand("audit", "randomized check of zero-coherence separability");
  std::size_t a_samples = 1000;
  int a_n = 3;
  std::optional<std::uint64_t> a_seed;
  int a_cap = kDefaultFullSpaceCap;
  unsigned a_threads = 0;
  std::string a_out;
  audit->add_option("--samples", a_samples, "number of sampled states")->capture_default_str();
  audit->add_option("--n", a_n, "qubit count")->capture_default_str();
  audit->add_option("--seed", a_seed, "master seed (falls back to WTANGLE_SEED)");
  audit->add_option("--cap", a_cap, "full-space qubit limit for cross-checks")->capture_default_str();
  audit->add_option("--threads", a_threads, "worker threads (0 = hardware)");
  audit->add_option("--out", a_out, "write the JSON summary, including failing states, here");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV data for parameter sweeps");
  std::string s_kind = "fig1-grid";
  std::optional<int> s_resolution;
  int s_nmin = 3, s_nmax = 100;
  detail::ZFlags s_z;
  detail::StateFlags s_state;
  std::string s_out, s_gnuplot;
  sweep_cmd->add_option("--kind", s_kind, "fig1-grid | fig2-n-scan | dephase-scan")
      ->check(CLI::IsMember({"fig1-grid", "fig2-n-scan", "dephase-scan"}))
      ->capture_default_str();
  sweep_cmd->add_option("--resolution", s_resolution, "grid points per axis (default 201) or strength steps (default 11)");
  sweep_cmd->add_option("--n-min", s_nmin, "fig2-n-scan lower n")->capture_default_str();
  sweep_cmd->add_option("--n-max", s_nmax, "fig2-n-scan upper n")->capture_default_str();
  s_z.attach(*sweep_cmd);
  s_state.attach(*sweep_cmd);
  sweep_cmd->add_option("--out", s_out, "CSV path (stdout when absent)");
  sweep_cmd->add_option("--gnuplot", s_gnuplot, "also write a gnuplot script here");

  // closed-form
  auto* closed = app.add_subcommand("closed-form", "analytic values for the maximally entangled n-qubit W state");
  int cf_n = 3;
  detail::ZFlags cf_z;
  closed->add_option("--n", cf_n, "qubit count")->required();
  cf_z.attach(*closed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*measure) {
      const auto input = m_state.resolve();
      const double z_two = m_z.two(), z_pi = m_z.pi();
      const MeasureReport rep = std::visit(
          [&](const auto& s) { return measures::measure_report(s, z_two, z_pi, tol); }, input);
      std::ostringstream os;
      if (m_format == "table") detail::print_table(os, rep);
      else os << io::to_json(rep).dump(2) << "\n";
      detail::emit(out, m_out, os.str());
      return kOk;
    }

    if (*certify) {
      const auto state = io::state_from_json(detail::read_json_file(c_state));
      try {
        const auto cert = separability::certify(state, c_tol);
        detail::emit(out, c_out, io::to_json(cert).dump(2) + "\n");
        return kOk;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CoherencesNotZero) throw;
        io::json j{{"error", "CoherencesNotZero"}, {"detail", e.what()},
                   {"max_coherence", state.max_coherence()}, {"coherence_tol", c_tol}};
        out << j.dump(2) << "\n";
        err << e.what() << "\n";
        return kHypothesis;
      }
    }

    if (*audit) {
      const auto seed = detail::resolve_seed(a_seed);
      const auto rep = separability::audit_theorem(a_samples, a_n, seed, a_cap, a_threads, {}, tol);
      const auto text = io::to_json(rep).dump(2) + "\n";
      if (!a_out.empty()) detail::emit(out, a_out, text);
      out << text;
      err << rep.passes << "/" << rep.samples << " pass\n";
      return rep.ok() ? kOk : kHypothesis;
    }

    if (*sweep_cmd) {
      const auto kind = sweep::parse_kind(s_kind);
      CsvTable table;
      switch (kind) {
        case SweepKind::Fig1Grid:
          table = sweep::fig1_grid(s_resolution.value_or(201), s_z.two(0.75));
          break;
        case SweepKind::Fig2NScan:
          table = sweep::fig2_n_scan(s_nmin, s_nmax, s_z.two(0.5), s_z.pi(0.25));
          break;
        case SweepKind::DephaseScan: {
          const auto input = s_state.resolve();
          const auto* state = std::get_if<WSubspaceState>(&input);
          if (!state) throw Error(ErrorCode::ParseError, "dephase-scan needs a compact W-subspace state");
          table = sweep::dephase_scan(*state, s_resolution.value_or(11), s_z.two(), s_z.pi());
          break;
        }
      }
      std::ostringstream os;
      sweep::write_csv(os, table);
      detail::emit(out, s_out, os.str());
      if (!s_gnuplot.empty())
        detail::emit(out, s_gnuplot, sweep::gnuplot_stub(kind, s_out.empty() ? "sweep.csv" : s_out));
      return kOk;
    }

    if (*closed) {
      const double z_two = cf_z.two(), z_pi = cf_z.pi();
      io::json j{{"n", cf_n},
                 {"pair_concurrence", measures::closed_form_pair_concurrence(cf_n)},
                 {"pair_negativity", measures::closed_form_pair_negativity(cf_n)},
                 {"one_tangle", measures::closed_form_one_tangle(cf_n)},
                 {"pi_tangle", measures::closed_form_pi_tangle(cf_n)},
                 {"sum_two_tangles_unnormalized", measures::closed_form_sum_two_tangles(cf_n)},
                 {"sum_two_tangles", measures::closed_form_sum_two_tangles(cf_n, z_two)},
                 {"sum_pi_unnormalized", measures::closed_form_sum_pi(cf_n)},
                 {"sum_pi", measures::closed_form_sum_pi(cf_n, z_pi)},
                 {"sum_pi_limit", measures::closed_form_sum_pi_limit(z_pi)},
                 {"Z_two", z_two},
                 {"Z_pi", z_pi}};
      out << j.dump(2) << "\n";
      return kOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("wtangle");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace wtangle::cli
