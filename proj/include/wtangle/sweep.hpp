#pragma once

// Plot-ready parameter sweeps, written as CSV with 17 significant digits.

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "wtangle/measures.hpp"
#include "wtangle/sampling.hpp"
#include "wtangle/states.hpp"

namespace wtangle {

enum class SweepKind { Fig1Grid, Fig2NScan, DephaseScan };

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<bool> integer_column;
};

namespace sweep {

inline SweepKind parse_kind(std::string_view name) {
  if (name == "fig1-grid") return SweepKind::Fig1Grid;
  if (name == "fig2-n-scan") return SweepKind::Fig2NScan;
  if (name == "dephase-scan") return SweepKind::DephaseScan;
  throw Error(ErrorCode::InvalidConfig, "unknown sweep kind '" + std::string(name) + "'");
}

/// Sum of two-tangles of k1|001> + k2|010> + k3|100> with real k3 = sqrt(1 - k1^2 - k2^2),
/// over the admissible part of the [0, 1]^2 grid.
inline CsvTable fig1_grid(int resolution, double Z) {
  if (resolution < 2) throw Error(ErrorCode::InvalidConfig, "resolution must be >= 2");
  measures::require_valid_z(Z);
  CsvTable t{{"k1", "k2", "sum_two_tangles"}, {}, {false, false, false}};
  const double step = 1.0 / (resolution - 1);
  for (int i = 0; i < resolution; ++i)
    for (int j = 0; j < resolution; ++j) {
      const double k1 = i * step;
      const double k2 = j * step;
      const double rest = 1.0 - k1 * k1 - k2 * k2;
      if (rest < -1e-12) continue;
      const double k3 = std::sqrt(std::max(0.0, rest));
      // renormalize away the rounding in k3
      const double norm = std::sqrt(k1 * k1 + k2 * k2 + k3 * k3);
      const auto state = states::build_asymmetric(3, {k1 / norm, k2 / norm, k3 / norm});
      t.rows.push_back({k1, k2, measures::sum_two_tangles(state, Z)});
    }
  return t;
}

/// pi-tangle of one pivot and the normalized sums for the maximally
/// entangled W state, evaluated on the compact representation.
inline CsvTable fig2_n_scan(int n_min, int n_max, double z_two = 0.5, double z_pi = 0.25) {
  if (n_min < 3 || n_max < n_min) throw Error(ErrorCode::InvalidConfig, "need 3 <= n_min <= n_max");
  CsvTable t{{"n", "pi_tangle", "sum_two_tangles_normalized", "sum_pi_normalized"}, {}, {true, false, false, false}};
  for (int n = n_min; n <= n_max; ++n) {
    const auto w = states::build_symmetric(n, 0.0);
    t.rows.push_back({static_cast<double>(n), measures::pi_tangle(w, 0),
                      measures::sum_two_tangles(w, z_two), measures::sum_pi_tangles(w, z_pi)});
  }
  return t;
}

inline CsvTable dephase_scan(const WSubspaceState& state, int resolution, double z_two, double z_pi) {
  if (resolution < 2) throw Error(ErrorCode::InvalidConfig, "resolution must be >= 2");
  CsvTable t{{"strength", "sum_two_tangles", "sum_pi"}, {}, {false, false, false}};
  for (int i = 0; i < resolution; ++i) {
    const double s = static_cast<double>(i) / (resolution - 1);
    const auto d = sampling::dephase(state, s);
    t.rows.push_back({s, measures::sum_two_tangles(d, z_two), measures::sum_pi_tangles(d, z_pi)});
  }
  return t;
}

inline void write_csv(std::ostream& os, const CsvTable& t) {
  for (std::size_t c = 0; c < t.header.size(); ++c) os << (c ? "," : "") << t.header[c];
  os << '\n';
  std::ostringstream cell;
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      if (t.integer_column[c]) {
        os << static_cast<long long>(row[c]);
      } else {
        cell.str({});
        cell << std::setprecision(17) << row[c];
        os << cell.str();
      }
    }
    os << '\n';
  }
}

inline std::string gnuplot_stub(SweepKind kind, const std::string& csv_path) {
  std::ostringstream os;
  os << "set datafile separator ','\n";
  switch (kind) {
    case SweepKind::Fig1Grid:
      os << "set xlabel 'k1'\nset ylabel 'k2'\nset zlabel 'sum of two-tangles'\n"
         << "splot '" << csv_path << "' using 1:2:3 every ::1 with points pt 7 ps 0.3 palette notitle\n";
      break;
    case SweepKind::Fig2NScan:
      os << "set xlabel 'n'\n"
         << "plot '" << csv_path << "' using 1:2 every ::1 with lines title 'pi-tangle', \\\n"
         << "     '' using 1:3 every ::1 with lines title 'sum of two-tangles', \\\n"
         << "     '' using 1:4 every ::1 with lines title 'sum of pi-tangles'\n";
      break;
    case SweepKind::DephaseScan:
      os << "set xlabel 'dephasing strength'\n"
         << "plot '" << csv_path << "' using 1:2 every ::1 with lines title 'sum of two-tangles', \\\n"
         << "     '' using 1:3 every ::1 with lines title 'sum of pi-tangles'\n";
      break;
  }
  return os.str();
}

}  // namespace sweep
}  // namespace wtangle
