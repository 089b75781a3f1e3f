#pragma once

// JSON encodings.
//
//   compact state : {"n": int, "A": real, "X": [[re,im],...], "B": [[[re,im],...],...]}
//   full state    : {"n": int, "rho": [[[re,im],...],...]}      (2^n x 2^n)
//   certificate   : {"weights": [...], "vectors": [{"kind", "excitation",
//                    "vacuum_amp", "exc_amp"}, ...], "residual": real}

#include <string>
#include <variant>

#include "json.hpp"

#include "wtangle/density_matrix.hpp"
#include "wtangle/measures.hpp"
#include "wtangle/separability.hpp"
#include "wtangle/states.hpp"

namespace wtangle::io {

using json = nlohmann::json;
using StateInput = std::variant<WSubspaceState, DensityMatrix>;

inline json to_json(complex z) { return json::array({z.real(), z.imag()}); }

inline complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(ErrorCode::ParseError, "complex value must be [re, im], got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

inline json to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

inline ComplexMatrix matrix_from_json(const json& j, Eigen::Index rows, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
    throw Error(ErrorCode::ParseError, std::string(what) + " must have " + std::to_string(rows) + " rows");
  ComplexMatrix m(rows, rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows)
      throw Error(ErrorCode::ParseError, std::string(what) + " row " + std::to_string(i) +
                                             " must have " + std::to_string(rows) + " entries");
    for (Eigen::Index k = 0; k < rows; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

inline json to_json(const WSubspaceState& s) {
  return json{{"n", s.n()}, {"A", s.A()}, {"X", to_json(s.X())}, {"B", to_json(s.B())}};
}

inline int read_n(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw Error(ErrorCode::ParseError, "state must be an object with integer field 'n'");
  const int n = j["n"].get<int>();
  if (n < 1 || n > 4096) throw Error(ErrorCode::ParseError, "n out of range: " + std::to_string(n));
  return n;
}

/// Compact state from JSON; validated.
inline WSubspaceState state_from_json(const json& j) {
  const int n = read_n(j);
  if (!j.contains("A") || !j["A"].is_number()) throw Error(ErrorCode::ParseError, "missing real field 'A'");
  if (!j.contains("X") || !j["X"].is_array() || static_cast<int>(j["X"].size()) != n)
    throw Error(ErrorCode::ParseError, "'X' must be an array of n complex values");
  if (!j.contains("B")) throw Error(ErrorCode::ParseError, "missing field 'B'");
  ComplexVector X(n);
  for (int i = 0; i < n; ++i) X(i) = complex_from_json(j["X"][static_cast<std::size_t>(i)]);
  ComplexMatrix B = matrix_from_json(j["B"], n, "B");
  return WSubspaceState::make(n, j["A"].get<double>(), std::move(X), std::move(B));
}

inline json to_json(const DensityMatrix& rho) {
  return json{{"n", rho.n()}, {"rho", to_json(rho.matrix())}};
}

inline StateInput state_input_from_json(const json& j, int cap = kDefaultFullSpaceCap) {
  if (j.is_object() && j.contains("rho")) {
    const int n = read_n(j);
    if (n > cap)
      throw Error(ErrorCode::CapExceeded, "full-space input with n = " + std::to_string(n) +
                                              " exceeds cap " + std::to_string(cap));
    const auto dim = static_cast<Eigen::Index>(linalg::dimension_of(n));
    return DensityMatrix::full(matrix_from_json(j["rho"], dim, "rho"), n);
  }
  return state_from_json(j);
}

inline json to_json(const ProductVector& v) {
  json out{{"kind", v.kind == ProductVector::Kind::Vacuum ? "vacuum" : "two-term"},
           {"vacuum_amp", to_json(v.vacuum_amp)},
           {"exc_amp", to_json(v.exc_amp)}};
  // 1-based excitation label i of e_i; 0 for the vacuum
  out["excitation"] = v.kind == ProductVector::Kind::Vacuum ? 0 : v.slot + 1;
  out["qubit"] = v.qubit();
  return out;
}

inline json to_json(const SeparabilityCertificate& c) {
  json vectors = json::array();
  for (const auto& v : c.vectors) vectors.push_back(to_json(v));
  return json{{"n", c.n},
              {"weights", c.weights},
              {"vectors", std::move(vectors)},
              {"residual", c.reconstruction_residual},
              {"max_accepted_coherence", c.max_accepted_coherence}};
}

inline SeparabilityCertificate certificate_from_json(const json& j) {
  SeparabilityCertificate c;
  try {
    c.n = j.at("n").get<int>();
    c.weights = j.at("weights").get<std::vector<double>>();
    for (const auto& v : j.at("vectors")) {
      const auto kind = v.at("kind").get<std::string>();
      if (kind == "vacuum") {
        c.vectors.push_back(ProductVector::vacuum(c.n));
      } else if (kind == "two-term") {
        c.vectors.push_back(ProductVector::two_term(c.n, v.at("excitation").get<int>() - 1,
                                                    complex_from_json(v.at("vacuum_amp")),
                                                    complex_from_json(v.at("exc_amp"))));
      } else {
        throw Error(ErrorCode::ParseError, "unknown vector kind '" + kind + "'");
      }
    }
    c.reconstruction_residual = j.at("residual").get<double>();
    c.max_accepted_coherence = j.value("max_accepted_coherence", 0.0);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  if (c.weights.size() != c.vectors.size())
    throw Error(ErrorCode::ParseError, "weights and vectors differ in length");
  return c;
}

inline json to_json(const MeasureReport& r) {
  auto pairs = [](const std::map<QubitPair, double>& m) {
    json out = json::array();
    for (const auto& [k, v] : m) out.push_back(json{{"s", k.first}, {"r", k.second}, {"value", v}});
    return out;
  };
  auto pivots = [](const std::map<int, double>& m) {
    json out = json::array();
    for (const auto& [k, v] : m) out.push_back(json{{"pivot", k}, {"value", v}});
    return out;
  };
  json out{{"n", r.n},
           {"pair_concurrence", pairs(r.pair_concurrence)},
           {"pair_negativity", pairs(r.pair_negativity)},
           {"pi_tangle", pivots(r.pi_tangle)},
           {"sum_two_tangles", r.sum_two_tangles},
           {"sum_pi_tangles", r.sum_pi_tangles},
           {"Z_two", r.Z_two},
           {"Z_pi", r.Z_pi}};
  out["one_tangle"] = r.one_tangle ? pivots(*r.one_tangle) : json(nullptr);
  return out;
}

}  // namespace wtangle::io
