#pragma once

// Randomized check of the zero-coherence separability construction.

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "wtangle/json_io.hpp"
#include "wtangle/measures.hpp"
#include "wtangle/sampling.hpp"
#include "wtangle/separability.hpp"

namespace wtangle {

struct AuditFailure {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string reason;
  io::json state;
};

struct AuditReport {
  int n = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t passes = 0;
  std::vector<AuditFailure> failures;
  double max_residual = 0.0;
  double max_pair_concurrence = 0.0;
  double max_pair_negativity = 0.0;
  double max_vector_entanglement = 0.0;

  bool ok() const noexcept { return failures.empty(); }
};

struct AuditLimits {
  double residual = 1e-9;
  double pair_concurrence = 1e-9;
  double pair_negativity = 1e-9;
  double vector_entanglement = 1e-12;
};

namespace separability {

struct SampleOutcome {
  bool pass = true;
  std::string reason;
  double residual = 0.0;
  double concurrence = 0.0;
  double negativity = 0.0;
  double vector_entanglement = 0.0;
};

/// Largest entanglement indicator of a certificate vector: pair concurrences
/// of its projector and, within the cap, the negativity across the cut that
/// isolates its excitation qubit.
inline double vector_entanglement(const ProductVector& v, int cap, double tol) {
  double worst = 0.0;
  const auto pure = WSubspaceState::pure(v.compact_amplitudes());
  for (int s = 0; s < v.n; ++s)
    for (int r = s + 1; r < v.n; ++r)
      worst = std::max(worst, measures::concurrence(states::reduce_pair(pure, s, r).rho, tol));
  if (v.kind == ProductVector::Kind::TwoTerm && v.n <= cap) {
    const auto rho = DensityMatrix::from_pure(v.full_amplitudes(), v.n);
    worst = std::max(worst, measures::pivot_negativity(rho, v.qubit(), tol));
  }
  return worst;
}

inline SampleOutcome audit_one(const WSubspaceState& state, int cap, const AuditLimits& lim,
                               double tol) {
  SampleOutcome out;
  auto fail = [&out](std::string why) {
    if (out.pass) out.reason = std::move(why);
    out.pass = false;
  };
  try {
    const auto cert = certify(state, tol);
    out.residual = cert.reconstruction_residual;
    if (out.residual > lim.residual) fail("reconstruction residual " + std::to_string(out.residual));

    const int n = state.n();
    const bool full_route = n <= cap;
    const auto full = full_route ? std::optional(states::to_full(state, cap)) : std::nullopt;
    for (int s = 0; s < n; ++s)
      for (int r = s + 1; r < n; ++r) {
        const auto red = states::reduce_pair(state, s, r);
        const double c = measures::concurrence(red.rho, tol);
        // negativity through the full-space partial trace when affordable
        const double neg = measures::pair_negativity(
            full_route ? measures::pair_reduction(*full, s, r) : red.rho, tol);
        out.concurrence = std::max(out.concurrence, c);
        out.negativity = std::max(out.negativity, neg);
        if (c > lim.pair_concurrence)
          fail("pair (" + std::to_string(s) + "," + std::to_string(r) + ") concurrence " + std::to_string(c));
        if (neg > lim.pair_negativity)
          fail("pair (" + std::to_string(s) + "," + std::to_string(r) + ") negativity " + std::to_string(neg));
      }

    for (const auto& v : cert.vectors) {
      const double e = vector_entanglement(v, cap, tol);
      out.vector_entanglement = std::max(out.vector_entanglement, e);
      if (e > lim.vector_entanglement) fail("certificate vector is entangled: " + std::to_string(e));
    }
  } catch (const Error& e) {
    fail(e.what());
  }
  return out;
}

/// Samples `sample_count` zero-coherence states, certifies each and cross
/// checks the certificate. Sample i uses seed derive_seed(seed, i).
inline AuditReport audit_theorem(std::size_t sample_count, int n, std::uint64_t seed,
                                 int cap = kDefaultFullSpaceCap, unsigned threads = 0,
                                 const AuditLimits& limits = {}, double tol = kDefaultTol) {
  if (n < 3) throw Error(ErrorCode::InvalidQubitCount, "audit needs n >= 3");
  AuditReport rep;
  rep.n = n;
  rep.seed = seed;
  rep.samples = sample_count;
  if (sample_count == 0) return rep;

  std::vector<SampleOutcome> outcomes(sample_count);
  std::vector<std::uint64_t> seeds(sample_count);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      seeds[i] = sampling::derive_seed(seed, i);
      SamplerConfig cfg;
      cfg.seed = seeds[i];
      cfg.n = n;
      cfg.kind = SamplerKind::MixedZeroCoherence;
      try {
        outcomes[i] = audit_one(sampling::sample_state(cfg), cap, limits, tol);
      } catch (const Error& e) {
        outcomes[i].pass = false;
        outcomes[i].reason = std::string("sampling failed: ") + e.what();
      }
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, sample_count));
  if (threads <= 1) {
    work(0, sample_count);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (sample_count + threads - 1) / threads;
    for (std::size_t b = 0; b < sample_count; b += chunk)
      pool.emplace_back(work, b, std::min(sample_count, b + chunk));
  }

  for (std::size_t i = 0; i < sample_count; ++i) {
    const auto& o = outcomes[i];
    rep.max_residual = std::max(rep.max_residual, o.residual);
    rep.max_pair_concurrence = std::max(rep.max_pair_concurrence, o.concurrence);
    rep.max_pair_negativity = std::max(rep.max_pair_negativity, o.negativity);
    rep.max_vector_entanglement = std::max(rep.max_vector_entanglement, o.vector_entanglement);
    if (o.pass) {
      ++rep.passes;
      continue;
    }
    AuditFailure f{i, seeds[i], o.reason, nullptr};
    try {
      SamplerConfig cfg;
      cfg.seed = seeds[i];
      cfg.n = n;
      cfg.kind = SamplerKind::MixedZeroCoherence;
      f.state = io::to_json(sampling::sample_state(cfg));
    } catch (const Error&) {
    }
    rep.failures.push_back(std::move(f));
  }
  return rep;
}

}  // namespace separability

namespace io {

inline json to_json(const AuditReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back(json{{"index", f.index}, {"seed", f.seed}, {"reason", f.reason}, {"state", f.state}});
  return json{{"n", r.n},
              {"seed", r.seed},
              {"samples", r.samples},
              {"passes", r.passes},
              {"failures", r.failures.size()},
              {"max_residual", r.max_residual},
              {"max_pair_concurrence", r.max_pair_concurrence},
              {"max_pair_negativity", r.max_pair_negativity},
              {"max_vector_entanglement", r.max_vector_entanglement},
              {"failing_states", std::move(failures)}};
}

}  // namespace io
}  // namespace wtangle
