#include "dholo/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "dholo/errors.hpp"

namespace dholo {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : engine_([&] {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
        return std::mt19937_64(seq);
      }()) {}

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

ComplexMatrix projector_scs(SpinJ j, const Direction& d) {
  const ComplexMatrix f = scs_frame(j, d);
  return f * f.adjoint();
}

MeasureOutcome born_measure(const StateVector& state, const ComplexMatrix& projector, RngStream& rng) {
  if (projector.rows() != state.size() || projector.cols() != state.size())
    throw Error(ErrorKind::DimensionMismatch, "projector and state dimensions differ");
  StateVector kept = projector * state;
  const double p = std::clamp(kept.squaredNorm() / state.squaredNorm(), 0.0, 1.0);
  MeasureOutcome out;
  out.passed = rng.uniform() < p;
  if (out.passed) {
    out.collapsed = kept / kept.norm();
  } else {
    StateVector rest = state - kept;
    out.collapsed = rest / rest.norm();
  }
  return out;
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

struct ShotResult {
  std::size_t attempts = 0;
  bool success = false;
  double fidelity = 0.0;
};

}  // namespace

RunStats run_sequence(SpinJ j, const MeasurementPath& path, const Vector2& input, const SimConfig& cfg) {
  if (cfg.shots < 1) throw Error(ErrorKind::InvalidArgument, "shots must be >= 1");
  if (cfg.max_restarts < 1) throw Error(ErrorKind::InvalidArgument, "max_restarts must be >= 1");
  if (std::abs(input.norm() - 1.0) > 1e-10)
    throw Error(ErrorKind::InvalidArgument, "input state must be normalized");

  const auto& vertices = path.vertices();
  std::vector<ComplexMatrix> projectors;
  projectors.reserve(vertices.size());
  for (const auto& v : vertices) projectors.push_back(projector_scs(j, v));
  const ComplexMatrix first_frame = scs_frame(j, vertices.front());
  const ComplexMatrix last_frame = scs_frame(j, vertices.back());
  const StateVector prepared = first_frame * input;
  const Vector2 expected = holonomy(j, path).u_d * input;

  const std::size_t max_attempts = cfg.strategy == Strategy::Restart ? cfg.max_restarts + 1 : 1;

  auto run_shot = [&](std::size_t shot) {
    RngStream rng(cfg.seed, shot);
    ShotResult r;
    while (r.attempts < max_attempts && !r.success) {
      ++r.attempts;
      StateVector state = prepared;
      bool ok = true;
      for (const auto& p : projectors) {
        MeasureOutcome m = born_measure(state, p, rng);
        if (!m.passed) {
          ok = false;
          break;
        }
        state = std::move(m.collapsed);
      }
      if (ok) {
        r.success = true;
        const Vector2 coords = last_frame.adjoint() * state;
        r.fidelity = std::norm(coords.dot(expected)) / (coords.squaredNorm() * expected.squaredNorm());
      }
    }
    return r;
  };

  std::vector<ShotResult> results(cfg.shots);
  const unsigned workers = std::min<std::size_t>(resolve_threads(cfg.threads), cfg.shots);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t s = w; s < cfg.shots; s += workers) results[s] = run_shot(s);
      });
  }

  // Reduce in shot order so the floating-point sums do not depend on threading.
  RunStats stats;
  stats.shots = cfg.shots;
  double fidelity_sum = 0.0;
  double min_fid = 1.0;
  for (const auto& r : results) {
    stats.total_attempts += r.attempts;
    if (r.success) {
      ++stats.successes;
      fidelity_sum += r.fidelity;
      min_fid = std::min(min_fid, r.fidelity);
    } else if (cfg.strategy == Strategy::Restart) {
      ++stats.exhausted;
    }
  }
  stats.empirical_success_rate = static_cast<double>(stats.successes) / static_cast<double>(cfg.shots);
  stats.mean_restarts =
      static_cast<double>(stats.total_attempts - cfg.shots) / static_cast<double>(cfg.shots);
  if (stats.successes > 0) {
    stats.final_fidelity = fidelity_sum / static_cast<double>(stats.successes);
    stats.min_fidelity = min_fid;
  }
  return stats;
}

}  // namespace dholo
