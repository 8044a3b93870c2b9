#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "dholo/holonomy.hpp"
#include "dholo/linalg.hpp"
#include "dholo/spin.hpp"

namespace dholo {

enum class Strategy { Postselect, Restart };

struct SimConfig {
  std::size_t shots = 1000;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::Postselect;
  /// Restart strategy only: a shot is abandoned after 1 + max_restarts attempts.
  std::size_t max_restarts = 100;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct RunStats {
  std::size_t shots = 0;
  std::size_t successes = 0;
  std::size_t total_attempts = 0;
  /// Shots that ran out of restarts (restart strategy).
  std::size_t exhausted = 0;
  double empirical_success_rate = 0.0;
  double mean_restarts = 0.0;
  /// Mean state fidelity |<out|U_D psi>|^2 over successful shots; 0 if none.
  double final_fidelity = 0.0;
  double min_fidelity = 0.0;

  friend bool operator==(const RunStats&, const RunStats&) = default;
};

/// Uniform stream for one shot, derived from (seed, shot index) only, so the
/// result of a shot does not depend on scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Rank-2 projector |+j;n><+j;n| + |-j;n><-j;n|.
ComplexMatrix projector_scs(SpinJ j, const Direction& d);

struct MeasureOutcome {
  bool passed = false;
  StateVector collapsed;
};

/// Projective filtering with Born-rule outcome. A failing outcome collapses
/// onto the complement (1 - P).
MeasureOutcome born_measure(const StateVector& state, const ComplexMatrix& projector, RngStream& rng);

/// Monte Carlo of the filtering cycle on a + b frame input.
RunStats run_sequence(SpinJ j, const MeasurementPath& path, const Vector2& input, const SimConfig& cfg);

/// Number of worker threads to use for `requested` (0 = hardware default).
unsigned resolve_threads(unsigned requested);

}  // namespace dholo
