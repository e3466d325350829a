#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "capm/reach.hpp"
#include "capm/targets.hpp"

namespace capm {

/// Deterministic seeded random stream: identical (seed, stream_id) pairs
/// produce identical sample sequences regardless of platform or thread
/// schedule. Normal variates come from an explicit Box-Muller transform so
/// the sequence does not depend on the standard library's distribution
/// implementation.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_bits();
  double uniform();  // [0, 1)
  double normal();   // standard normal

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t state_;
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stable 64-bit mixer used to derive per-trial stream ids.
std::uint64_t mix_stream_id(std::uint64_t a, std::uint64_t b);

/// MPOI position model: Gaussian about the TROI center, optionally
/// rejection-truncated to the TROI ground disc.
struct MpoiDistribution {
  Vec2 mean{0.0, 0.0};
  Mat2 covariance = Mat2::Identity();
  bool truncate_to_troi = false;
};

/// Draws one MPOI. Throws TruncationStarved when truncation rejects 10^6
/// consecutive samples.
Mpoi sample_mpoi(const MpoiDistribution& dist, const Troi& troi,
                 RngStream& rng);

/// Draws a reusable sample set (common random numbers for the planner).
std::vector<Vec2> draw_mpoi_samples(const MpoiDistribution& dist,
                                    const Troi& troi, int n, RngStream& rng);

/// Fraction of samples whose translated manipulation region contains the
/// body position. rm_shape carries the radii; its center is ignored.
double p_feasible_over_samples(const BodyPose& body,
                               std::span<const Vec2> samples,
                               const Annulus& rm_shape);

/// Monte Carlo estimate of the probability that the body placement also
/// permits manipulation, integrating region membership over the MPOI
/// distribution. Deterministic given the stream.
double p_feasible(const BodyPose& body, const MpoiDistribution& dist,
                  const Troi& troi,
                  const std::function<Annulus(const Vec2&)>& rm_of,
                  int n_samples, RngStream& rng);

}  // namespace capm
