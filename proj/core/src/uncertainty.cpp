#include "capm/uncertainty.hpp"

#include <cmath>

#include <Eigen/Cholesky>

#include "capm/errors.hpp"

namespace capm {
namespace {

constexpr int kTruncationGuard = 1000000;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  state_ = splitmix64(splitmix64(seed) ^ splitmix64(stream_id * 2 + 1));
  if (state_ == 0) state_ = 0x106689D45497FDB5ULL;
}

std::uint64_t RngStream::next_bits() {
  // xorshift64* keeps the stream self-contained and portable.
  std::uint64_t x = state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  state_ = x;
  return x * 0x2545F4914F6CDD1DULL;
}

double RngStream::uniform() {
  return static_cast<double>(next_bits() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * kPi * u2;
  cached_normal_ = r * std::sin(a);
  has_cached_normal_ = true;
  return r * std::cos(a);
}

std::uint64_t mix_stream_id(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (0x9E3779B97F4A7C15ULL * (b + 1)));
}

Mpoi sample_mpoi(const MpoiDistribution& dist, const Troi& troi,
                 RngStream& rng) {
  const Eigen::LLT<Mat2> llt(dist.covariance);
  if (llt.info() != Eigen::Success) {
    throw RangeError("MPOI covariance is not positive definite");
  }
  const Mat2 chol = llt.matrixL();
  for (int attempt = 0; attempt < kTruncationGuard; ++attempt) {
    const Vec2 z(rng.normal(), rng.normal());
    const Vec2 p = dist.mean + chol * z;
    if (!dist.truncate_to_troi || troi.contains_xy(p)) {
      return Mpoi{Vec3(p.x(), p.y(), 0.0)};
    }
  }
  throw TruncationStarved("rejection sampling exceeded the attempt guard");
}

std::vector<Vec2> draw_mpoi_samples(const MpoiDistribution& dist,
                                    const Troi& troi, int n, RngStream& rng) {
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out.push_back(sample_mpoi(dist, troi, rng).point_xy());
  }
  return out;
}

double p_feasible_over_samples(const BodyPose& body,
                               std::span<const Vec2> samples,
                               const Annulus& rm_shape) {
  if (samples.empty()) return 0.0;
  if (rm_shape.empty) return 0.0;
  const double lo_sq = rm_shape.r_inner * rm_shape.r_inner;
  const double hi_sq = rm_shape.r_outer * rm_shape.r_outer;
  const double bx = body.position.x();
  const double by = body.position.y();
  int hits = 0;
  for (const Vec2& s : samples) {
    const double dx = bx - s.x();
    const double dy = by - s.y();
    const double sq = dx * dx + dy * dy;
    hits += (sq >= lo_sq && sq <= hi_sq) ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

double p_feasible(const BodyPose& body, const MpoiDistribution& dist,
                  const Troi& troi,
                  const std::function<Annulus(const Vec2&)>& rm_of,
                  int n_samples, RngStream& rng) {
  int hits = 0;
  for (int i = 0; i < n_samples; ++i) {
    const Mpoi mpoi = sample_mpoi(dist, troi, rng);
    const Annulus rm = rm_of(mpoi.point_xy());
    if (rm.contains(body.position)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(n_samples);
}

}  // namespace capm
