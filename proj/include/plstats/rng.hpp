#pragma once

#include <cstdint>

namespace plstats {

//! Identity of a reproducible random stream.
//!
//! The generator scheme is fixed: xoshiro256++ state filled by SplitMix64
//! from a key mixed out of (master_seed, substream_id) ("xs256pp/sm64 v1").
//! Identical pairs give bit-identical uint64/uniform sequences on every
//! platform; Gaussian variates additionally depend on libm rounding.
//! Distinct substream ids behave as independent streams.
struct RngStream {
  std::uint64_t master_seed = 0;
  std::uint64_t substream_id = 0;

  //! Derive a child stream. Children of distinct parents never collide
  //! because the parent's mixed key becomes the child's master seed.
  [[nodiscard]] RngStream substream(std::uint64_t id) const;

  //! 64-bit key that seeds the generator state for this stream.
  [[nodiscard]] std::uint64_t key() const;
};

//! xoshiro256++ generator bound to one RngStream.
class Rng {
public:
  explicit Rng(RngStream stream);

  std::uint64_t next_u64();

  //! Uniform on [0,1) with 53 random bits.
  double next_double();

  //! Uniform on [a,b).
  double uniform(double a, double b);

  //! Standard normal variate (Marsaglia polar, one spare cached).
  double normal();

  //! Uniform on {0,...,n-1}, unbiased by rejection. n must be > 0.
  std::uint64_t below(std::uint64_t n);

  [[nodiscard]] RngStream stream() const { return stream_; }

private:
  RngStream stream_;
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

} // namespace plstats
