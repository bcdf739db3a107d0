// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Counter-based pseudo-random generation (Philox 4x32-10).
//
// Salmon et al. SC 2011. Parallel random numbers: as easy as 1, 2, 3.
// Every random quantity in the library is a pure function of
// (seed, role, dimension, replicate, counter), so replicates, bootstrap
// resamples and harness trials are reproducible and order-independent.
#pragma once

#include <array>
#include <cstdint>

namespace qmcuq::rng {

// Stream roles. Distinct roles give statistically independent streams
// even when the remaining key words coincide.
enum Role : std::uint32_t {
	kRoleShift = 1,
	kRoleScrambleL = 2,
	kRoleDigitalShift = 3,
	kRoleNested = 4,
	kRoleBootstrap = 5,
	kRoleIidPoints = 6,
	kRoleLatticeVector = 7,
	kRolePrimePick = 8,
	kRoleDerive = 9,
	kRoleGeneric = 10,
};

namespace detail {

inline constexpr std::uint32_t kPhiloxW32A = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW32B = 0xBB67AE85u;
inline constexpr std::uint32_t kPhiloxM4x32A = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM4x32B = 0xCD9E8D57u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr,
                         const std::array<std::uint32_t, 2>& key)
{
	const std::uint64_t p0 = std::uint64_t(kPhiloxM4x32A) * ctr[0];
	const std::uint64_t p1 = std::uint64_t(kPhiloxM4x32B) * ctr[2];
	const auto lo0 = std::uint32_t(p0), hi0 = std::uint32_t(p0 >> 32);
	const auto lo1 = std::uint32_t(p1), hi1 = std::uint32_t(p1 >> 32);
	ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace detail

/// One Philox 4x32-10 block: 128 pseudo-random bits from a 128-bit
/// counter and a 64-bit key.
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::uint64_t key64)
{
	std::array<std::uint32_t, 2> key = {std::uint32_t(key64),
	                                    std::uint32_t(key64 >> 32)};
	for (int round = 0; round < 10; ++round) {
		detail::philox_round(ctr, key);
		key[0] += detail::kPhiloxW32A;
		key[1] += detail::kPhiloxW32B;
	}
	return ctr;
}

/// A keyed stream of uniform variates. The stream identity is
/// (seed, role, dimension, replicate); values are drawn by advancing a
/// 64-bit counter, so any prefix of the stream is reproducible.
class Stream {
  public:
	Stream(std::uint64_t seed, Role role, std::uint32_t dimension = 0,
	       std::uint32_t replicate = 0)
	    : seed_(seed), word2_((dimension << 8) | std::uint32_t(role)),
	      word3_(replicate)
	{
	}

	std::uint64_t next_u64()
	{
		const auto block = philox4x32(
		    {std::uint32_t(counter_), std::uint32_t(counter_ >> 32), word2_, word3_},
		    seed_);
		++counter_;
		return (std::uint64_t(block[1]) << 32) | block[0];
	}

	/// Uniform double in [0,1) with 53 random bits.
	double next_u53() { return double(next_u64() >> 11) * 0x1.0p-53; }

	/// 53-bit random word (digital-shift vectors, scramble bits).
	std::uint64_t next_bits53() { return next_u64() >> 11; }

	/// Uniform integer in {0, ..., bound-1} (bound <= 2^32, unbiased
	/// enough for resampling at bound << 2^64: uses 64 fresh bits).
	std::uint64_t next_below(std::uint64_t bound)
	{
		return next_u64() % bound;
	}

  private:
	std::uint64_t seed_;
	std::uint32_t word2_, word3_;
	std::uint64_t counter_ = 0;
};

/// Keyed pseudo-random function used by the nested scramble: one output
/// block per (prefix, level, dimension, replicate) tuple.
inline std::uint32_t prf_bit(std::uint64_t seed, std::uint64_t prefix, int level,
                             std::uint32_t dimension, std::uint32_t replicate)
{
	const std::array<std::uint32_t, 4> ctr = {
	    std::uint32_t(prefix),
	    std::uint32_t(prefix >> 32) | (std::uint32_t(level) << 21),
	    (dimension << 8) | kRoleNested, replicate};
	return philox4x32(ctr, seed)[0] & 1u;
}

/// Derive a child seed for an independent sub-experiment (harness trials,
/// bootstrap suites). Pure function of its inputs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0)
{
	const auto block = philox4x32({std::uint32_t(a), std::uint32_t(a >> 32),
	                               std::uint32_t(b) << 8 | kRoleDerive,
	                               std::uint32_t(b >> 24)},
	                              seed);
	return (std::uint64_t(block[1]) << 32) | block[0];
}

}  // namespace qmcuq::rng
