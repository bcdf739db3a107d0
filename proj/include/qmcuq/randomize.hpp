// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// RQMC randomizations: random shift mod 1 (plain and with the baker
// transformation), digital shift, random linear matrix scramble plus
// digital shift, and nested uniform scrambling. Each keeps every point
// marginally uniform on [0,1)^d.
//
// All randomness is derived from the keyed counter generator with
// (seed, replicate_index, dimension, role), so identical specs give
// bit-identical output and distinct replicates are independent.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qmcuq/errors.hpp"
#include "qmcuq/pointgen.hpp"
#include "qmcuq/pointset.hpp"
#include "qmcuq/rng.hpp"

namespace qmcuq {

enum class RandomizerKind {
	iid,  // plain Monte Carlo points (not an RQMC method)
	shift,
	shift_baker,
	digital_shift,
	matrix_scramble_shift,
	nested_scramble,
};

inline const char* to_string(RandomizerKind k)
{
	switch (k) {
	case RandomizerKind::iid: return "iid";
	case RandomizerKind::shift: return "shift";
	case RandomizerKind::shift_baker: return "shift_baker";
	case RandomizerKind::digital_shift: return "digital_shift";
	case RandomizerKind::matrix_scramble_shift: return "matrix_scramble_shift";
	case RandomizerKind::nested_scramble: return "nested_scramble";
	}
	return "?";
}

inline RandomizerKind randomizer_from_string(const std::string& s)
{
	if (s == "iid") return RandomizerKind::iid;
	if (s == "shift") return RandomizerKind::shift;
	if (s == "shift_baker" || s == "baker") return RandomizerKind::shift_baker;
	if (s == "digital_shift" || s == "digital") return RandomizerKind::digital_shift;
	if (s == "matrix_scramble_shift" || s == "matrix")
		return RandomizerKind::matrix_scramble_shift;
	if (s == "nested_scramble" || s == "nested") return RandomizerKind::nested_scramble;
	throw PreconditionError("unknown randomizer: " + s);
}

/// (seed, replicate_index) fully determine the randomization.
struct RandomizerSpec {
	RandomizerKind kind = RandomizerKind::nested_scramble;
	std::uint64_t seed = 0;
	std::uint32_t replicate_index = 0;
	int precision_bits = 53;  // scramble depth
};

namespace detail {

inline constexpr double kUlpBelowOne = 1.0 - 0x1.0p-53;

/// Coordinate as a 53-bit fixed-point integer (exact for dyadic inputs).
inline std::uint64_t to_fixed53(double x)
{
	return std::uint64_t(x * 0x1.0p53);
}

inline double from_fixed53(std::uint64_t y) { return double(y) * 0x1.0p-53; }

inline void require_no_unit(const PointSet& ps, const char* op)
{
	if (ps.contains_unit_coordinate())
		throw PreconditionError(std::string(op) +
		                        ": point set has a coordinate exactly 1.0");
}

}  // namespace detail

/// Shift every point by one U ~ U[0,1)^d modulo 1; with kind shift_baker
/// the tent map x -> 1 - |2x - 1| is applied afterwards.
inline PointSet random_shift(const PointSet& ps, const RandomizerSpec& spec)
{
	if (spec.kind != RandomizerKind::shift && spec.kind != RandomizerKind::shift_baker)
		throw PreconditionError("random_shift: spec.kind must be shift or shift_baker");
	std::vector<double> shift(ps.d);
	for (int j = 0; j < ps.d; ++j)
		shift[j] = rng::Stream(spec.seed, rng::kRoleShift, std::uint32_t(j),
		                       spec.replicate_index)
		               .next_u53();
	PointSet out = ps;
	out.meta["randomizer"] = to_string(spec.kind);
	for (std::int64_t i = 0; i < ps.n; ++i)
		for (int j = 0; j < ps.d; ++j) {
			double x = ps.at(i, j) + shift[j];
			if (x >= 1.0) x -= 1.0;
			if (spec.kind == RandomizerKind::shift_baker) {
				x = 1.0 - std::fabs(2.0 * x - 1.0);
				if (x >= 1.0) x = detail::kUlpBelowOne;
			}
			out.coords[std::size_t(i) * ps.d + j] = x;
		}
	return out;
}

/// XOR the binary digits of every coordinate with one random digit vector
/// per dimension, at precision_bits depth.
inline PointSet digital_shift(const PointSet& ps, const RandomizerSpec& spec)
{
	detail::require_no_unit(ps, "digital_shift");
	const int depth = spec.precision_bits;
	if (depth < 0 || depth > 53)
		throw PreconditionError("digital_shift: precision_bits out of range");
	std::vector<std::uint64_t> shift(ps.d);
	for (int j = 0; j < ps.d; ++j) {
		std::uint64_t bits = rng::Stream(spec.seed, rng::kRoleDigitalShift,
		                                 std::uint32_t(j), spec.replicate_index)
		                         .next_bits53();
		shift[j] = (depth == 0) ? 0 : (bits >> (53 - depth)) << (53 - depth);
	}
	PointSet out = ps;
	out.meta["randomizer"] = "digital_shift";
	for (std::int64_t i = 0; i < ps.n; ++i)
		for (int j = 0; j < ps.d; ++j)
			out.coords[std::size_t(i) * ps.d + j] = detail::from_fixed53(
			    detail::to_fixed53(ps.at(i, j)) ^ shift[j]);
	return out;
}

/// Random unit-lower-triangular left factors, one per dimension:
/// generator matrices become L_j * C_j over GF(2).
inline NetGenerators scramble_generators(const NetGenerators& gen,
                                         const RandomizerSpec& spec)
{
	gen.validate();
	NetGenerators out = gen;
	const int m = gen.m;
	for (int j = 0; j < gen.d; ++j) {
		rng::Stream stream(spec.seed, rng::kRoleScrambleL, std::uint32_t(j),
		                   spec.replicate_index);
		// column s of L (1-based): unit diagonal plus random strictly
		// lower entries, in output-bit convention (bit m-s is the diagonal)
		std::vector<std::uint64_t> lcols(m);
		for (int s = 1; s <= m; ++s) {
			const int below = m - s;
			std::uint64_t rnd = 0;
			for (int t = 0; t < below; t += 53)
				rnd |= stream.next_bits53() << t;
			const std::uint64_t mask =
			    below == 0 ? 0 : ((std::uint64_t(1) << below) - 1);
			lcols[s - 1] = (std::uint64_t(1) << below) | (rnd & mask);
		}
		for (int k = 0; k < m; ++k) {
			std::uint64_t c = gen.cols[j][k], y = 0;
			while (c != 0) {
				const int bit = std::countr_zero(c);  // bit m-s
				y ^= lcols[m - 1 - bit];
				c &= c - 1;
			}
			out.cols[j][k] = y;
		}
	}
	return out;
}

/// Matrix scramble of a digital net plus digital shift.
inline PointSet matrix_scramble_shift(const NetGenerators& gen,
                                      const RandomizerSpec& spec)
{
	if (spec.kind != RandomizerKind::matrix_scramble_shift)
		throw PreconditionError("matrix_scramble_shift: wrong spec.kind");
	PointSet ps = digital_net(scramble_generators(gen, spec));
	ps = digital_shift(ps, spec);
	ps.meta["randomizer"] = "matrix_scramble_shift";
	return ps;
}

/// Nested uniform scramble of one 53-bit coordinate: the permutation
/// applied to digit b depends on digits 1..b-1, realized lazily with a
/// keyed pseudo-random function on (dimension, digit prefix).
inline std::uint64_t nested_scramble_bits(std::uint64_t y, std::uint64_t seed,
                                          std::uint32_t dimension,
                                          std::uint32_t replicate, int depth)
{
	for (int b = 1; b <= depth; ++b) {
		const std::uint64_t prefix = (b == 1) ? 0 : (y >> (54 - b));
		if (rng::prf_bit(seed, prefix, b, dimension, replicate))
			y ^= std::uint64_t(1) << (53 - b);
	}
	return y;
}

inline PointSet nested_scramble(const PointSet& ps, const RandomizerSpec& spec)
{
	detail::require_no_unit(ps, "nested_scramble");
	const int depth = spec.precision_bits;
	if (depth < 0 || depth > 53)
		throw PreconditionError("nested_scramble: precision_bits out of range");
	PointSet out = ps;
	out.meta["randomizer"] = "nested_scramble";
	out.meta["depth"] = std::to_string(depth);
	for (std::int64_t i = 0; i < ps.n; ++i)
		for (int j = 0; j < ps.d; ++j)
			out.coords[std::size_t(i) * ps.d + j] =
			    detail::from_fixed53(nested_scramble_bits(
			        detail::to_fixed53(ps.at(i, j)), spec.seed, std::uint32_t(j),
			        spec.replicate_index, depth));
	return out;
}

/// Apply the randomization named by spec.kind to a point set. The matrix
/// scramble acts on generator matrices and is not available through this
/// point-level entry.
inline PointSet randomize(const PointSet& ps, const RandomizerSpec& spec)
{
	switch (spec.kind) {
	case RandomizerKind::shift:
	case RandomizerKind::shift_baker:
		return random_shift(ps, spec);
	case RandomizerKind::digital_shift:
		return digital_shift(ps, spec);
	case RandomizerKind::nested_scramble:
		return nested_scramble(ps, spec);
	case RandomizerKind::matrix_scramble_shift:
		throw PreconditionError(
		    "matrix_scramble_shift needs generator matrices, not points");
	case RandomizerKind::iid:
		throw PreconditionError("iid is a point source, not a randomization");
	}
	throw PreconditionError("randomize: unknown kind");
}

}  // namespace qmcuq
