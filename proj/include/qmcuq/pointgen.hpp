// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Deterministic low-discrepancy constructions: van der Corput / Halton /
// Hammersley, base-2 digital nets from generator matrices, Sobol' nets,
// rank-1 lattices, and tensor products.
//
// Digital constructions compute exactly in integers and divide by 2^m at
// the end, so coordinates are bit-exact dyadic rationals.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmcuq/direction_table.hpp"
#include "qmcuq/errors.hpp"
#include "qmcuq/pointset.hpp"

namespace qmcuq {

/// Digit reversal of i in base b, placed after the radix point.
inline double radical_inverse(std::uint64_t i, int b)
{
	if (b < 2) throw PreconditionError("radical_inverse: base must be >= 2");
	double x = 0.0, scale = 1.0 / b;
	while (i > 0) {
		x += double(i % b) * scale;
		i /= b;
		scale /= b;
	}
	return x;
}

namespace detail {

inline const std::vector<int>& small_primes()
{
	static const std::vector<int> primes = {
	    2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
	    59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127,
	    131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
	    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269,
	    271, 277, 281, 283, 293, 307, 311, 313};
	return primes;
}

inline std::int64_t checked_pow(std::int64_t b, int m, const char* what)
{
	std::int64_t n = 1;
	for (int k = 0; k < m; ++k) {
		if (n > (std::int64_t(1) << 56) / b)
			throw PreconditionError(std::string(what) + ": point count overflows");
		n *= b;
	}
	return n;
}

}  // namespace detail

/// First n points of the d-dimensional Halton sequence (prime bases,
/// starting at index 0).
inline PointSet halton(std::int64_t n, int d)
{
	const auto& primes = detail::small_primes();
	if (d < 1 || std::size_t(d) > primes.size())
		throw PreconditionError("halton: dimension out of range");
	PointSet ps;
	ps.n = n;
	ps.d = d;
	ps.construction = Construction::halton;
	ps.coords.resize(std::size_t(n) * d);
	for (std::int64_t i = 0; i < n; ++i)
		for (int j = 0; j < d; ++j)
			ps.coords[std::size_t(i) * d + j] = radical_inverse(i, primes[j]);
	return ps;
}

/// Two-dimensional Hammersley set: n = b^m points (i/n, phi_b(i)).
inline PointSet hammersley_2d(int m, int b = 2)
{
	if (m < 0) throw PreconditionError("hammersley_2d: level must be >= 0");
	if (b < 2) throw PreconditionError("hammersley_2d: base must be >= 2");
	const std::int64_t n = detail::checked_pow(b, m, "hammersley_2d");
	PointSet ps;
	ps.n = n;
	ps.d = 2;
	ps.construction = Construction::hammersley;
	ps.base = b;
	ps.meta["m"] = std::to_string(m);
	ps.coords.resize(std::size_t(n) * 2);
	for (std::int64_t i = 0; i < n; ++i) {
		ps.coords[std::size_t(i) * 2] = double(i) / double(n);
		ps.coords[std::size_t(i) * 2 + 1] = radical_inverse(std::uint64_t(i), b);
	}
	return ps;
}

/// Output integer of point i, dimension j: XOR of the matrix columns
/// selected by the binary digits of i.
inline std::uint64_t net_point_bits(const NetGenerators& gen, std::uint64_t i, int j)
{
	std::uint64_t y = 0;
	const auto& cols = gen.cols[j];
	for (int k = 0; i != 0; ++k, i >>= 1)
		if (i & 1) y ^= cols[k];
	return y;
}

/// Base-2 digital net: point i, dimension j has bit vector
/// (matrix_j * digits(i)) mod 2, read as a binary fraction. n = 2^m.
inline PointSet digital_net(const NetGenerators& gen)
{
	gen.validate();
	const std::int64_t n = std::int64_t(1) << gen.m;
	const double inv = (gen.m == 0) ? 0.0 : 0x1.0p0 / double(n);
	PointSet ps;
	ps.n = n;
	ps.d = gen.d;
	ps.construction = Construction::digital_net;
	ps.meta["m"] = std::to_string(gen.m);
	ps.coords.resize(std::size_t(n) * gen.d);
	for (std::int64_t i = 0; i < n; ++i)
		for (int j = 0; j < gen.d; ++j)
			ps.coords[std::size_t(i) * gen.d + j] =
			    double(net_point_bits(gen, std::uint64_t(i), j)) * inv;
	return ps;
}

/// Generator matrices of the identity net (dimension j = van der Corput).
inline std::vector<std::uint64_t> identity_columns(int m)
{
	std::vector<std::uint64_t> cols(m);
	for (int k = 0; k < m; ++k) cols[k] = std::uint64_t(1) << (m - 1 - k);
	return cols;
}

/// Permutation-matrix net: matrix j has its single 1 of column k in row
/// perm[j][k] (1-based rows). perm[j] must be a permutation of 1..m.
inline NetGenerators permutation_net(int m, const std::vector<std::vector<int>>& perms)
{
	NetGenerators gen;
	gen.m = m;
	gen.d = int(perms.size());
	gen.cols.resize(perms.size());
	for (std::size_t j = 0; j < perms.size(); ++j) {
		if (perms[j].size() != std::size_t(m))
			throw PreconditionError("permutation_net: permutation length != m");
		gen.cols[j].resize(m);
		for (int k = 0; k < m; ++k) {
			const int row = perms[j][k];
			if (row < 1 || row > m)
				throw PreconditionError("permutation_net: row index out of range");
			gen.cols[j][k] = std::uint64_t(1) << (m - row);
		}
	}
	gen.validate();
	if (!gen.is_permutation_net())
		throw PreconditionError("permutation_net: not a permutation (row reused)");
	return gen;
}

/// The Hammersley pair (i/n, vdc(i)) as a permutation net: digit-reversal
/// and identity matrices.
inline NetGenerators hammersley_net(int m)
{
	std::vector<int> reversal(m), identity(m);
	for (int k = 0; k < m; ++k) {
		reversal[k] = m - k;
		identity[k] = k + 1;
	}
	return permutation_net(m, {reversal, identity});
}

/// Sobol' generator matrices from direction numbers; the Gray-code
/// enumeration of reference implementations is composed into the
/// matrices, so plain digital_net() reproduces the standard sequence
/// order (dimension 1: 0, 1/2, 3/4, 1/4, ...).
inline NetGenerators sobol_generators(int d, int m,
                                      const DirectionTable& table = default_direction_table())
{
	if (d < 1) throw PreconditionError("sobol_generators: dimension must be >= 1");
	if (m < 0 || m > 62) throw PreconditionError("sobol_generators: bits out of range");
	NetGenerators gen;
	gen.d = d;
	gen.m = m;
	gen.cols.resize(d);
	for (int j = 0; j < d; ++j) {
		const auto mk = direction_numbers(table, j + 1, m);
		auto& cols = gen.cols[j];
		cols.resize(m);
		// column k (0-based) is m_{k+1} / 2^{k+1} as an m-bit fraction
		for (int k = 0; k < m; ++k) cols[k] = mk[k] << (m - 1 - k);
		// fold in the Gray-code digit map: C <- C * G, G bidiagonal
		for (int k = m - 1; k >= 1; --k) cols[k] ^= cols[k - 1];
	}
	return gen;
}

/// Standard Sobol' net on 2^m points in d dimensions.
inline PointSet sobol_net(int d, int m,
                          const DirectionTable& table = default_direction_table())
{
	PointSet ps = digital_net(sobol_generators(d, m, table));
	ps.meta["kind"] = "sobol";
	return ps;
}

/// Rank-1 lattice: point i = (i * z mod n) / n componentwise, i = 0..n-1.
inline PointSet rank1_lattice(const LatticeSpec& spec, int d)
{
	spec.validate();
	if (d < 1 || spec.z.size() != std::size_t(d))
		throw PreconditionError("rank1_lattice: generating vector length != d");
	PointSet ps;
	ps.n = spec.n;
	ps.d = d;
	ps.construction = Construction::lattice;
	ps.coords.resize(std::size_t(spec.n) * d);
	for (std::int64_t i = 0; i < spec.n; ++i)
		for (int j = 0; j < d; ++j) {
			const std::int64_t r = (i * spec.z[j]) % spec.n;
			ps.coords[std::size_t(i) * d + j] = double(r) / double(spec.n);
		}
	return ps;
}

/// Korobov generating vector (1, a, a^2, ...) mod n with the golden-ratio
/// multiplier, used as the library's default lattice for a given (n, d).
inline LatticeSpec korobov_lattice(std::int64_t n, int d)
{
	LatticeSpec spec;
	spec.n = n;
	spec.z.resize(d);
	if (n == 1) {
		for (auto& z : spec.z) z = 0;
		return spec;
	}
	std::int64_t a = std::int64_t(0.6180339887498949 * double(n)) | 1;
	if (a >= n) a = n - 1;
	std::int64_t zk = 1;
	for (int j = 0; j < d; ++j) {
		spec.z[j] = zk == 0 ? 1 : zk;
		zk = (zk * a) % n;
	}
	return spec;
}

/// All concatenated pairs: n_a * n_b points of dimension d_a + d_b.
inline PointSet tensor_product(const PointSet& a, const PointSet& b)
{
	if (a.n > 0 && b.n > (std::int64_t(1) << 56) / a.n)
		throw PreconditionError("tensor_product: point count overflows");
	PointSet ps;
	ps.n = a.n * b.n;
	ps.d = a.d + b.d;
	ps.construction = Construction::tensor_product;
	ps.meta["factors"] = std::string(to_string(a.construction)) + "*" +
	                     to_string(b.construction);
	ps.coords.resize(std::size_t(ps.n) * ps.d);
	for (std::int64_t i = 0; i < a.n; ++i)
		for (std::int64_t k = 0; k < b.n; ++k) {
			double* row = ps.coords.data() + std::size_t(i * b.n + k) * ps.d;
			for (int j = 0; j < a.d; ++j) row[j] = a.at(i, j);
			for (int j = 0; j < b.d; ++j) row[a.d + j] = b.at(k, j);
		}
	return ps;
}

}  // namespace qmcuq
