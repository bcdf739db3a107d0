// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmcuq/errors.hpp"

namespace qmcuq {

enum class Construction {
	explicit_points,
	halton,
	hammersley,
	digital_net,
	lattice,
	tensor_product,
};

inline const char* to_string(Construction c)
{
	switch (c) {
	case Construction::explicit_points: return "explicit";
	case Construction::halton: return "halton";
	case Construction::hammersley: return "hammersley";
	case Construction::digital_net: return "digital_net";
	case Construction::lattice: return "lattice";
	case Construction::tensor_product: return "tensor_product";
	}
	return "?";
}

/// An n x d array of coordinates in [0,1), plus construction metadata.
/// Immutable by convention once built; safe to share across threads.
///
/// Coordinates equal to 1.0 are reserved for explicitly constructed
/// certificate point sets (the shift-flip construction and the d=1
/// right-endpoint rule); generated constructions always stay in [0,1).
struct PointSet {
	std::vector<double> coords;  // row-major, n*d
	std::int64_t n = 0;
	int d = 0;
	Construction construction = Construction::explicit_points;
	int base = 2;
	std::map<std::string, std::string> meta;

	double at(std::int64_t i, int j) const { return coords[std::size_t(i) * d + j]; }
	std::span<const double> row(std::int64_t i) const
	{
		return {coords.data() + std::size_t(i) * d, std::size_t(d)};
	}

	bool contains_unit_coordinate() const
	{
		for (double x : coords)
			if (x == 1.0) return true;
		return false;
	}

	/// Shape and range invariants. Unit coordinates are accepted only
	/// when allow_unit is set.
	void validate(bool allow_unit = false) const
	{
		if (n < 0 || d <= 0 || coords.size() != std::size_t(n) * d)
			throw PreconditionError("PointSet: shape mismatch");
		const double hi = allow_unit ? 1.0 : 1.0 - 0x1.0p-60;
		for (double x : coords)
			if (!(x >= 0.0 && (x < 1.0 || (allow_unit && x <= hi))))
				throw PreconditionError(
				    "PointSet: coordinate outside the unit cube");
	}
};

inline PointSet make_explicit(std::vector<double> coords, std::int64_t n, int d)
{
	PointSet ps;
	ps.coords = std::move(coords);
	ps.n = n;
	ps.d = d;
	ps.construction = Construction::explicit_points;
	ps.validate(/*allow_unit=*/true);
	return ps;
}

/// Base-2 digital net described by d generator matrices of shape m x m
/// over GF(2). Column k of matrix j is stored as an m-bit mask in
/// cols[j][k]: bit (m-r) of the mask is the row-r entry, so the mask is
/// directly the column's contribution to the m-bit output integer.
struct NetGenerators {
	int d = 0;
	int m = 0;
	std::vector<std::vector<std::uint64_t>> cols;  // cols[j].size() == m

	void validate() const
	{
		if (d <= 0 || m < 0 || m > 62 || cols.size() != std::size_t(d))
			throw PreconditionError("NetGenerators: bad shape");
		const std::uint64_t mask = (m == 0) ? 0 : ((std::uint64_t(1) << m) - 1);
		for (const auto& mat : cols) {
			if (mat.size() != std::size_t(m))
				throw PreconditionError("NetGenerators: matrix not m x m");
			for (std::uint64_t c : mat)
				if (c & ~mask)
					throw PreconditionError(
					    "NetGenerators: column has bits outside m rows");
		}
	}

	/// Matrix entry (row, col), 1-based rows/cols in 1..m.
	int entry(int j, int row, int col) const
	{
		return int((cols[j][col - 1] >> (m - row)) & 1u);
	}

	/// True when every matrix has exactly one 1 per row and per column.
	bool is_permutation_net() const
	{
		for (const auto& mat : cols) {
			std::uint64_t seen = 0;
			for (std::uint64_t c : mat) {
				if (c == 0 || (c & (c - 1)) != 0) return false;  // not one-hot
				if (seen & c) return false;                      // row reused
				seen |= c;
			}
		}
		return true;
	}
};

/// Rank-1 lattice: point i = (i * z mod n) / n componentwise.
/// No gcd conditions are enforced; the random-prime construction samples
/// z uniformly.
struct LatticeSpec {
	std::int64_t n = 0;
	std::vector<std::int64_t> z;

	void validate() const
	{
		if (n < 1) throw PreconditionError("LatticeSpec: n must be >= 1");
		for (auto zi : z)
			if (n > 1 && (zi < 1 || zi >= n))
				throw PreconditionError(
				    "LatticeSpec: generating-vector entry outside {1,...,n-1}");
	}
};

}  // namespace qmcuq
