// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Sobol' direction numbers in the Joe-Kuo text interchange format:
// whitespace-separated rows "d s a m_1 ... m_s" for dimensions >= 2;
// dimension 1 is the implicit van der Corput sequence in base 2.
#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qmcuq/direction_data.hpp"
#include "qmcuq/errors.hpp"

namespace qmcuq {

struct DirectionRow {
	int dimension = 0;                  // >= 2
	int degree = 0;                     // s
	std::uint64_t poly = 0;             // a: interior polynomial bits
	std::vector<std::uint64_t> m_init;  // m_1 ... m_s, all odd
};

using DirectionTable = std::vector<DirectionRow>;

inline DirectionTable parse_direction_table(std::istream& in)
{
	DirectionTable table;
	std::string line;
	int expected = 2;
	while (std::getline(in, line)) {
		std::istringstream row(line);
		std::string first;
		if (!(row >> first)) continue;           // blank line
		if (first == "d" || first[0] == '#') continue;  // header / comment
		DirectionRow r;
		r.dimension = std::stoi(first);
		if (!(row >> r.degree >> r.poly))
			throw ParseError("direction table: short row for dimension " + first);
		if (r.dimension != expected)
			throw ParseError("direction table: expected dimension " +
			                 std::to_string(expected) + ", got " + first);
		r.m_init.resize(r.degree);
		for (int k = 0; k < r.degree; ++k) {
			if (!(row >> r.m_init[k]))
				throw ParseError("direction table: missing m_i in dimension " + first);
			if (r.m_init[k] % 2 == 0 || r.m_init[k] >= (std::uint64_t(1) << (k + 1)))
				throw ParseError("direction table: invalid m_" + std::to_string(k + 1) +
				                 " in dimension " + first);
		}
		table.push_back(std::move(r));
		++expected;
	}
	return table;
}

inline DirectionTable load_direction_table(const std::string& path)
{
	std::ifstream in(path);
	if (!in) throw ParseError("cannot open direction table: " + path);
	return parse_direction_table(in);
}

/// The bundled Joe-Kuo table (dimensions 2..64).
inline const DirectionTable& default_direction_table()
{
	static const DirectionTable table = [] {
		std::istringstream in(detail::kDefaultDirectionTable);
		return parse_direction_table(in);
	}();
	return table;
}

/// Direction numbers m_1..m_bits for one dimension (1-based; dimension 1
/// is van der Corput). Extends the tabulated values by the standard
/// primitive-polynomial recurrence.
inline std::vector<std::uint64_t> direction_numbers(const DirectionTable& table,
                                                    int dimension, int bits)
{
	std::vector<std::uint64_t> m(bits);
	if (dimension == 1) {
		for (int k = 0; k < bits; ++k) m[k] = 1;
		return m;
	}
	const std::size_t idx = std::size_t(dimension - 2);
	if (idx >= table.size())
		throw PreconditionError("direction table covers " +
		                        std::to_string(table.size() + 1) +
		                        " dimensions; dimension " +
		                        std::to_string(dimension) + " requested");
	const DirectionRow& row = table[idx];
	const int s = row.degree;
	for (int k = 0; k < bits && k < s; ++k) m[k] = row.m_init[k];
	for (int k = s; k < bits; ++k) {
		std::uint64_t v = m[k - s] ^ (m[k - s] << s);
		for (int t = 1; t <= s - 1; ++t)
			if ((row.poly >> (s - 1 - t)) & 1) v ^= m[k - t] << t;
		m[k] = v;
	}
	return m;
}

}  // namespace qmcuq
