// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Point-set CSV interchange: one header row x1..xd, one row per point,
// every value with 17 significant digits so round-trips are lossless.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qmcuq/errors.hpp"
#include "qmcuq/pointset.hpp"

namespace qmcuq {

/// Shortest lossless decimal form (up to 17 significant digits).
inline std::string format_full(double v)
{
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	return buf;
}

inline void write_points_csv(std::ostream& out, const PointSet& ps)
{
	for (int j = 0; j < ps.d; ++j)
		out << (j ? "," : "") << "x" << (j + 1);
	out << "\n";
	for (std::int64_t i = 0; i < ps.n; ++i) {
		for (int j = 0; j < ps.d; ++j)
			out << (j ? "," : "") << format_full(ps.at(i, j));
		out << "\n";
	}
}

inline void write_points_csv(const std::string& path, const PointSet& ps)
{
	std::ofstream out(path);
	if (!out) throw ParseError("cannot open for writing: " + path);
	write_points_csv(out, ps);
}

inline PointSet read_points_csv(std::istream& in)
{
	std::vector<double> coords;
	std::string line;
	int d = 0;
	std::int64_t n = 0;
	bool header_skipped = false;
	while (std::getline(in, line)) {
		if (line.empty()) continue;
		if (!header_skipped) {
			header_skipped = true;
			if (line.find("x1") != std::string::npos && line.find('.') == std::string::npos)
				continue;  // header row
		}
		std::istringstream row(line);
		std::string cell;
		int cols = 0;
		while (std::getline(row, cell, ',')) {
			try {
				coords.push_back(std::stod(cell));
			} catch (const std::exception&) {
				throw ParseError("points CSV: bad value '" + cell + "'");
			}
			++cols;
		}
		if (d == 0)
			d = cols;
		else if (cols != d)
			throw ParseError("points CSV: ragged row");
		++n;
	}
	if (n == 0) throw ParseError("points CSV: no data rows");
	return make_explicit(std::move(coords), n, d);
}

inline PointSet read_points_csv(const std::string& path)
{
	std::ifstream in(path);
	if (!in) throw ParseError("cannot open: " + path);
	return read_points_csv(in);
}

}  // namespace qmcuq
