// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Exact local and star discrepancy by grid-corner enumeration, and
// verification of the NNLD / NPLD sign properties.
//
// The local discrepancy uses the half-open box [0,a): strict inequality
// on every coordinate. Over each cell of the grid spanned by the point
// coordinates, delta(a) is monotone in the box volume, so its extremes
// are attained at cell corners; enumerating corners with the paired
// strict / non-strict counts gives the exact supremum of |delta|.
#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qmcuq/errors.hpp"
#include "qmcuq/pointset.hpp"

namespace qmcuq {

inline constexpr long long kDefaultCornerBudget = 100'000'000;  // corner-point pairs
inline constexpr double kSignSlack = 1e-12;  // tolerance for NNLD/NPLD sign checks

struct DiscrepancyReport {
	double d_star = 0.0;
	std::vector<double> argmax;  // corner attaining D*
	bool nnld = false;
	bool npld = false;
	std::int64_t grid_size = 0;  // corners examined
};

/// delta(a) = (fraction of points in [0,a)) - vol([0,a)).
inline double local_discrepancy(const PointSet& ps, std::span<const double> corner)
{
	if (int(corner.size()) != ps.d)
		throw PreconditionError("local_discrepancy: corner dimension mismatch");
	std::int64_t count = 0;
	for (std::int64_t i = 0; i < ps.n; ++i) {
		const auto row = ps.row(i);
		bool inside = true;
		for (int j = 0; j < ps.d; ++j)
			if (!(row[j] < corner[j])) {
				inside = false;
				break;
			}
		count += inside;
	}
	double vol = 1.0;
	for (double a : corner) vol *= a;
	return double(count) / double(ps.n) - vol;
}

namespace detail {

/// Sorted distinct coordinate values per dimension, optionally with the
/// sentinel appended (1 for upper corners, 0 prepended for lower).
inline std::vector<std::vector<double>> coordinate_grid(const PointSet& ps,
                                                        bool with_one, bool with_zero)
{
	std::vector<std::vector<double>> grid(ps.d);
	for (int j = 0; j < ps.d; ++j) {
		auto& g = grid[j];
		g.reserve(std::size_t(ps.n) + 1);
		for (std::int64_t i = 0; i < ps.n; ++i) g.push_back(ps.at(i, j));
		if (with_one) g.push_back(1.0);
		if (with_zero) g.push_back(0.0);
		std::sort(g.begin(), g.end());
		g.erase(std::unique(g.begin(), g.end()), g.end());
	}
	return grid;
}

inline std::int64_t grid_corner_count(const std::vector<std::vector<double>>& grid)
{
	std::int64_t corners = 1;
	for (const auto& g : grid) {
		if (corners > (std::int64_t(1) << 62) / std::int64_t(g.size()))
			return std::int64_t(1) << 62;
		corners *= std::int64_t(g.size());
	}
	return corners;
}

inline void check_budget(std::int64_t corners, std::int64_t n, long long budget,
                         const char* op)
{
	const long long pairs =
	    (corners > (std::int64_t(1) << 62) / std::max<std::int64_t>(n, 1))
	        ? (std::int64_t(1) << 62)
	        : corners * n;
	if (pairs > budget)
		throw BudgetError(std::string(op) + ": enumeration needs " +
		                      std::to_string(pairs) + " corner-point pairs (budget " +
		                      std::to_string(budget) + ")",
		                  pairs);
}

/// Visit every corner of the grid in lexicographic order.
/// fn(corner, indices) may return false to stop early.
template <class Fn>
void for_each_corner(const std::vector<std::vector<double>>& grid, Fn&& fn)
{
	const int d = int(grid.size());
	std::vector<std::size_t> idx(d, 0);
	std::vector<double> corner(d);
	for (int j = 0; j < d; ++j) corner[j] = grid[j][0];
	for (;;) {
		if (!fn(corner)) return;
		int j = d - 1;
		for (; j >= 0; --j) {
			if (++idx[j] < grid[j].size()) {
				corner[j] = grid[j][idx[j]];
				break;
			}
			idx[j] = 0;
			corner[j] = grid[j][0];
		}
		if (j < 0) return;
	}
}

struct CornerCounts {
	std::int64_t le = 0;  // points with x <= g on every coordinate
	std::int64_t lt = 0;  // points with x <  g on every coordinate
};

inline CornerCounts count_at(const PointSet& ps, std::span<const double> corner)
{
	CornerCounts c;
	for (std::int64_t i = 0; i < ps.n; ++i) {
		const auto row = ps.row(i);
		bool le = true, lt = true;
		for (int j = 0; j < ps.d; ++j) {
			const double x = row[j], g = corner[j];
			if (x > g) {
				le = lt = false;
				break;
			}
			if (x == g) lt = false;
		}
		c.le += le;
		c.lt += lt && le;
	}
	return c;
}

}  // namespace detail

/// Exact star discrepancy: D* = max over corners g of the coordinate grid
/// (values plus 1) of max(count_le(g)/n - vol(g), vol(g) - count_lt(g)/n).
inline DiscrepancyReport star_discrepancy_exact(const PointSet& ps,
                                                long long budget = kDefaultCornerBudget)
{
	if (ps.n < 1) throw PreconditionError("star_discrepancy_exact: empty point set");
	const auto grid = detail::coordinate_grid(ps, /*with_one=*/true, /*with_zero=*/false);
	const std::int64_t corners = detail::grid_corner_count(grid);
	detail::check_budget(corners, ps.n, budget, "star_discrepancy_exact");

	DiscrepancyReport report;
	report.grid_size = corners;
	const double inv_n = 1.0 / double(ps.n);
	detail::for_each_corner(grid, [&](const std::vector<double>& corner) {
		const auto c = detail::count_at(ps, corner);
		double vol = 1.0;
		for (double g : corner) vol *= g;
		const double over = double(c.le) * inv_n - vol;
		const double under = vol - double(c.lt) * inv_n;
		const double value = std::max(over, under);
		if (value > report.d_star) {
			report.d_star = value;
			report.argmax = corner;
		}
		return true;
	});
	report.d_star = std::max(report.d_star, 0.0);
	return report;
}

struct SignCheck {
	bool holds = true;
	double worst = 0.0;          // most violating signed discrepancy value
	std::vector<double> witness;  // corner attaining it
	std::int64_t grid_size = 0;
};

/// NNLD: inf over a of delta(a) >= 0. The infimum over each grid cell is
/// attained at its upper corner with the strict count.
inline SignCheck verify_nnld_check(const PointSet& ps,
                                   long long budget = kDefaultCornerBudget)
{
	const auto grid = detail::coordinate_grid(ps, /*with_one=*/true, /*with_zero=*/false);
	const std::int64_t corners = detail::grid_corner_count(grid);
	detail::check_budget(corners, ps.n, budget, "verify_nnld");
	SignCheck check;
	check.grid_size = corners;
	const double inv_n = 1.0 / double(ps.n);
	detail::for_each_corner(grid, [&](const std::vector<double>& corner) {
		const auto c = detail::count_at(ps, corner);
		double vol = 1.0;
		for (double g : corner) vol *= g;
		const double delta = double(c.lt) * inv_n - vol;
		if (delta < check.worst) {
			check.worst = delta;
			check.witness = corner;
		}
		return true;
	});
	check.holds = check.worst >= -kSignSlack;
	return check;
}

/// NPLD: sup over a of delta(a) <= 0. The supremum over each grid cell is
/// attained just above its lower corner, i.e. with the non-strict count.
inline SignCheck verify_npld_check(const PointSet& ps,
                                   long long budget = kDefaultCornerBudget)
{
	const auto grid = detail::coordinate_grid(ps, /*with_one=*/false, /*with_zero=*/true);
	const std::int64_t corners = detail::grid_corner_count(grid);
	detail::check_budget(corners, ps.n, budget, "verify_npld");
	SignCheck check;
	check.grid_size = corners;
	const double inv_n = 1.0 / double(ps.n);
	detail::for_each_corner(grid, [&](const std::vector<double>& corner) {
		const auto c = detail::count_at(ps, corner);
		double vol = 1.0;
		for (double g : corner) vol *= g;
		const double delta = double(c.le) * inv_n - vol;
		if (delta > check.worst) {
			check.worst = delta;
			check.witness = corner;
		}
		return true;
	});
	check.holds = check.worst <= kSignSlack;
	return check;
}

inline bool verify_nnld(const PointSet& ps, long long budget = kDefaultCornerBudget)
{
	return verify_nnld_check(ps, budget).holds;
}

inline bool verify_npld(const PointSet& ps, long long budget = kDefaultCornerBudget)
{
	return verify_npld_check(ps, budget).holds;
}

/// Full report: exact star discrepancy plus both sign properties.
inline DiscrepancyReport analyze_discrepancy(const PointSet& ps,
                                             long long budget = kDefaultCornerBudget)
{
	DiscrepancyReport report = star_discrepancy_exact(ps, budget);
	report.nnld = verify_nnld(ps, budget);
	report.npld = verify_npld(ps, budget);
	return report;
}

}  // namespace qmcuq
