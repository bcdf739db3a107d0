// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Batch experiments over the (integrand x d x n x R x randomizer x CI)
// grid: coverage studies with the binomial confirmed-failure rule, RMSE
// convergence-rate fits, and kurtosis-growth diagnostics.
//
// Grid cells are independent jobs run on a fixed worker pool; results are
// merged in grid order, so output is deterministic for a given
// (grid, T, seed) regardless of thread count.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qmcuq/errors.hpp"
#include "qmcuq/integrands.hpp"
#include "qmcuq/io.hpp"
#include "qmcuq/stats.hpp"
#include "qmcuq/uq.hpp"

namespace qmcuq {

namespace detail {

template <class Work>
void parallel_for(std::int64_t count, int threads, Work&& work)
{
	if (threads <= 1 || count <= 1) {
		for (std::int64_t i = 0; i < count; ++i) work(i);
		return;
	}
	std::atomic<std::int64_t> next{0};
	auto worker = [&] {
		for (;;) {
			const std::int64_t i = next.fetch_add(1);
			if (i >= count) return;
			work(i);
		}
	};
	std::vector<std::thread> pool;
	const int k = int(std::min<std::int64_t>(threads, count));
	pool.reserve(std::size_t(k));
	for (int t = 0; t < k; ++t) pool.emplace_back(worker);
	for (auto& t : pool) t.join();
}

}  // namespace detail

/// Largest k such that P(Binomial(T, p) < k) <= tail: a method with true
/// coverage >= p falls below k with probability at most `tail`.
inline std::int64_t coverage_threshold(std::int64_t T, double p = 0.94,
                                       double tail = 0.04)
{
	std::int64_t k = 0;
	for (std::int64_t c = 0; c <= T; ++c) {
		if (binomial_lower_tail(T, p, c - 1) <= tail)
			k = c;
		else
			break;
	}
	return k;
}

struct CoverageCell {
	std::string integrand;
	int d = 0;
	std::int64_t n = 0;
	int R = 0;
	RandomizerKind randomizer = RandomizerKind::nested_scramble;
	std::string ci;  // student | normal | percentile | boot-t | median | chebyshev
};

struct CoverageRow {
	CoverageCell cell;
	std::int64_t trials = 0;
	std::int64_t covered = 0;
	double coverage = 0.0;
	std::string verdict;  // ok | confirmed_failure
	double mean_width = 0.0;
	double width_sd = 0.0;
};

struct CoverageGrid {
	std::vector<std::string> integrands;
	std::vector<int> dims;
	std::vector<std::int64_t> ns;
	std::vector<int> Rs;
	std::vector<RandomizerKind> randomizers;
	std::vector<std::string> ci_methods;
	double alpha = 0.05;
	int bootstrap_B = 1000;
};

namespace detail {

inline Interval coverage_interval(const std::string& ci, const ReplicatePool& pool,
                                  const IntegrandDescriptor& f, double alpha,
                                  int B, std::uint64_t trial_seed)
{
	if (ci == "student") return ci_student(pool, alpha);
	if (ci == "normal") return ci_normal(pool, alpha);
	if (ci == "percentile")
		return bootstrap_percentile(pool, alpha, B, rng::derive_seed(trial_seed, 0xB007));
	if (ci == "boot-t")
		return bootstrap_t(pool, alpha, B, rng::derive_seed(trial_seed, 0xB007));
	if (ci == "median") return ci_median_order_stat(pool, alpha);
	if (ci == "chebyshev") {
		// known-sigma Chebyshev on the pooled mean; plain MC only, where
		// the n*R evaluations are independent
		if (std::isnan(f.exact_variance))
			throw PreconditionError("chebyshev: fixture has no known variance");
		const double sigma = std::sqrt(f.exact_variance);
		return ci_chebyshev(pool.mean(), sigma, pool.n * pool.R(), alpha);
	}
	throw PreconditionError("unknown CI method in coverage grid: " + ci);
}

inline bool cell_supported(const CoverageCell& cell, double alpha)
{
	if (cell.ci == "median") {
		// two-sided order-statistic interval must attain alpha
		return 2.0 * binomial_half_tail(cell.R, 1) <= alpha;
	}
	if (cell.ci == "chebyshev") return cell.randomizer == RandomizerKind::iid;
	if (cell.ci == "boot-t") return cell.R >= 3;
	return cell.R >= 2;
}

}  // namespace detail

/// All grid cells in deterministic (row-major) order, minus cells whose
/// CI preconditions cannot hold (reported via the skipped list).
inline std::vector<CoverageCell> expand_grid(const CoverageGrid& grid,
                                             std::vector<CoverageCell>* skipped = nullptr)
{
	std::vector<CoverageCell> cells;
	for (const auto& name : grid.integrands)
		for (int d : grid.dims)
			for (std::int64_t n : grid.ns)
				for (int R : grid.Rs)
					for (auto rand : grid.randomizers)
						for (const auto& ci : grid.ci_methods) {
							CoverageCell cell{name, d, n, R, rand, ci};
							if (detail::cell_supported(cell, grid.alpha))
								cells.push_back(cell);
							else if (skipped)
								skipped->push_back(cell);
						}
	return cells;
}

/// T independent trials per cell; each builds a fresh ReplicatePool and
/// interval. Verdict is confirmed_failure when the covered count falls
/// below the binomial threshold for the 0.94 bar.
inline std::vector<CoverageRow> coverage_study(const CoverageGrid& grid, std::int64_t T,
                                               std::uint64_t seed, int threads = 1)
{
	if (T < 100) throw PreconditionError("coverage_study: need T >= 100");
	const auto cells = expand_grid(grid);
	const std::int64_t threshold = coverage_threshold(T);
	std::vector<CoverageRow> rows(cells.size());

	// trial pools are shared across CI methods of the same
	// (integrand, d, n, R, randomizer) via identical derived seeds
	const auto pool_cell_id = [&](const CoverageCell& c) {
		std::uint64_t h = 0xcbf29ce484222325ull;
		const auto mix = [&h](std::uint64_t v) {
			h ^= v;
			h *= 0x100000001b3ull;
		};
		for (char ch : c.integrand) mix(std::uint64_t(ch));
		mix(std::uint64_t(c.d));
		mix(std::uint64_t(c.n));
		mix(std::uint64_t(c.R));
		mix(std::uint64_t(c.randomizer));
		return h;
	};

	detail::parallel_for(std::int64_t(cells.size()), threads, [&](std::int64_t idx) {
		const CoverageCell& cell = cells[std::size_t(idx)];
		const IntegrandDescriptor f = fixture(cell.integrand, cell.d);
		PointSpec spec{default_point_kind(cell.randomizer), cell.d};
		CoverageRow row;
		row.cell = cell;
		row.trials = T;
		double width_sum = 0.0, width_sq = 0.0;
		const std::uint64_t cell_id = pool_cell_id(cell);
		for (std::int64_t t = 0; t < T; ++t) {
			const std::uint64_t trial_seed = rng::derive_seed(seed, cell_id, std::uint64_t(t));
			const ReplicatePool pool =
			    rqmc_replicates(f, spec, cell.randomizer, cell.n, cell.R, trial_seed);
			const Interval iv = detail::coverage_interval(
			    cell.ci, pool, f, grid.alpha, grid.bootstrap_B, trial_seed);
			if (iv.lo <= f.exact_mean && f.exact_mean <= iv.hi) ++row.covered;
			const double w = iv.hi - iv.lo;
			width_sum += w;
			width_sq += w * w;
		}
		row.coverage = double(row.covered) / double(T);
		row.verdict = (row.covered < threshold) ? "confirmed_failure" : "ok";
		row.mean_width = width_sum / double(T);
		const double var =
		    (width_sq - width_sum * width_sum / double(T)) / double(T - 1);
		row.width_sd = var > 0.0 ? std::sqrt(var) : 0.0;
		rows[std::size_t(idx)] = std::move(row);
	});
	return rows;
}

inline std::string coverage_csv(const std::vector<CoverageRow>& rows)
{
	std::ostringstream out;
	out << "integrand,d,n,R,randomizer,ci,trials,covered,coverage,verdict,"
	       "mean_width,width_sd\n";
	for (const auto& r : rows) {
		out << r.cell.integrand << ',' << r.cell.d << ',' << r.cell.n << ','
		    << r.cell.R << ',' << to_string(r.cell.randomizer) << ',' << r.cell.ci
		    << ',' << r.trials << ',' << r.covered << ',' << format_full(r.coverage)
		    << ',' << r.verdict << ',' << format_full(r.mean_width) << ','
		    << format_full(r.width_sd) << "\n";
	}
	return out.str();
}

// ---------------------------------------------------------------------------
// RMSE convergence rates
// ---------------------------------------------------------------------------

struct RateRow {
	std::vector<std::int64_t> n_grid;
	std::vector<double> rmse;
	double slope = 0.0;      // least-squares slope in log2-log2 space
	double intercept = 0.0;
	bool excluded_smallest = false;  // pre-asymptotic transient dropped
};

namespace detail {

inline void fit_line(const std::vector<double>& xs, const std::vector<double>& ys,
                     double& slope, double& intercept)
{
	const double n = double(xs.size());
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		sx += xs[i];
		sy += ys[i];
		sxx += xs[i] * xs[i];
		sxy += xs[i] * ys[i];
	}
	slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
	intercept = (sy - slope * sx) / n;
}

}  // namespace detail

/// RMSE against the exact mean over a geometric n grid, with a
/// least-squares slope in log2 space. The smallest n is excluded when
/// its residual exceeds 3x the fit sd.
inline RateRow rate_study(const IntegrandDescriptor& f, const PointSpec& spec,
                          RandomizerKind randomizer,
                          const std::vector<std::int64_t>& n_grid, int R_per_n,
                          std::uint64_t seed)
{
	if (n_grid.size() < 4)
		throw PreconditionError("rate_study: need at least 4 n values");
	if (R_per_n < 2) throw PreconditionError("rate_study: need R_per_n >= 2");
	RateRow row;
	row.n_grid = n_grid;
	row.rmse.resize(n_grid.size());
	for (std::size_t k = 0; k < n_grid.size(); ++k) {
		const ReplicatePool pool =
		    rqmc_replicates(f, spec, randomizer, n_grid[k], R_per_n,
		                    rng::derive_seed(seed, std::uint64_t(k)));
		double mse = 0.0;
		for (double v : pool.values) {
			const double e = v - f.exact_mean;
			mse += e * e;
		}
		row.rmse[k] = std::sqrt(mse / double(R_per_n));
	}
	std::vector<double> xs, ys;
	for (std::size_t k = 0; k < n_grid.size(); ++k) {
		xs.push_back(std::log2(double(n_grid[k])));
		ys.push_back(std::log2(std::max(row.rmse[k], 1e-300)));
	}
	detail::fit_line(xs, ys, row.slope, row.intercept);
	// residual screen for the smallest n
	double ss = 0.0;
	for (std::size_t k = 0; k < xs.size(); ++k) {
		const double r = ys[k] - (row.intercept + row.slope * xs[k]);
		ss += r * r;
	}
	const double sd = std::sqrt(ss / double(xs.size()));
	const double r0 = std::fabs(ys[0] - (row.intercept + row.slope * xs[0]));
	if (sd > 0.0 && r0 > 3.0 * sd) {
		row.excluded_smallest = true;
		xs.erase(xs.begin());
		ys.erase(ys.begin());
		detail::fit_line(xs, ys, row.slope, row.intercept);
	}
	return row;
}

inline std::string rate_csv(const RateRow& row)
{
	std::ostringstream out;
	out << "n,rmse\n";
	for (std::size_t k = 0; k < row.n_grid.size(); ++k)
		out << row.n_grid[k] << ',' << format_full(row.rmse[k]) << "\n";
	out << "# slope," << format_full(row.slope) << "\n";
	out << "# intercept," << format_full(row.intercept) << "\n";
	out << "# excluded_smallest," << (row.excluded_smallest ? 1 : 0) << "\n";
	return out.str();
}

// ---------------------------------------------------------------------------
// Kurtosis growth
// ---------------------------------------------------------------------------

struct KurtosisPoint {
	std::int64_t n = 0;
	double ex_kurtosis = 0.0;  // NaN when the pool variance is zero
};

/// Sample excess kurtosis of the replicate estimate across many
/// independent randomizations, per n.
inline std::vector<KurtosisPoint> kurtosis_growth(const IntegrandDescriptor& f,
                                                  RandomizerKind randomizer,
                                                  const std::vector<std::int64_t>& n_grid,
                                                  int pool_size, std::uint64_t seed,
                                                  int threads = 1)
{
	if (pool_size < 1000)
		throw PreconditionError("kurtosis_growth: need pool_size >= 1000");
	std::vector<KurtosisPoint> points(n_grid.size());
	detail::parallel_for(std::int64_t(n_grid.size()), threads, [&](std::int64_t k) {
		PointSpec spec{default_point_kind(randomizer), f.d};
		const ReplicatePool pool =
		    rqmc_replicates(f, spec, randomizer, n_grid[std::size_t(k)], pool_size,
		                    rng::derive_seed(seed, std::uint64_t(k)));
		const Moments m = sample_moments(pool.values);
		points[std::size_t(k)] = {n_grid[std::size_t(k)],
		                          m.variance > 0.0 ? m.ex_kurtosis : NAN};
	});
	return points;
}

inline std::string kurtosis_csv(const std::vector<KurtosisPoint>& points)
{
	std::ostringstream out;
	out << "n,ex_kurtosis\n";
	for (const auto& p : points)
		out << p.n << ',' << (std::isnan(p.ex_kurtosis) ? "null" : format_full(p.ex_kurtosis))
		    << "\n";
	return out.str();
}

}  // namespace qmcuq
