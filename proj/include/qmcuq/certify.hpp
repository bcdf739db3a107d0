// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Guaranteed brackets for the integral: endpoint rules for nondecreasing
// 1-D integrands, midpoint/trapezoid with Simpson refinement for convex
// 1-D integrands, tensor and simplex brackets for convex multivariate
// integrands, and the NNLD/NPLD bracket for completely monotone
// integrands.
//
// A bracket is only as good as its hypothesis, so every operation
// requires the matching property to be declared on the integrand and
// refuses undeclared inputs.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qmcuq/discrepancy.hpp"
#include "qmcuq/errors.hpp"
#include "qmcuq/integrands.hpp"
#include "qmcuq/pointgen.hpp"
#include "qmcuq/pointset.hpp"
#include "qmcuq/rng.hpp"

namespace qmcuq {

enum class Assumption {
	monotone_1d,
	convex_1d,
	convex_product,
	convex_simplex,
	completely_monotone,
};

inline const char* to_string(Assumption a)
{
	switch (a) {
	case Assumption::monotone_1d: return "monotone_1d";
	case Assumption::convex_1d: return "convex_1d";
	case Assumption::convex_product: return "convex_product";
	case Assumption::convex_simplex: return "convex_simplex";
	case Assumption::completely_monotone: return "completely_monotone";
	}
	return "?";
}

/// Two computable numbers lower <= upper certain to bracket the mean,
/// plus a designated estimate inside the bracket.
struct Certificate {
	double lower = 0.0;
	double upper = 0.0;
	double estimate = 0.0;
	std::int64_t n_evals = 0;
	Assumption assumption = Assumption::monotone_1d;
	std::map<std::string, std::string> meta;
};

namespace detail {

inline void require_property(const IntegrandDescriptor& f, Property p,
                             const char* op, const char* what)
{
	if (!f.has(p))
		throw PreconditionError(std::string(op) + ": integrand '" + f.name +
		                        "' does not declare " + what);
}

inline double eval1(const IntegrandDescriptor& f, double x)
{
	return f(std::span<const double>(&x, 1));
}

}  // namespace detail

/// Left and right endpoint rules for nondecreasing f on [0,1]:
/// lower = (1/n) sum f((i-1)/n), upper = (1/n) sum f(i/n).
/// The interior evaluations are shared, n+1 evaluations total.
inline Certificate bracket_endpoint(const IntegrandDescriptor& f, std::int64_t n)
{
	detail::require_property(f, kMonotone1d, "bracket_endpoint", "monotone_1d");
	if (f.d != 1) throw PreconditionError("bracket_endpoint: integrand must be 1-D");
	if (n < 1) throw PreconditionError("bracket_endpoint: n must be >= 1");
	const std::int64_t before = f.eval_count();
	double lower = 0.0, upper = 0.0;
	double prev = detail::eval1(f, 0.0);
	for (std::int64_t i = 1; i <= n; ++i) {
		const double cur = detail::eval1(f, double(i) / double(n));
		lower += prev;
		upper += cur;
		prev = cur;
	}
	Certificate cert;
	cert.lower = lower / double(n);
	cert.upper = upper / double(n);
	cert.estimate = 0.5 * (cert.lower + cert.upper);
	cert.n_evals = f.eval_count() - before;
	cert.assumption = Assumption::monotone_1d;
	cert.meta["n"] = std::to_string(n);
	return cert;
}

/// Midpoint rule (below, by Jensen) and trapezoid rule (above, by the
/// secant inequality) for convex f on [0,1]; 2n+1 evaluations. The
/// designated estimate is Simpson's rule (2 Mid + Trap) / 3, which
/// cancels the opposing leading error terms.
inline Certificate bracket_mid_trap(const IntegrandDescriptor& f, std::int64_t n)
{
	detail::require_property(f, kConvex, "bracket_mid_trap", "convexity");
	if (f.d != 1) throw PreconditionError("bracket_mid_trap: integrand must be 1-D");
	if (n < 1) throw PreconditionError("bracket_mid_trap: n must be >= 1");
	const std::int64_t before = f.eval_count();
	double mid = 0.0;
	for (std::int64_t i = 1; i <= n; ++i)
		mid += detail::eval1(f, (double(i) - 0.5) / double(n));
	mid /= double(n);
	double trap = 0.5 * (detail::eval1(f, 0.0) + detail::eval1(f, 1.0));
	for (std::int64_t i = 1; i <= n - 1; ++i)
		trap += detail::eval1(f, double(i) / double(n));
	trap /= double(n);
	Certificate cert;
	cert.lower = mid;
	cert.upper = trap;
	cert.estimate = (2.0 * mid + trap) / 3.0;  // Simpson
	cert.n_evals = f.eval_count() - before;
	cert.assumption = Assumption::convex_1d;
	cert.meta["n"] = std::to_string(n);
	cert.meta["simpson"] = std::to_string(cert.estimate);
	return cert;
}

/// Tensor bracket for jointly convex f on [0,1]^d: partition into m^d
/// congruent boxes; lower = average of f at box centers (Jensen), upper =
/// average over boxes of the mean of f on the 2^d box corners. Corner
/// evaluations are shared across adjacent boxes: (m+1)^d + m^d total.
inline Certificate bracket_product_convex(const IntegrandDescriptor& f, int m, int d)
{
	detail::require_property(f, kConvex, "bracket_product_convex", "convexity");
	if (d != f.d) throw PreconditionError("bracket_product_convex: dimension mismatch");
	if (m < 1) throw PreconditionError("bracket_product_convex: m must be >= 1");
	double cells = 1.0, corners = 1.0;
	for (int j = 0; j < d; ++j) {
		cells *= double(m);
		corners *= double(m + 1);
	}
	if (cells + corners > 5e7)
		throw BudgetError("bracket_product_convex: too many evaluations",
		                  (long long)(cells + corners));

	const std::int64_t before = f.eval_count();
	std::vector<double> x(d);
	std::vector<std::int64_t> idx(d, 0);

	double lower = 0.0;
	const std::int64_t n_cells = std::int64_t(cells);
	for (std::int64_t c = 0; c < n_cells; ++c) {
		std::int64_t rem = c;
		for (int j = 0; j < d; ++j) {
			x[j] = (double(rem % m) + 0.5) / double(m);
			rem /= m;
		}
		lower += f(x);
	}
	lower /= cells;

	// Corner g contributes to every adjacent box: weight 1 on the faces,
	// 2 inside, per axis; normalized by m^d 2^d.
	double upper = 0.0;
	const std::int64_t n_corners = std::int64_t(corners);
	for (std::int64_t c = 0; c < n_corners; ++c) {
		std::int64_t rem = c;
		double weight = 1.0;
		for (int j = 0; j < d; ++j) {
			const std::int64_t k = rem % (m + 1);
			rem /= (m + 1);
			x[j] = double(k) / double(m);
			if (k != 0 && k != m) weight *= 2.0;
		}
		upper += weight * f(x);
	}
	upper /= cells * std::pow(2.0, d);

	Certificate cert;
	cert.lower = lower;
	cert.upper = upper;
	cert.estimate = 0.5 * (lower + upper);
	cert.n_evals = f.eval_count() - before;
	cert.assumption = Assumption::convex_product;
	cert.meta["m"] = std::to_string(m);
	return cert;
}

/// A simplex with d+1 vertices in R^d.
struct SimplexSpec {
	std::vector<std::vector<double>> vertices;  // (d+1) x d
	double volume = 0.0;

	int dim() const { return vertices.empty() ? 0 : int(vertices.front().size()); }

	/// |det of edge matrix| / d!.
	static double compute_volume(const std::vector<std::vector<double>>& verts)
	{
		const int d = int(verts.size()) - 1;
		std::vector<double> a(std::size_t(d) * d);
		for (int r = 0; r < d; ++r)
			for (int c = 0; c < d; ++c)
				a[std::size_t(r) * d + c] = verts[r + 1][c] - verts[0][c];
		// Gaussian elimination with partial pivoting
		double det = 1.0;
		for (int c = 0; c < d; ++c) {
			int pivot = c;
			for (int r = c + 1; r < d; ++r)
				if (std::fabs(a[std::size_t(r) * d + c]) >
				    std::fabs(a[std::size_t(pivot) * d + c]))
					pivot = r;
			if (pivot != c) {
				for (int k = 0; k < d; ++k)
					std::swap(a[std::size_t(pivot) * d + k], a[std::size_t(c) * d + k]);
				det = -det;
			}
			const double p = a[std::size_t(c) * d + c];
			if (p == 0.0) return 0.0;
			det *= p;
			for (int r = c + 1; r < d; ++r) {
				const double factor = a[std::size_t(r) * d + c] / p;
				for (int k = c; k < d; ++k)
					a[std::size_t(r) * d + k] -= factor * a[std::size_t(c) * d + k];
			}
		}
		double fact = 1.0;
		for (int k = 2; k <= d; ++k) fact *= k;
		return std::fabs(det) / fact;
	}

	static SimplexSpec from_vertices(std::vector<std::vector<double>> verts)
	{
		SimplexSpec s;
		s.volume = compute_volume(verts);
		s.vertices = std::move(verts);
		if (int(s.vertices.size()) != s.dim() + 1)
			throw PreconditionError("SimplexSpec: need d+1 vertices in R^d");
		return s;
	}

	void validate() const
	{
		if (int(vertices.size()) != dim() + 1)
			throw PreconditionError("SimplexSpec: need d+1 vertices in R^d");
		const double v = compute_volume(vertices);
		if (!(volume > 0.0))
			throw PreconditionError("SimplexSpec: degenerate simplex (volume <= 0)");
		if (std::fabs(v - volume) > 1e-12 * std::max(1.0, std::fabs(volume)))
			throw PreconditionError("SimplexSpec: stored volume disagrees with vertices");
	}
};

/// Centroid value below, vertex average above, for convex f; bounds are
/// for the volume-normalized integral over the simplex.
inline Certificate bracket_simplex(const IntegrandDescriptor& f, const SimplexSpec& s)
{
	detail::require_property(f, kConvex, "bracket_simplex", "convexity");
	s.validate();
	const int d = s.dim();
	if (d != f.d) throw PreconditionError("bracket_simplex: dimension mismatch");
	const std::int64_t before = f.eval_count();
	std::vector<double> centroid(d, 0.0);
	for (const auto& v : s.vertices)
		for (int j = 0; j < d; ++j) centroid[j] += v[j] / double(d + 1);
	const double lower = f(centroid);
	double upper = 0.0;
	for (const auto& v : s.vertices) upper += f(v);
	upper /= double(d + 1);
	Certificate cert;
	cert.lower = lower;
	cert.upper = upper;
	cert.estimate = 0.5 * (lower + upper);
	cert.n_evals = f.eval_count() - before;
	cert.assumption = Assumption::convex_simplex;
	cert.meta["volume"] = std::to_string(s.volume);
	return cert;
}

/// Kuhn triangulation of [0,1]^d: d! simplices of volume 1/d!, one per
/// coordinate ordering. Simplex of permutation pi has vertices
/// v_0 = 0, v_k = v_{k-1} + e_{pi(k)}.
inline std::vector<SimplexSpec> kuhn_triangulate(int d)
{
	if (d < 1 || d > 6) throw PreconditionError("kuhn_triangulate: d must be in 1..6");
	std::vector<int> perm(d);
	std::iota(perm.begin(), perm.end(), 0);
	double fact = 1.0;
	for (int k = 2; k <= d; ++k) fact *= k;
	std::vector<SimplexSpec> simplices;
	do {
		SimplexSpec s;
		s.vertices.assign(std::size_t(d) + 1, std::vector<double>(d, 0.0));
		for (int k = 1; k <= d; ++k) {
			s.vertices[k] = s.vertices[k - 1];
			s.vertices[k][perm[k - 1]] = 1.0;
		}
		s.volume = 1.0 / fact;
		simplices.push_back(std::move(s));
	} while (std::next_permutation(perm.begin(), perm.end()));
	return simplices;
}

/// Bracket for the mean over [0,1]^d of a convex integrand by summing
/// per-simplex brackets over the Kuhn triangulation. Evaluations at
/// exact-match vertices are reused across simplices.
inline Certificate bracket_kuhn_simplex(const IntegrandDescriptor& f, int d)
{
	detail::require_property(f, kConvex, "bracket_kuhn_simplex", "convexity");
	if (d != f.d) throw PreconditionError("bracket_kuhn_simplex: dimension mismatch");
	const std::int64_t before = f.eval_count();
	std::map<std::vector<double>, double> vertex_cache;
	const auto eval_vertex = [&](const std::vector<double>& v) {
		auto it = vertex_cache.find(v);
		if (it != vertex_cache.end()) return it->second;
		const double value = f(v);
		vertex_cache.emplace(v, value);
		return value;
	};
	double lower = 0.0, upper = 0.0, total_volume = 0.0;
	std::size_t simplex_count = 0;
	std::vector<double> centroid(d);
	for (const auto& s : kuhn_triangulate(d)) {
		std::fill(centroid.begin(), centroid.end(), 0.0);
		for (const auto& v : s.vertices)
			for (int j = 0; j < d; ++j) centroid[j] += v[j] / double(d + 1);
		lower += s.volume * f(centroid);
		double vert_mean = 0.0;
		for (const auto& v : s.vertices) vert_mean += eval_vertex(v);
		upper += s.volume * vert_mean / double(d + 1);
		total_volume += s.volume;
		++simplex_count;
	}
	Certificate cert;
	cert.lower = lower / total_volume;
	cert.upper = upper / total_volume;
	cert.estimate = 0.5 * (cert.lower + cert.upper);
	cert.n_evals = f.eval_count() - before;
	cert.assumption = Assumption::convex_simplex;
	cert.meta["simplices"] = std::to_string(simplex_count);
	return cert;
}

/// Randomized evidence (not proof) that f is completely monotone:
/// alternating sums over random corner pairs x <= z and random nonempty
/// subsets u must all be >= -epsilon.
struct MonotonicityEvidence {
	bool passed = true;
	std::int64_t trials = 0;
	std::int64_t violations = 0;
	double worst = 0.0;
	std::vector<double> witness_x, witness_z;
	std::vector<int> witness_u;
};

inline MonotonicityEvidence is_completely_monotone_sample(const IntegrandDescriptor& f,
                                                          std::int64_t trials,
                                                          std::uint64_t seed = 1,
                                                          double epsilon = 1e-9)
{
	if (trials < 1)
		throw PreconditionError("is_completely_monotone_sample: trials must be >= 1");
	const int d = f.d;
	if (d > 20)
		throw BudgetError("is_completely_monotone_sample: 2^d alternating-sum "
		                  "terms are infeasible past d = 20",
		                  std::int64_t(1) << d);
	MonotonicityEvidence report;
	report.trials = trials;
	rng::Stream stream(seed, rng::kRoleGeneric);
	std::vector<double> x(d), z(d), point(d);
	for (std::int64_t t = 0; t < trials; ++t) {
		for (int j = 0; j < d; ++j) {
			double a = stream.next_u53(), b = stream.next_u53();
			x[j] = std::min(a, b);
			z[j] = std::max(a, b);
		}
		unsigned u = 0;
		while (u == 0) u = unsigned(stream.next_below((std::uint64_t(1) << d)));
		// sum over v subset of u of (-1)^{|u - v|} f(x_{-v} : z_v)
		double sum = 0.0;
		const int bits = int(std::popcount(u));
		for (unsigned v = u;; v = (v - 1) & u) {
			for (int j = 0; j < d; ++j)
				point[j] = ((v >> j) & 1u) ? z[j] : x[j];
			const int sign = ((bits - std::popcount(v)) % 2 == 0) ? 1 : -1;
			sum += sign * f(point);
			if (v == 0) break;
		}
		if (sum < -epsilon) {
			++report.violations;
			if (sum < report.worst) {
				report.worst = sum;
				report.witness_x = x;
				report.witness_z = z;
				report.witness_u.clear();
				for (int j = 0; j < d; ++j)
					if ((u >> j) & 1u) report.witness_u.push_back(j + 1);
			}
		}
	}
	report.passed = report.violations == 0;
	return report;
}

/// Shift-flip of a 2-D point set whose first coordinates are
/// {0, 1/n, ..., (n-1)/n}: x~_i = (x_i1 + 1/n, 1 - x_i2). The result has
/// NPLD. A first coordinate of exactly 1.0 is retained; a second
/// coordinate that lands on exactly 1.0 is clamped to 1 - 2^-53 and
/// flagged in the metadata.
inline PointSet shift_flip(const PointSet& ps, std::int64_t n)
{
	if (ps.d != 2) throw PreconditionError("shift_flip: point set must be 2-D");
	if (ps.n != n) throw PreconditionError("shift_flip: n mismatch");
	PointSet out = ps;
	out.construction = Construction::explicit_points;
	out.meta["transform"] = "shift_flip";
	bool clamped = false;
	for (std::int64_t i = 0; i < n; ++i) {
		const double x1 = ps.at(i, 0);
		const double scaled = x1 * double(n);
		if (std::fabs(scaled - std::round(scaled)) > 1e-9 || x1 >= 1.0)
			throw PreconditionError(
			    "shift_flip: first coordinates must be {0, 1/n, ..., (n-1)/n}");
		out.coords[std::size_t(i) * 2] = x1 + 1.0 / double(n);
		double flipped = 1.0 - ps.at(i, 1);
		if (flipped >= 1.0) {
			flipped = 1.0 - 0x1.0p-53;
			clamped = true;
		}
		out.coords[std::size_t(i) * 2 + 1] = flipped;
	}
	if (clamped) out.meta["second_coordinate_clamped"] = "1";
	return out;
}

/// Left-endpoint grid {0, 1/n, ..., (n-1)/n}: the 1-D NNLD set.
inline PointSet left_endpoint_grid(std::int64_t n)
{
	std::vector<double> coords(static_cast<std::size_t>(n));
	for (std::int64_t i = 0; i < n; ++i) coords[std::size_t(i)] = double(i) / double(n);
	return make_explicit(std::move(coords), n, 1);
}

/// Right-endpoint grid {1/n, ..., 1}: the 1-D NPLD set (includes 1.0).
inline PointSet right_endpoint_grid(std::int64_t n)
{
	std::vector<double> coords(static_cast<std::size_t>(n));
	for (std::int64_t i = 0; i < n; ++i) coords[std::size_t(i)] = double(i + 1) / double(n);
	return make_explicit(std::move(coords), n, 1);
}

/// NNLD point set in dimension d built from 2-D Hammersley factors at
/// level m (n = 2^m each), with one endpoint grid when d is odd.
inline PointSet nnld_point_set(int d, int m)
{
	if (d < 1) throw PreconditionError("nnld_point_set: d must be >= 1");
	const std::int64_t n1 = std::int64_t(1) << m;
	if (d == 1) return left_endpoint_grid(n1);
	PointSet ps = hammersley_2d(m, 2);
	for (int pairs = d / 2 - 1; pairs > 0; --pairs)
		ps = tensor_product(ps, hammersley_2d(m, 2));
	if (d % 2 == 1) ps = tensor_product(ps, left_endpoint_grid(n1));
	return ps;
}

/// NPLD counterpart: tensor of shift-flipped Hammersley factors.
inline PointSet npld_point_set(int d, int m)
{
	if (d < 1) throw PreconditionError("npld_point_set: d must be >= 1");
	const std::int64_t n1 = std::int64_t(1) << m;
	if (d == 1) return right_endpoint_grid(n1);
	PointSet ps = shift_flip(hammersley_2d(m, 2), n1);
	for (int pairs = d / 2 - 1; pairs > 0; --pairs)
		ps = tensor_product(ps, shift_flip(hammersley_2d(m, 2), n1));
	if (d % 2 == 1) ps = tensor_product(ps, right_endpoint_grid(n1));
	return ps;
}

/// Theorem-1 bracket for completely monotone f:
///   upper = (1/n) sum f(1 - q_i) over an NNLD set q,
///   lower = (1/n) sum f(1 - p_i) over an NPLD set p.
/// The sign properties are verified by grid enumeration unless trusted.
inline Certificate bracket_completely_monotone(const IntegrandDescriptor& f,
                                               const PointSet& nnld_ps,
                                               const PointSet& npld_ps,
                                               bool trust_inputs = false,
                                               long long budget = kDefaultCornerBudget)
{
	detail::require_property(f, kCompletelyMonotone, "bracket_completely_monotone",
	                         "complete monotonicity");
	if (nnld_ps.d != f.d || npld_ps.d != f.d)
		throw PreconditionError("bracket_completely_monotone: dimension mismatch");
	if (!trust_inputs) {
		const auto nnld = verify_nnld_check(nnld_ps, budget);
		if (!nnld.holds) {
			std::string corner;
			for (double g : nnld.witness) corner += std::to_string(g) + " ";
			throw PreconditionError(
			    "bracket_completely_monotone: NNLD verification failed at corner " +
			    corner);
		}
		const auto npld = verify_npld_check(npld_ps, budget);
		if (!npld.holds) {
			std::string corner;
			for (double g : npld.witness) corner += std::to_string(g) + " ";
			throw PreconditionError(
			    "bracket_completely_monotone: NPLD verification failed at corner " +
			    corner);
		}
	}
	const std::int64_t before = f.eval_count();
	std::vector<double> reflected(f.d);
	double upper = 0.0;
	for (std::int64_t i = 0; i < nnld_ps.n; ++i) {
		for (int j = 0; j < f.d; ++j) reflected[j] = 1.0 - nnld_ps.at(i, j);
		upper += f(reflected);
	}
	upper /= double(nnld_ps.n);
	double lower = 0.0;
	for (std::int64_t i = 0; i < npld_ps.n; ++i) {
		for (int j = 0; j < f.d; ++j) reflected[j] = 1.0 - npld_ps.at(i, j);
		lower += f(reflected);
	}
	lower /= double(npld_ps.n);
	Certificate cert;
	cert.lower = lower;
	cert.upper = upper;
	cert.estimate = 0.5 * (lower + upper);
	cert.n_evals = f.eval_count() - before;
	cert.assumption = Assumption::completely_monotone;
	cert.meta["nnld_n"] = std::to_string(nnld_ps.n);
	cert.meta["npld_n"] = std::to_string(npld_ps.n);
	cert.meta["unit_point_caveat"] = "points in [0,1)^d union {1} per the NPLD bound";
	return cert;
}

}  // namespace qmcuq
