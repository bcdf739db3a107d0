// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Replicate-based estimators and confidence intervals for (R)QMC:
// Chebyshev, Hoeffding, normal / Student intervals, percentile and
// bootstrap-t resampling, the Warnock-Halton quasi-standard error,
// median of means with order-statistic intervals, and moment
// diagnostics (skewness, kurtosis, Berry-Esseen, Hall expansions).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qmcuq/errors.hpp"
#include "qmcuq/integrands.hpp"
#include "qmcuq/pointgen.hpp"
#include "qmcuq/pointset.hpp"
#include "qmcuq/randomize.hpp"
#include "qmcuq/rng.hpp"
#include "qmcuq/stats.hpp"

namespace qmcuq {

/// How strong the coverage statement of an interval is.
enum class Guarantee { certain, exact_finite_sample, asymptotic, heuristic };

inline const char* to_string(Guarantee g)
{
	switch (g) {
	case Guarantee::certain: return "certain";
	case Guarantee::exact_finite_sample: return "exact_finite_sample";
	case Guarantee::asymptotic: return "asymptotic";
	case Guarantee::heuristic: return "heuristic";
	}
	return "?";
}

struct Interval {
	double lo = 0.0;
	double hi = 0.0;
	double level = 0.0;  // nominal 1 - alpha
	std::string method;
	Guarantee guarantee = Guarantee::asymptotic;
	std::map<std::string, std::string> notes;
};

/// R independent RQMC estimates plus provenance.
struct ReplicatePool {
	std::vector<double> values;
	std::int64_t n = 0;  // points per replicate
	std::uint64_t seed = 0;
	std::string method;

	int R() const { return int(values.size()); }
	double mean() const { return sample_mean(values); }
};

/// Unbiased sample variance of the replicate values (divisor R-1).
inline double pool_variance(const ReplicatePool& pool)
{
	if (pool.R() < 2) throw PreconditionError("pool_variance: need R >= 2");
	return sample_variance(pool.values);
}

struct MomentDiagnostics {
	double mean = 0.0;
	double variance = 0.0;
	double skewness = 0.0;
	double ex_kurtosis = 0.0;  // NaN when R == 3
};

/// Moment-form diagnostics; needs R >= 3 for skewness, R >= 4 for kurtosis.
inline MomentDiagnostics moments(const ReplicatePool& pool)
{
	if (pool.R() < 3) throw PreconditionError("moments: need R >= 3");
	const Moments m = sample_moments(pool.values);
	MomentDiagnostics d;
	d.mean = m.mean;
	d.variance = m.variance;
	d.skewness = m.skewness;
	d.ex_kurtosis = (pool.R() >= 4) ? m.ex_kurtosis : NAN;
	return d;
}

// ---------------------------------------------------------------------------
// Replicate generation
// ---------------------------------------------------------------------------

enum class PointKind { sobol, lattice, halton };

inline const char* to_string(PointKind k)
{
	switch (k) {
	case PointKind::sobol: return "sobol";
	case PointKind::lattice: return "lattice";
	case PointKind::halton: return "halton";
	}
	return "?";
}

struct PointSpec {
	PointKind kind = PointKind::sobol;
	int d = 1;
};

/// Deterministic base points prepared once and shared by all replicates.
struct BasePoints {
	PointKind kind = PointKind::sobol;
	int d = 0;
	std::int64_t n = 0;
	int m = 0;                            // bits (sobol)
	NetGenerators gen;                    // sobol
	std::vector<std::uint64_t> net_bits;  // n*d output integers (sobol)
	std::vector<double> coords;           // n*d fractions (lattice / halton)
};

inline BasePoints prepare_base_points(const PointSpec& spec, std::int64_t n)
{
	if (n < 1) throw PreconditionError("prepare_base_points: n must be >= 1");
	BasePoints base;
	base.kind = spec.kind;
	base.d = spec.d;
	base.n = n;
	switch (spec.kind) {
	case PointKind::sobol: {
		int m = 0;
		while ((std::int64_t(1) << m) < n) ++m;
		if ((std::int64_t(1) << m) != n)
			throw PreconditionError("sobol points need n = 2^m");
		base.m = m;
		base.gen = sobol_generators(spec.d, m);
		base.net_bits.resize(std::size_t(n) * spec.d);
		for (std::int64_t i = 0; i < n; ++i)
			for (int j = 0; j < spec.d; ++j)
				base.net_bits[std::size_t(i) * spec.d + j] =
				    net_point_bits(base.gen, std::uint64_t(i), j);
		break;
	}
	case PointKind::lattice: {
		const PointSet ps = rank1_lattice(korobov_lattice(n, spec.d), spec.d);
		base.coords = ps.coords;
		break;
	}
	case PointKind::halton: {
		base.coords = halton(n, spec.d).coords;
		break;
	}
	}
	return base;
}

/// Point construction a randomizer expects when none is requested.
inline PointKind default_point_kind(RandomizerKind kind)
{
	switch (kind) {
	case RandomizerKind::shift:
	case RandomizerKind::shift_baker:
		return PointKind::lattice;
	default:
		return PointKind::sobol;
	}
}

/// One randomized-replicate estimate of the mean of f. All randomness is
/// keyed by (seed, replicate), so replicates can be computed in any order
/// or concurrently.
inline double replicate_estimate(const IntegrandDescriptor& f, const BasePoints& base,
                                 RandomizerKind kind, std::uint64_t seed,
                                 std::uint32_t replicate, int precision_bits = 53)
{
	const int d = base.d;
	if (f.d != d) throw PreconditionError("replicate_estimate: dimension mismatch");
	std::vector<double> x(d);
	double sum = 0.0;

	switch (kind) {
	case RandomizerKind::iid: {
		rng::Stream stream(seed, rng::kRoleIidPoints, 0, replicate);
		for (std::int64_t i = 0; i < base.n; ++i) {
			for (int j = 0; j < d; ++j) x[j] = stream.next_u53();
			sum += f(x);
		}
		break;
	}
	case RandomizerKind::shift:
	case RandomizerKind::shift_baker: {
		if (base.coords.empty())
			throw PreconditionError("random shift needs explicit base coordinates");
		std::vector<double> shift(d);
		for (int j = 0; j < d; ++j)
			shift[j] = rng::Stream(seed, rng::kRoleShift, std::uint32_t(j), replicate)
			               .next_u53();
		for (std::int64_t i = 0; i < base.n; ++i) {
			for (int j = 0; j < d; ++j) {
				double v = base.coords[std::size_t(i) * d + j] + shift[j];
				if (v >= 1.0) v -= 1.0;
				if (kind == RandomizerKind::shift_baker) {
					v = 1.0 - std::fabs(2.0 * v - 1.0);
					if (v >= 1.0) v = detail::kUlpBelowOne;
				}
				x[j] = v;
			}
			sum += f(x);
		}
		break;
	}
	case RandomizerKind::digital_shift: {
		if (base.net_bits.empty())
			throw PreconditionError("digital randomizers need a base-2 net");
		const int up = 53 - base.m;
		std::vector<std::uint64_t> shift(d);
		for (int j = 0; j < d; ++j)
			shift[j] = rng::Stream(seed, rng::kRoleDigitalShift, std::uint32_t(j),
			                       replicate)
			               .next_bits53();
		for (std::int64_t i = 0; i < base.n; ++i) {
			for (int j = 0; j < d; ++j)
				x[j] = detail::from_fixed53(
				    (base.net_bits[std::size_t(i) * d + j] << up) ^ shift[j]);
			sum += f(x);
		}
		break;
	}
	case RandomizerKind::matrix_scramble_shift: {
		if (base.gen.d == 0)
			throw PreconditionError("matrix scramble needs generator matrices");
		RandomizerSpec spec{RandomizerKind::matrix_scramble_shift, seed, replicate,
		                    precision_bits};
		const NetGenerators scrambled = scramble_generators(base.gen, spec);
		const int up = 53 - base.m;
		std::vector<std::uint64_t> shift(d);
		for (int j = 0; j < d; ++j)
			shift[j] = rng::Stream(seed, rng::kRoleDigitalShift, std::uint32_t(j),
			                       replicate)
			               .next_bits53();
		for (std::int64_t i = 0; i < base.n; ++i) {
			for (int j = 0; j < d; ++j)
				x[j] = detail::from_fixed53(
				    (net_point_bits(scrambled, std::uint64_t(i), j) << up) ^
				    shift[j]);
			sum += f(x);
		}
		break;
	}
	case RandomizerKind::nested_scramble: {
		if (base.net_bits.empty())
			throw PreconditionError("digital randomizers need a base-2 net");
		const int up = 53 - base.m;
		for (std::int64_t i = 0; i < base.n; ++i) {
			for (int j = 0; j < d; ++j)
				x[j] = detail::from_fixed53(nested_scramble_bits(
				    base.net_bits[std::size_t(i) * d + j] << up, seed,
				    std::uint32_t(j), replicate, precision_bits));
			sum += f(x);
		}
		break;
	}
	}
	return sum / double(base.n);
}

/// R independent randomizations, each averaged over n points.
inline ReplicatePool rqmc_replicates(const IntegrandDescriptor& f, const PointSpec& spec,
                                     RandomizerKind kind, std::int64_t n, int R,
                                     std::uint64_t seed, int precision_bits = 53)
{
	if (R < 1) throw PreconditionError("rqmc_replicates: R must be >= 1");
	const BasePoints base =
	    (kind == RandomizerKind::iid) ? [&] {
		    BasePoints b;  // iid needs no base construction
		    b.kind = spec.kind;
		    b.d = spec.d;
		    b.n = n;
		    return b;
	    }()
	                                  : prepare_base_points(spec, n);
	ReplicatePool pool;
	pool.n = n;
	pool.seed = seed;
	pool.method = std::string(to_string(kind)) + "/" + to_string(spec.kind);
	pool.values.resize(std::size_t(R));
	for (int r = 0; r < R; ++r)
		pool.values[r] =
		    replicate_estimate(f, base, kind, seed, std::uint32_t(r), precision_bits);
	return pool;
}

// ---------------------------------------------------------------------------
// Confidence intervals
// ---------------------------------------------------------------------------

namespace detail {

inline void check_alpha(double alpha)
{
	if (!(alpha > 0.0 && alpha < 1.0))
		throw PreconditionError("alpha must be in (0,1)");
}

}  // namespace detail

/// mean +- t^{1-alpha/2}_{(R-1)} s / sqrt(R). Exact under Gaussian
/// replicates, asymptotic otherwise.
inline Interval ci_student(const ReplicatePool& pool, double alpha)
{
	detail::check_alpha(alpha);
	if (pool.R() < 2) throw PreconditionError("ci_student: need R >= 2");
	const double mean = pool.mean();
	const double se = std::sqrt(pool_variance(pool) / double(pool.R()));
	const double t = student_quantile(1.0 - alpha / 2.0, double(pool.R() - 1));
	return {mean - t * se, mean + t * se, 1.0 - alpha, "student",
	        Guarantee::asymptotic};
}

/// mean +- Phi^{-1}(1-alpha/2) s / sqrt(R).
inline Interval ci_normal(const ReplicatePool& pool, double alpha)
{
	detail::check_alpha(alpha);
	if (pool.R() < 2) throw PreconditionError("ci_normal: need R >= 2");
	const double mean = pool.mean();
	const double se = std::sqrt(pool_variance(pool) / double(pool.R()));
	const double z = normal_quantile(1.0 - alpha / 2.0);
	return {mean - z * se, mean + z * se, 1.0 - alpha, "normal",
	        Guarantee::asymptotic};
}

/// mean +- sigma / sqrt(count * alpha). Conservative but guaranteed for
/// any distribution with the stated sigma.
inline Interval ci_chebyshev(double mean, double sigma_known, std::int64_t count,
                             double alpha)
{
	detail::check_alpha(alpha);
	if (sigma_known < 0.0)
		throw PreconditionError("ci_chebyshev: sigma must be >= 0");
	if (count < 1) throw PreconditionError("ci_chebyshev: count must be >= 1");
	const double lambda = 1.0 / std::sqrt(alpha);
	const double half = lambda * sigma_known / std::sqrt(double(count));
	return {mean - half, mean + half, 1.0 - alpha, "chebyshev",
	        Guarantee::exact_finite_sample};
}

enum class HoeffdingForm {
	paper,  // invert 2 exp(-t^2 / n) <= alpha (the cited display; conservative)
	sharp,  // standard exponent 2 t^2 / n
};

/// Hoeffding interval for the mean of `count` independent values bounded
/// in [0,1]. Callers are responsible for the boundedness declaration.
inline Interval ci_hoeffding(double mean, std::int64_t count, double alpha,
                             HoeffdingForm form = HoeffdingForm::paper)
{
	detail::check_alpha(alpha);
	if (count < 1) throw PreconditionError("ci_hoeffding: count must be >= 1");
	const double log_term = std::log(2.0 / alpha);
	const double half = (form == HoeffdingForm::paper)
	                        ? std::sqrt(log_term / double(count))
	                        : std::sqrt(log_term / (2.0 * double(count)));
	Interval iv{mean - half, mean + half, 1.0 - alpha, "hoeffding",
	            Guarantee::exact_finite_sample};
	iv.notes["form"] = form == HoeffdingForm::paper ? "paper" : "sharp";
	return iv;
}

namespace detail {

/// Sorted-order-statistic index ceil(q * B), 1-based, clamped to [1, B].
inline std::size_t order_stat_index(double q, std::size_t B)
{
	const double raw = std::ceil(q * double(B));
	if (raw < 1.0) return 1;
	if (raw > double(B)) return B;
	return std::size_t(raw);
}

inline std::vector<double> resample(const std::vector<double>& values,
                                    rng::Stream& stream)
{
	std::vector<double> out(values.size());
	for (auto& v : out) v = values[stream.next_below(values.size())];
	return out;
}

}  // namespace detail

/// Percentile bootstrap: empirical alpha/2 and 1-alpha/2 quantiles of B
/// with-replacement resample means.
inline Interval bootstrap_percentile(const ReplicatePool& pool, double alpha,
                                     int B = 1000, std::uint64_t seed = 1)
{
	detail::check_alpha(alpha);
	if (pool.R() < 2) throw PreconditionError("bootstrap_percentile: need R >= 2");
	if (B < 100) throw PreconditionError("bootstrap_percentile: need B >= 100");
	std::vector<double> means(static_cast<std::size_t>(B));
	for (int b = 0; b < B; ++b) {
		rng::Stream stream(seed, rng::kRoleBootstrap, 0, std::uint32_t(b));
		means[std::size_t(b)] = sample_mean(detail::resample(pool.values, stream));
	}
	std::sort(means.begin(), means.end());
	const std::size_t lo = detail::order_stat_index(alpha / 2.0, means.size());
	const std::size_t hi = detail::order_stat_index(1.0 - alpha / 2.0, means.size());
	return {means[lo - 1], means[hi - 1], 1.0 - alpha, "percentile",
	        Guarantee::asymptotic};
}

/// Bootstrap t: resample the studentized statistic
/// t* = (mean* - mean) / (s* / sqrt(R)) and read its quantiles.
/// Resamples with s* = 0 are redrawn up to 10 times, else dropped.
inline Interval bootstrap_t(const ReplicatePool& pool, double alpha, int B = 1000,
                            std::uint64_t seed = 1)
{
	detail::check_alpha(alpha);
	if (pool.R() < 3) throw PreconditionError("bootstrap_t: need R >= 3");
	const double mean = pool.mean();
	const double s = std::sqrt(pool_variance(pool));
	Interval iv{mean, mean, 1.0 - alpha, "bootstrap_t", Guarantee::asymptotic};
	if (s == 0.0) {
		iv.notes["warning"] = "all-constant pool; t* undefined, zero-width interval";
		return iv;
	}
	const double scale = s / std::sqrt(double(pool.R()));
	std::vector<double> tstats;
	tstats.reserve(std::size_t(B));
	std::int64_t dropped = 0;
	for (int b = 0; b < B; ++b) {
		rng::Stream stream(seed, rng::kRoleBootstrap, 0, std::uint32_t(b));
		double mstar = 0.0, sstar = 0.0;
		bool ok = false;
		for (int attempt = 0; attempt < 10 && !ok; ++attempt) {
			const auto res = detail::resample(pool.values, stream);
			mstar = sample_mean(res);
			sstar = std::sqrt(sample_variance(res));
			ok = sstar > 0.0;
		}
		if (!ok) {
			++dropped;
			continue;
		}
		tstats.push_back((mstar - mean) / (sstar / std::sqrt(double(pool.R()))));
	}
	if (tstats.empty()) {
		iv.notes["warning"] = "all resamples degenerate";
		return iv;
	}
	std::sort(tstats.begin(), tstats.end());
	const std::size_t lo = detail::order_stat_index(alpha / 2.0, tstats.size());
	const std::size_t hi = detail::order_stat_index(1.0 - alpha / 2.0, tstats.size());
	iv.lo = mean - tstats[hi - 1] * scale;
	iv.hi = mean - tstats[lo - 1] * scale;
	if (iv.lo > iv.hi) std::swap(iv.lo, iv.hi);
	if (dropped > 0) iv.notes["dropped_resamples"] = std::to_string(dropped);
	if (B < int(std::ceil(2.0 / alpha)))
		iv.notes["warning"] = "B too small for requested alpha; indices clamped";
	return iv;
}

/// 0.4748 rho / (sigma^3 sqrt(n)): Berry-Esseen bound on the CLT error.
inline double berry_esseen_bound(double rho, double sigma, std::int64_t n)
{
	if (!(sigma > 0.0)) throw PreconditionError("berry_esseen_bound: sigma must be > 0");
	if (rho < 0.0) throw PreconditionError("berry_esseen_bound: rho must be >= 0");
	if (n < 1) throw PreconditionError("berry_esseen_bound: n must be >= 1");
	return 0.4748 * rho / (sigma * sigma * sigma * std::sqrt(double(n)));
}

enum class CiMethod { normal, student_t, percentile, bootstrap_t };

inline CiMethod ci_method_from_string(const std::string& s)
{
	if (s == "normal") return CiMethod::normal;
	if (s == "student" || s == "student_t") return CiMethod::student_t;
	if (s == "percentile") return CiMethod::percentile;
	if (s == "boot-t" || s == "bootstrap_t") return CiMethod::bootstrap_t;
	throw PreconditionError("unknown CI method: " + s);
}

/// Leading-order two-sided coverage error (the O(1/n^2) remainder is
/// omitted): (2/n) phi(z^{1-alpha/2}) [c_k kappa + c_g gamma^2 + c_0].
inline double hall_coverage_error(CiMethod method, double gamma, double kappa,
                                  std::int64_t n, double alpha)
{
	detail::check_alpha(alpha);
	if (n < 1) throw PreconditionError("hall_coverage_error: n must be >= 1");
	double ck = 0.0, cg = 0.0, c0 = 0.0;
	switch (method) {
	case CiMethod::normal:
		ck = 0.14, cg = -2.12, c0 = -3.35;
		break;
	case CiMethod::student_t:
		ck = 0.14, cg = -2.12, c0 = 0.0;
		break;
	case CiMethod::percentile:
		ck = -0.72, cg = -0.37, c0 = -3.35;
		break;
	case CiMethod::bootstrap_t:
		ck = -2.84, cg = 4.25, c0 = 0.0;
		break;
	}
	const double z = normal_quantile(1.0 - alpha / 2.0);
	return (2.0 / double(n)) * normal_pdf(z) *
	       (ck * kappa + cg * gamma * gamma + c0);
}

// ---------------------------------------------------------------------------
// Warnock-Halton quasi-standard error
// ---------------------------------------------------------------------------

struct QseResult {
	double estimate = 0.0;
	double qse = 0.0;
	std::vector<double> block_means;
};

/// Split each point of a QMC set in dimension d*R into R contiguous
/// d-blocks, average f per block, and report
/// QSE = sqrt((1/R)(1/(R-1)) sum (mu_r - mu)^2).
inline QseResult quasi_standard_error(const IntegrandDescriptor& f,
                                      const PointSet& base_points, int d, int R)
{
	if (R < 2) throw PreconditionError("quasi_standard_error: need R >= 2");
	if (base_points.d != d * R)
		throw PreconditionError("quasi_standard_error: base points must have "
		                        "dimension d*R");
	if (f.d != d) throw PreconditionError("quasi_standard_error: dimension mismatch");
	QseResult out;
	out.block_means.assign(std::size_t(R), 0.0);
	std::vector<double> x(d);
	for (std::int64_t i = 0; i < base_points.n; ++i) {
		const auto row = base_points.row(i);
		for (int r = 0; r < R; ++r) {
			for (int j = 0; j < d; ++j) x[j] = row[std::size_t(r) * d + j];
			out.block_means[r] += f(x);
		}
	}
	for (auto& b : out.block_means) b /= double(base_points.n);
	out.estimate = sample_mean(out.block_means);
	out.qse = std::sqrt(sample_variance(out.block_means) / double(R));
	return out;
}

// ---------------------------------------------------------------------------
// Median of means
// ---------------------------------------------------------------------------

inline double median_of_means(const ReplicatePool& pool)
{
	if (pool.R() < 1) throw PreconditionError("median_of_means: empty pool");
	return sorted_median(pool.values);
}

/// Smallest achievable two-sided level 2 C(R,0) / 2^R for the
/// order-statistic median interval.
inline double median_ci_min_alpha(int R) { return std::exp2(1.0 - double(R)); }

/// Symmetric order-statistic interval [mu^[r], mu^[R+1-r]] with the
/// largest r such that 2 sum_{l<r} C(R,l)/2^R <= alpha. Covers the
/// MEDIAN of the replicate distribution (not mu) at exact finite-sample
/// level; flagged accordingly.
inline Interval ci_median_order_stat(const ReplicatePool& pool, double alpha)
{
	detail::check_alpha(alpha);
	const int R = pool.R();
	if (R < 1) throw PreconditionError("ci_median_order_stat: empty pool");
	int r = 0;
	double tail = 0.0;
	for (int cand = 1; 2 * cand <= R + 1; ++cand) {
		const double t = binomial_half_tail(R, cand);
		if (2.0 * t <= alpha) {
			r = cand;
			tail = t;
		} else {
			break;
		}
	}
	if (r == 0)
		throw PreconditionError(
		    "ci_median_order_stat: R = " + std::to_string(R) +
		    " cannot attain two-sided alpha = " + std::to_string(alpha) +
		    "; minimum attainable level is " + std::to_string(median_ci_min_alpha(R)));
	std::vector<double> sorted = pool.values;
	std::sort(sorted.begin(), sorted.end());
	Interval iv{sorted[std::size_t(r) - 1], sorted[std::size_t(R - r)], 1.0 - alpha,
	            "median_order_stat", Guarantee::exact_finite_sample};
	iv.notes["target"] = "median of the replicate distribution, not mu";
	iv.notes["order_stat_r"] = std::to_string(r);
	iv.notes["attained_level"] = std::to_string(1.0 - 2.0 * tail);
	return iv;
}

/// Primes in [lo, hi] by trial division (desk scale: hi < 2^31).
inline std::vector<std::int64_t> primes_in_range(std::int64_t lo, std::int64_t hi)
{
	std::vector<std::int64_t> primes;
	for (std::int64_t p = std::max<std::int64_t>(lo, 2); p <= hi; ++p) {
		bool prime = true;
		for (std::int64_t q = 2; q * q <= p; ++q)
			if (p % q == 0) {
				prime = false;
				break;
			}
		if (prime) primes.push_back(p);
	}
	return primes;
}

/// Median of R rank-1 lattice estimates, each on a random prime
/// p in [floor(n/2)+1, n] with generating vector uniform in {1..p-1}^d.
inline double random_prime_lattice_median(const IntegrandDescriptor& f, int d,
                                          std::int64_t n, int R, std::uint64_t seed)
{
	if (R < 1) throw PreconditionError("random_prime_lattice_median: R must be >= 1");
	if (f.d != d)
		throw PreconditionError("random_prime_lattice_median: dimension mismatch");
	const auto primes = primes_in_range(n / 2 + 1, n);
	if (primes.empty())
		throw PreconditionError("random_prime_lattice_median: no prime in [n/2+1, n]");
	std::vector<double> estimates(static_cast<std::size_t>(R));
	std::vector<double> x(d);
	for (int rep = 0; rep < R; ++rep) {
		rng::Stream pick(seed, rng::kRolePrimePick, 0, std::uint32_t(rep));
		const std::int64_t p = primes[pick.next_below(primes.size())];
		rng::Stream zstream(seed, rng::kRoleLatticeVector, 0, std::uint32_t(rep));
		LatticeSpec spec;
		spec.n = p;
		spec.z.resize(d);
		for (int j = 0; j < d; ++j)
			spec.z[j] = std::int64_t(zstream.next_below(std::uint64_t(p - 1))) + 1;
		double sum = 0.0;
		for (std::int64_t i = 0; i < p; ++i) {
			for (int j = 0; j < d; ++j)
				x[j] = double((i * spec.z[j]) % p) / double(p);
			sum += f(x);
		}
		estimates[std::size_t(rep)] = sum / double(p);
	}
	return sorted_median(estimates);
}

}  // namespace qmcuq
