// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Statistical plumbing: Gaussian and Student-t quantiles, binomial
// tails, sample moments. Quantiles are delegated to Boost.Math, which
// inverts the CDFs to (beyond) the 1e-10 absolute tolerance the interval
// methods need; tests cross-check them against published table values.
#pragma once

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "qmcuq/errors.hpp"

namespace qmcuq {

inline double normal_cdf(double z)
{
	return boost::math::cdf(boost::math::normal_distribution<double>(), z);
}

inline double normal_pdf(double z)
{
	return boost::math::pdf(boost::math::normal_distribution<double>(), z);
}

inline double normal_quantile(double p)
{
	if (!(p > 0.0 && p < 1.0))
		throw PreconditionError("normal_quantile: p must be in (0,1)");
	return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

inline double student_quantile(double p, double dof)
{
	if (!(p > 0.0 && p < 1.0))
		throw PreconditionError("student_quantile: p must be in (0,1)");
	if (!(dof > 0.0))
		throw PreconditionError("student_quantile: dof must be positive");
	return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

/// P(X <= k) for X ~ Binomial(trials, p).
inline double binomial_lower_tail(std::int64_t trials, double p, std::int64_t k)
{
	if (k < 0) return 0.0;
	if (k >= trials) return 1.0;
	return boost::math::cdf(
	    boost::math::binomial_distribution<double>(double(trials), p), double(k));
}

/// Exact sum_{l=0}^{r-1} C(R,l) / 2^R (the order-statistic tail for the
/// median confidence interval), computed in extended precision.
inline double binomial_half_tail(int R, int r)
{
	if (R < 1 || R > 1024) throw PreconditionError("binomial_half_tail: R out of range");
	long double term = std::exp2l(-(long double)R);  // C(R,0)/2^R
	long double sum = 0.0L;
	for (int l = 0; l < r; ++l) {
		sum += term;
		term = term * (long double)(R - l) / (long double)(l + 1);
	}
	return double(sum);
}

struct Moments {
	double mean = 0.0;
	double variance = 0.0;  // unbiased, divisor R-1
	double skewness = 0.0;  // moment-form gamma-hat
	double ex_kurtosis = 0.0;  // moment-form kappa-hat
};

inline double sample_mean(std::span<const double> v)
{
	double s = 0.0;
	for (double x : v) s += x;
	return s / double(v.size());
}

/// Unbiased sample variance (divisor R-1).
inline double sample_variance(std::span<const double> v)
{
	if (v.size() < 2)
		throw PreconditionError("sample_variance: need at least 2 values");
	const double mean = sample_mean(v);
	double ss = 0.0;
	for (double x : v) ss += (x - mean) * (x - mean);
	return ss / double(v.size() - 1);
}

/// Moment-form skewness and excess kurtosis (no small-sample correction).
inline Moments sample_moments(std::span<const double> v)
{
	Moments m;
	m.mean = sample_mean(v);
	double m2 = 0.0, m3 = 0.0, m4 = 0.0;
	for (double x : v) {
		const double c = x - m.mean;
		m2 += c * c;
		m3 += c * c * c;
		m4 += c * c * c * c;
	}
	const double n = double(v.size());
	m2 /= n;
	m3 /= n;
	m4 /= n;
	m.variance = (v.size() >= 2) ? m2 * n / (n - 1.0) : 0.0;
	if (m2 > 0.0) {
		m.skewness = m3 / std::pow(m2, 1.5);
		m.ex_kurtosis = m4 / (m2 * m2) - 3.0;
	} else {
		m.skewness = 0.0;
		m.ex_kurtosis = 0.0;
	}
	return m;
}

inline double sorted_median(std::vector<double> v)
{
	if (v.empty()) throw PreconditionError("median of empty sample");
	std::sort(v.begin(), v.end());
	const std::size_t h = v.size() / 2;
	return (v.size() % 2 == 1) ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace qmcuq
