// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
//
// Fixture integrands on [0,1]^d with known exact means and declared
// structural properties. The declarations gate which certificate and
// confidence-interval methods may be applied; brackets refuse integrands
// whose assumptions are not declared.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "qmcuq/errors.hpp"

namespace qmcuq {

enum Property : unsigned {
	kBounded01 = 1u << 0,
	kMonotone1d = 1u << 1,          // nondecreasing in each coordinate
	kConvex = 1u << 2,              // jointly convex on [0,1]^d
	kCompletelyMonotone = 1u << 3,  // alternating differences all nonnegative
	kAdditive = 1u << 4,
	kSmooth = 1u << 5,
	kDiscontinuous = 1u << 6,
	kPeriodic = 1u << 7,
};

/// An evaluable integrand with declared properties and known mean.
/// Evaluation is pure and re-entrant; the call counter lives outside the
/// function and accumulates atomically.
struct IntegrandDescriptor {
	std::string name;
	int d = 1;
	std::function<double(std::span<const double>)> f;
	double exact_mean = 0.0;
	double exact_variance = NAN;  // NaN when no closed form is declared
	unsigned properties = 0;
	std::shared_ptr<std::atomic<std::int64_t>> evals =
	    std::make_shared<std::atomic<std::int64_t>>(0);

	double operator()(std::span<const double> x) const
	{
		evals->fetch_add(1, std::memory_order_relaxed);
		return f(x);
	}
	bool has(Property p) const { return (properties & p) != 0; }
	std::int64_t eval_count() const { return evals->load(std::memory_order_relaxed); }
	void reset_evals() const { evals->store(0, std::memory_order_relaxed); }
};

namespace detail {

inline void require_dim(int d, const std::string& name)
{
	if (d < 1) throw PreconditionError("fixture " + name + ": dimension must be >= 1");
}

}  // namespace detail

/// Named fixtures:
///   product_cdf        prod x_j                      mean 2^-d
///   additive           (1/d) sum x_j                 mean 1/2
///   smooth_product     prod(1 + c(x_j - 1/2))        mean 1       (param c, default 1/2)
///   indicator_box      1{x <= a componentwise}       mean prod a_j (param a, default 1/2)
///   unfriendly_product c prod(x_j - 1/2)             mean 0       (param c, default 1)
///   exp_1d             e^x, d = 1                    mean e - 1
///   sum_sq             (1/d) sum x_j^2               mean 1/3
///   periodic_product   prod(1 + c sin(2 pi x_j))     mean 1       (param c, default 1/2)
inline IntegrandDescriptor fixture(const std::string& name, int d, double param = NAN)
{
	detail::require_dim(d, name);
	IntegrandDescriptor desc;
	desc.name = name;
	desc.d = d;

	if (name == "product_cdf") {
		desc.f = [](std::span<const double> x) {
			double p = 1.0;
			for (double v : x) p *= v;
			return p;
		};
		desc.exact_mean = std::pow(0.5, d);
		desc.exact_variance = std::pow(1.0 / 3.0, d) - std::pow(0.25, d);
		desc.properties = kBounded01 | kMonotone1d | kCompletelyMonotone | kSmooth;
		if (d == 1) desc.properties |= kConvex;  // f(x) = x
	} else if (name == "additive") {
		desc.f = [d](std::span<const double> x) {
			double s = 0.0;
			for (double v : x) s += v;
			return s / d;
		};
		desc.exact_mean = 0.5;
		desc.exact_variance = 1.0 / (12.0 * d);
		desc.properties = kBounded01 | kMonotone1d | kConvex | kCompletelyMonotone |
		                  kAdditive | kSmooth;
	} else if (name == "smooth_product") {
		const double c = std::isnan(param) ? 0.5 : param;
		if (c < 0.0 || c > 2.0)
			throw PreconditionError("smooth_product: c must be in [0, 2]");
		desc.f = [c](std::span<const double> x) {
			double p = 1.0;
			for (double v : x) p *= 1.0 + c * (v - 0.5);
			return p;
		};
		desc.exact_mean = 1.0;
		desc.exact_variance = std::pow(1.0 + c * c / 12.0, d) - 1.0;
		desc.properties = kSmooth | kMonotone1d;
		if (c > 0.0) desc.properties |= kCompletelyMonotone;
		if (d == 1) desc.properties |= kConvex;  // affine
	} else if (name == "indicator_box") {
		const double a = std::isnan(param) ? 0.5 : param;
		if (a < 0.0 || a > 1.0)
			throw PreconditionError("indicator_box: corner must be in [0, 1]");
		desc.f = [a](std::span<const double> x) {
			for (double v : x)
				if (v > a) return 0.0;
			return 1.0;
		};
		desc.exact_mean = std::pow(a, d);
		desc.exact_variance = desc.exact_mean * (1.0 - desc.exact_mean);
		desc.properties = kBounded01 | kDiscontinuous;
	} else if (name == "unfriendly_product") {
		const double c = std::isnan(param) ? 1.0 : param;
		desc.f = [c](std::span<const double> x) {
			double p = c;
			for (double v : x) p *= v - 0.5;
			return p;
		};
		desc.exact_mean = 0.0;
		desc.exact_variance = c * c * std::pow(1.0 / 12.0, d);
		desc.properties = kSmooth;
	} else if (name == "exp_1d") {
		if (d != 1) throw PreconditionError("exp_1d is one-dimensional");
		desc.f = [](std::span<const double> x) { return std::exp(x[0]); };
		desc.exact_mean = std::exp(1.0) - 1.0;
		desc.exact_variance =
		    0.5 * (std::exp(2.0) - 1.0) - desc.exact_mean * desc.exact_mean;
		desc.properties = kMonotone1d | kConvex | kCompletelyMonotone | kSmooth;
	} else if (name == "sum_sq") {
		desc.f = [d](std::span<const double> x) {
			double s = 0.0;
			for (double v : x) s += v * v;
			return s / d;
		};
		desc.exact_mean = 1.0 / 3.0;
		desc.exact_variance = 4.0 / (45.0 * d);
		desc.properties = kBounded01 | kMonotone1d | kConvex | kSmooth;
	} else if (name == "periodic_product") {
		const double c = std::isnan(param) ? 0.5 : param;
		desc.f = [c](std::span<const double> x) {
			double p = 1.0;
			for (double v : x)
				p *= 1.0 + c * std::sin(2.0 * std::numbers::pi * v);
			return p;
		};
		desc.exact_mean = 1.0;
		desc.exact_variance = std::pow(1.0 + c * c / 2.0, d) - 1.0;
		desc.properties = kSmooth | kPeriodic;
	} else {
		throw PreconditionError("unknown fixture: " + name);
	}
	return desc;
}

inline const std::vector<std::string>& fixture_names()
{
	static const std::vector<std::string> names = {
	    "product_cdf", "additive",  "smooth_product", "indicator_box",
	    "unfriendly_product", "exp_1d", "sum_sq",     "periodic_product"};
	return names;
}

/// Norm (not its square) of g = c prod(x_j - 1/2) in the weighted
/// unanchored Sobolev space with weights gamma_j = j^-eta:
/// ||g||_gamma = c (d!)^(eta/2).
inline double weighted_norm_g(double c, int d, double eta)
{
	detail::require_dim(d, "weighted_norm_g");
	const double log_norm = 0.5 * eta * std::lgamma(double(d) + 1.0);
	if (log_norm > 700.0)
		throw PreconditionError("weighted_norm_g: (d!)^eta overflows");
	return c * std::exp(log_norm);
}

/// Dense-mesh midpoint-rule mean, used as the registration oracle for
/// fixtures at d <= 3.
inline double mesh_mean(const IntegrandDescriptor& desc, int cells_per_axis = 200)
{
	if (desc.d > 3)
		throw PreconditionError("mesh_mean: oracle limited to d <= 3");
	const int m = cells_per_axis;
	std::vector<int> idx(desc.d, 0);
	std::vector<double> x(desc.d);
	double total = 0.0;
	std::int64_t cells = 1;
	for (int j = 0; j < desc.d; ++j) cells *= m;
	for (std::int64_t c = 0; c < cells; ++c) {
		std::int64_t rem = c;
		for (int j = 0; j < desc.d; ++j) {
			x[j] = (double(rem % m) + 0.5) / m;
			rem /= m;
		}
		total += desc.f(x);
	}
	return total / double(cells);
}

}  // namespace qmcuq
