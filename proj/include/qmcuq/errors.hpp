// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
#pragma once

#include <stdexcept>
#include <string>

namespace qmcuq {

/// Base class for all qmc-uq errors.
class Error : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation was violated
/// (undeclared integrand assumption, R too small, dimension mismatch, ...).
class PreconditionError : public Error {
  public:
	using Error::Error;
};

/// An enumeration or evaluation budget would be exceeded.
class BudgetError : public Error {
  public:
	BudgetError(const std::string& what, long long required)
	    : Error(what), required_budget(required)
	{
	}
	long long required_budget;
};

/// Malformed input data (direction table, CSV, config file).
class ParseError : public Error {
  public:
	using Error::Error;
};

}  // namespace qmcuq
