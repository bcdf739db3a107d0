// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
#pragma once

namespace qmcuq {

inline constexpr char kVersion[] = "0.1.0";

}  // namespace qmcuq
