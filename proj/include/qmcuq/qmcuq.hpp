// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmc-uq Project.
#pragma once

#include "qmcuq/certify.hpp"
#include "qmcuq/config.hpp"
#include "qmcuq/direction_table.hpp"
#include "qmcuq/discrepancy.hpp"
#include "qmcuq/errors.hpp"
#include "qmcuq/harness.hpp"
#include "qmcuq/integrands.hpp"
#include "qmcuq/io.hpp"
#include "qmcuq/pointgen.hpp"
#include "qmcuq/pointset.hpp"
#include "qmcuq/randomize.hpp"
#include "qmcuq/rng.hpp"
#include "qmcuq/stats.hpp"
#include "qmcuq/uq.hpp"
#include "qmcuq/version.hpp"
