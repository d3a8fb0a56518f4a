// Copyright 2026 The h2mor Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef H2MOR_H2MOR_HPP
#define H2MOR_H2MOR_HPP

#include "h2mor/bench.hpp"
#include "h2mor/cirka.hpp"
#include "h2mor/errors.hpp"
#include "h2mor/interpolation.hpp"
#include "h2mor/interpolation_data.hpp"
#include "h2mor/io/data_json.hpp"
#include "h2mor/io/manifest.hpp"
#include "h2mor/io/matrix_market.hpp"
#include "h2mor/io/results.hpp"
#include "h2mor/irka.hpp"
#include "h2mor/linalg.hpp"
#include "h2mor/metrics.hpp"
#include "h2mor/model.hpp"
#include "h2mor/optimality.hpp"
#include "h2mor/shifted_solver.hpp"
#include "h2mor/spectral.hpp"

#endif  // H2MOR_H2MOR_HPP
