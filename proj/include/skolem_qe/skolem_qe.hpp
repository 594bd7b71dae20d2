/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The skolem-qe Authors
 */
#pragma once

#include "skolem_qe/encoders.hpp"
#include "skolem_qe/entailment.hpp"
#include "skolem_qe/error.hpp"
#include "skolem_qe/formula.hpp"
#include "skolem_qe/orchestrator.hpp"
#include "skolem_qe/parser.hpp"
#include "skolem_qe/polynomial.hpp"
#include "skolem_qe/skolemizer.hpp"
#include "skolem_qe/smt.hpp"
#include "skolem_qe/solver.hpp"
#include "skolem_qe/verifier.hpp"
