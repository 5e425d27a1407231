// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cmfock/core.hpp"
#include "cmfock/modes.hpp"
#include "cmfock/fock.hpp"
#include "cmfock/bogoliubov.hpp"
#include "cmfock/geometry.hpp"
#include "cmfock/cocycles.hpp"
#include "cmfock/crossmod.hpp"
#include "cmfock/io.hpp"
#include "cmfock/runner.hpp"
