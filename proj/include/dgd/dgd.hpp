// Copyright 2026 The dgd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dgd/circuits/objective.hpp"
#include "dgd/circuits/random_circuit.hpp"
#include "dgd/circuits/serialize.hpp"
#include "dgd/errors.hpp"
#include "dgd/harness/alignment.hpp"
#include "dgd/harness/config.hpp"
#include "dgd/harness/descent.hpp"
#include "dgd/harness/output.hpp"
#include "dgd/harness/selftest.hpp"
#include "dgd/harness/single_run.hpp"
#include "dgd/kernel/kernel.hpp"
#include "dgd/optimizer/descent.hpp"
#include "dgd/optimizer/trace_csv.hpp"
#include "dgd/optimizer/window.hpp"
#include "dgd/rng.hpp"
#include "dgd/sim/sampling.hpp"
#include "dgd/sim/state_vector.hpp"
#include "dgd/sim/trajectory.hpp"
