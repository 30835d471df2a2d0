// Copyright 2026 The quadd Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "quadd/builders.hpp"
#include "quadd/engine.hpp"
#include "quadd/errors.hpp"
#include "quadd/gates.hpp"
#include "quadd/levels.hpp"
#include "quadd/library.hpp"
#include "quadd/netlist.hpp"
#include "quadd/netlist_json.hpp"
#include "quadd/report.hpp"
#include "quadd/timing.hpp"
#include "quadd/verify.hpp"
