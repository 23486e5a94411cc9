// Copyright 2026 The ppsched Authors
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

#include "ppsched/conflict_graph.hpp"
#include "ppsched/gantt.hpp"
#include "ppsched/graph.hpp"
#include "ppsched/instance_io.hpp"
#include "ppsched/instances.hpp"
#include "ppsched/model.hpp"
#include "ppsched/mwis.hpp"
#include "ppsched/node_set.hpp"
#include "ppsched/oracle.hpp"
#include "ppsched/report.hpp"
#include "ppsched/scheduler.hpp"
#include "ppsched/weights.hpp"
