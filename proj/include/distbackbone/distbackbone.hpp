// Copyright 2026 The distbackbone Authors
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

// Everything except the dataset registry, which needs libcurl, zlib and
// libcrypto at link time (include distbackbone/datasets.hpp for it).
#include "distbackbone/algebra.hpp"
#include "distbackbone/backbone.hpp"
#include "distbackbone/closure.hpp"
#include "distbackbone/errors.hpp"
#include "distbackbone/graph.hpp"
#include "distbackbone/io.hpp"
#include "distbackbone/random_graphs.hpp"
#include "distbackbone/reductions.hpp"
#include "distbackbone/verify.hpp"
#include "distbackbone/report.hpp"
