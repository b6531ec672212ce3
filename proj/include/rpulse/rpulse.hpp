// Copyright 2026 The robust-pulse Authors
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

#ifndef RPULSE_RPULSE_HPP
#define RPULSE_RPULSE_HPP

#include "rpulse/analysis.hpp"
#include "rpulse/error_model.hpp"
#include "rpulse/errors.hpp"
#include "rpulse/quadrature.hpp"
#include "rpulse/sequence.hpp"
#include "rpulse/sequences.hpp"
#include "rpulse/su2.hpp"

#endif
