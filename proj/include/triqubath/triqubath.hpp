// Copyright 2026 The triqubath Authors
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

#include "triqubath/bath.hpp"
#include "triqubath/bounds.hpp"
#include "triqubath/errors.hpp"
#include "triqubath/linalg.hpp"
#include "triqubath/luopt.hpp"
#include "triqubath/measures.hpp"
#include "triqubath/model.hpp"
#include "triqubath/states.hpp"
#include "triqubath/sweep.hpp"
