// Copyright 2026 The pglb Authors
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

#ifndef PGLB_PGLB_HPP_
#define PGLB_PGLB_HPP_

#include "pglb/error.hpp"
#include "pglb/extraction.hpp"
#include "pglb/interaction.hpp"
#include "pglb/isa.hpp"
#include "pglb/oracle.hpp"
#include "pglb/sat3.hpp"
#include "pglb/services.hpp"
#include "pglb/synthesis.hpp"
#include "pglb/threads.hpp"

#endif  // PGLB_PGLB_HPP_
