/*
   Copyright 2026 The fdcube Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FDCUBE_FDCUBE_HPP
#define FDCUBE_FDCUBE_HPP

#include "attack.hpp"
#include "combinat.hpp"
#include "diff.hpp"
#include "error.hpp"
#include "field.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "reduce_pm.hpp"
#include "rng.hpp"
#include "targets.hpp"

#endif  // FDCUBE_FDCUBE_HPP
