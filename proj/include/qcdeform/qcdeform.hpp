/*
   Copyright 2026 The qcdeform Authors

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

#ifndef QCDEFORM_QCDEFORM_HPP
#define QCDEFORM_QCDEFORM_HPP

#include "errors.hpp"
#include "series.hpp"
#include "spaces.hpp"
#include "integral_ops.hpp"
#include "beltrami.hpp"
#include "deform.hpp"
#include "schwarzian.hpp"
#include "approx.hpp"
#include "extremal.hpp"
#include "config.hpp"

#endif  // QCDEFORM_QCDEFORM_HPP
