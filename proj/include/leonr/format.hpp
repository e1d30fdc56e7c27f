// SPDX-License-Identifier: Apache-2.0
//
// leonr - 5G NR feasibility toolkit for LEO satellite backhaul
// Copyright (C) 2026 leonr contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdio>
#include <string>

namespace leonr {

/// Six significant digits, the fixed precision of every CSV and report this
/// toolkit writes. Identical inputs therefore produce byte-identical files.
inline std::string format_number(double value)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

} // namespace leonr
