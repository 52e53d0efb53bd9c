// Copyright 2026 the bbdecomp authors.
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

#include <string>
#include <string_view>

namespace bbdecomp {

/// Shortest decimal representation that round-trips exactly. All CSV and JSON
/// emitters use this, so identical inputs produce byte-identical files.
std::string format_double(double value);

/// Strict double parse of a full token; throws std::invalid_argument on
/// anything but a complete numeric field.
double parse_double(std::string_view token);

}  // namespace bbdecomp
