// Copyright 2026 The sbsim Authors
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
#include <vector>

#include "sbsim/config.hpp"

namespace sbsim {

std::vector<std::string> preset_names();

// Config text of a built-in scenario; throws Error(unknown_preset).
const std::string& preset_text(const std::string& name);

ScenarioConfig preset(const std::string& name);

}  // namespace sbsim
