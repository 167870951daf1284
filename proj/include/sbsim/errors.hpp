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

#include <stdexcept>
#include <string>
#include <vector>

namespace sbsim {

enum class ErrorKind {
    invalid_dimension,
    dimension_mismatch,
    not_hermitian,
    not_unitary,
    not_psd,
    truncation_too_small,
    unstable_potential,
    invalid_parameter,
    unknown_preset,
    config,
    numerical_quality,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Non-fatal diagnostics collected along a computation.
struct Warnings {
    std::vector<std::string> messages;

    void add(std::string m) { messages.push_back(std::move(m)); }
    bool empty() const { return messages.empty(); }
};

inline void warn(Warnings* w, std::string m) {
    if (w) w->add(std::move(m));
}

}  // namespace sbsim
