// pulselab - baseband pulse-shaping and modulation quality laboratory
// Copyright (C) 2026 The pulselab Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace pulselab {

/// Raised when an argument or configuration violates a documented precondition.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when stored data (capture payload, sidecar) is inconsistent.
class CorruptData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File-system failures.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pulselab
