//
// Copyright (c) 2026 The aseo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include "aseo/program.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace aseo {

/// Syntax error with a 1-based position inside the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string message, std::string snippet);

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::string& snippet() const { return snippet_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string snippet_;
};

/// Parses the ground dialect:
///
///     a :- b, not c, #sum{2:d; 1:not e} >= 2.
///     :- a, b.
///     #minimize{1@1:a; 3@2:not b}.
///
/// Objectives are normalized (non-negative weights, minimization) before the
/// program is returned.
Program parse_program(std::string_view source);

/// Text form that parse_program maps back to an equivalent program. Objective
/// offsets cannot be expressed in the grammar and are emitted as comments.
std::string render_program(const Program& program);

}  // namespace aseo
