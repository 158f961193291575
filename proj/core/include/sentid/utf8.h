// Copyright 2026 The sentid Authors.
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

#ifndef SENTID_UTF8_H_
#define SENTID_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sentid::utf8 {

// Number of code points. Invalid lead bytes count as one character each.
std::size_t Length(std::string_view text);

// Byte offset of every code point, plus a trailing entry equal to
// text.size().
std::vector<std::size_t> CodePointOffsets(std::string_view text);

// Byte length of the code point starting at text[pos].
std::size_t SequenceLength(std::string_view text, std::size_t pos);

// ASCII-only case mapping; non-ASCII bytes pass through untouched.
std::string ToLower(std::string_view text);
std::string ToUpper(std::string_view text);
std::string ToTitle(std::string_view text);

}  // namespace sentid::utf8

#endif  // SENTID_UTF8_H_
