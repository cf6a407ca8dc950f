// Copyright 2026 The fivew1h Authors.
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

#ifndef FIVEW1H_TEXT_UTIL_H_
#define FIVEW1H_TEXT_UTIL_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fivew1h {

// Whitespace means the ASCII set recognized by std::isspace in the "C"
// locale. Words are maximal runs of non-whitespace bytes.
bool IsAsciiSpace(char c);
std::vector<std::string_view> SplitWhitespace(std::string_view text);
std::size_t CountWords(std::string_view text);
std::string_view Trim(std::string_view s);
std::string JoinWithSpaces(const std::vector<std::string>& parts);

// Unicode NFC normalization of UTF-8 text. Ill-formed input sequences are
// replaced with U+FFFD.
std::string NormalizeNfc(std::string_view utf8);

}  // namespace fivew1h

#endif  // FIVEW1H_TEXT_UTIL_H_
