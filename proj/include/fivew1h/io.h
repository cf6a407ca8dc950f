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

// File and JSON plumbing shared by the pipeline stages.

#ifndef FIVEW1H_IO_H_
#define FIVEW1H_IO_H_

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace fivew1h {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::filesystem::path& path);
// Writes through a sibling temporary file and renames it into place.
void WriteFile(const std::filesystem::path& path, std::string_view content);

// Splits on '\n'. A trailing line without a newline is returned as well;
// `last_line_complete` reports whether the file ended with '\n'.
std::vector<std::string> SplitLines(std::string_view content,
                                    bool* last_line_complete = nullptr);

// Compact single-line dump. Invalid UTF-8 is replaced rather than thrown.
std::string DumpJson(const Json& value);
std::string DumpJsonPretty(const Json& value);

std::string Sha256Hex(std::string_view data);

// UTC, second resolution: 2026-01-02T03:04:05Z
std::string UtcTimestampNow();

// Append-only JSON Lines sink. Every Append writes one complete line and
// flushes, so a crash leaves at worst one partial trailing line.
class JsonLinesWriter {
 public:
  JsonLinesWriter(const std::filesystem::path& path, bool append);

  void Append(const Json& value);
  void AppendRaw(std::string_view line);

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace fivew1h

#endif  // FIVEW1H_IO_H_
