// Copyright 2026 The fairmt Authors
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

#ifndef FAIRMT_TEXT_UTIL_H_
#define FAIRMT_TEXT_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fairmt {

inline constexpr char kToolVersion[] = "0.3.0";

// ASCII case folding; bytes >= 0x80 pass through untouched so UTF-8 survives.
std::string AsciiLower(std::string_view text);

// Casefold, collapse whitespace runs to one space, trim.
std::string NormalizeText(std::string_view text);

// Casefolded word tokens. A word is a run of letters, digits, or UTF-8
// continuation bytes; interior hyphens and apostrophes stay attached.
std::vector<std::string> WordTokens(std::string_view text);

std::vector<std::string> SplitWhitespace(std::string_view text);

std::vector<std::string> SplitOn(std::string_view text, char delim);

std::string Trim(std::string_view text);

std::string Sha256Hex(std::string_view data);

// First 16 hex digits of the SHA-256 digest.
std::string ShortHash(std::string_view data);

uint64_t Fnv1a64(std::string_view data);

std::string ReadFile(const std::filesystem::path& path);

// Writes to a sibling temp file and renames over the target.
void WriteFileAtomic(const std::filesystem::path& path,
                     std::string_view contents);

// Byte offset -> 1-based line number.
int LineOfOffset(std::string_view text, size_t offset);

// Root of the shipped data files: $FAIRMT_DATA_DIR if set, else the
// build-time location.
std::filesystem::path DataDir();

}  // namespace fairmt

#endif  // FAIRMT_TEXT_UTIL_H_
