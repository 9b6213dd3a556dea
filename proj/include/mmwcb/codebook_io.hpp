// SPDX-License-Identifier: Apache-2.0
//
// mmwcb - hierarchical codebook design for hybrid-precoding mmWave arrays
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

#ifndef MMWCB_CODEBOOK_IO_HPP
#define MMWCB_CODEBOOK_IO_HPP

#include "mmwcb/codebook.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace mmwcb
{

inline constexpr std::string_view kCodebookMagic = "mmwcb-codebook";
inline constexpr int kCodebookFormatVersion = 1;

/// Text form of a codebook. The layout is documented in docs/codebook-format.md.
/// Output depends only on the codebook contents, so equal inputs give byte-identical text.
std::string serialize(const HierarchicalCodebook &cb);

/// Inverse of serialize. Throws ParseError naming the line and field on malformed input.
HierarchicalCodebook deserialize(std::string_view text);

/// Field-by-field equality, comparing analog matrices by value.
bool equivalent(const HierarchicalCodebook &a, const HierarchicalCodebook &b);

/// File helpers; throw IoError when the file cannot be opened or written.
void save_codebook(const HierarchicalCodebook &cb, const std::filesystem::path &path);
HierarchicalCodebook load_codebook(const std::filesystem::path &path);

} // namespace mmwcb

#endif
