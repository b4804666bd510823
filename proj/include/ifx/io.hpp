// Copyright 2026 The IFX Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IFX_IO_HPP_
#define IFX_IO_HPP_

#include <filesystem>
#include <string>

namespace ifx {

/// Whole file as a string; ErrorKind::kIo naming the path if unreadable.
std::string ReadFile(const std::filesystem::path& path);

/// Writes to "<path>.tmp" and renames over `path`, creating parent
/// directories as needed.
void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace ifx

#endif  // IFX_IO_HPP_
