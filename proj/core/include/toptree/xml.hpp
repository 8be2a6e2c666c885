// Copyright 2026 The TopTree Authors
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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "toptree/tree.hpp"

namespace toptree {

class XmlError : public std::runtime_error {
 public:
  XmlError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}

  std::uint64_t offset() const { return offset_; }

 private:
  std::uint64_t offset_;
};

// Streams the element structure of an XML document into a LabelledTree.
// Only start/end tags survive; tag names are kept byte-exact (namespace
// prefixes included). Attributes, text, comments, CDATA, processing
// instructions and the DOCTYPE are skipped.
LabelledTree parse_xml(std::istream& in);
LabelledTree parse_xml(std::string_view document);
LabelledTree parse_xml_file(const std::filesystem::path& path);

// Nested empty tags without whitespace, e.g. "<a><b/><c/></a>".
void write_nested_xml(std::ostream& out, const LabelledTree& tree);
std::string to_nested_xml(const LabelledTree& tree);

}  // namespace toptree
