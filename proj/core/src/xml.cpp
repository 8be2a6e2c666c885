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

#include "toptree/xml.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

namespace toptree {
namespace {

constexpr int kEof = -1;

class ByteReader {
 public:
  explicit ByteReader(std::istream& in) : in_(in) {}

  int get() {
    if (pos_ == end_ && !refill()) return kEof;
    ++offset_;
    return static_cast<unsigned char>(buffer_[pos_++]);
  }

  int peek() {
    if (pos_ == end_ && !refill()) return kEof;
    return static_cast<unsigned char>(buffer_[pos_]);
  }

  std::uint64_t offset() const { return offset_; }

 private:
  bool refill() {
    in_.read(buffer_.data(), buffer_.size());
    end_ = static_cast<std::size_t>(in_.gcount());
    pos_ = 0;
    return end_ > 0;
  }

  std::istream& in_;
  std::array<char, 1 << 16> buffer_{};
  std::size_t pos_ = 0;
  std::size_t end_ = 0;
  std::uint64_t offset_ = 0;
};

bool is_space(int c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class XmlStructureParser {
 public:
  explicit XmlStructureParser(std::istream& in) : reader_(in) {}

  LabelledTree run() {
    for (;;) {
      int c = reader_.get();
      if (c == kEof) break;
      if (c == 0xEF && reader_.offset() == 1) {
        if (reader_.get() != 0xBB || reader_.get() != 0xBF) {
          throw XmlError("invalid byte order mark", 0);
        }
        continue;
      }
      if (c != '<') {
        if (!is_space(c) && builder_.depth() == 0) {
          throw XmlError("character data outside the document element",
                         reader_.offset() - 1);
        }
        continue;
      }
      markup(reader_.offset() - 1);
    }
    if (builder_.depth() != 0) {
      throw XmlError("unclosed element <" + builder_.open_label() + ">",
                     reader_.offset());
    }
    if (!builder_.complete()) {
      throw XmlError("document has no element", reader_.offset());
    }
    return std::move(builder_).finish();
  }

 private:
  void markup(std::uint64_t start) {
    const int c = reader_.peek();
    if (c == '?') {
      skip_until("?>", start);
    } else if (c == '!') {
      reader_.get();
      declaration(start);
    } else if (c == '/') {
      reader_.get();
      end_tag(start);
    } else {
      start_tag(start);
    }
  }

  void declaration(std::uint64_t start) {
    if (reader_.peek() == '-') {
      reader_.get();
      if (reader_.get() != '-') throw XmlError("malformed comment", start);
      skip_until("-->", start);
      return;
    }
    if (reader_.peek() == '[') {
      for (char expected : std::string_view("[CDATA[")) {
        if (reader_.get() != expected) {
          throw XmlError("malformed CDATA section", start);
        }
      }
      skip_until("]]>", start);
      return;
    }
    // DOCTYPE and friends; internal subsets nest in brackets.
    int depth = 0;
    for (;;) {
      int c = reader_.get();
      if (c == kEof) throw XmlError("unterminated declaration", start);
      if (c == '"' || c == '\'') {
        skip_quoted(c, start);
      } else if (c == '[') {
        ++depth;
      } else if (c == ']') {
        --depth;
      } else if (c == '>' && depth <= 0) {
        return;
      }
    }
  }

  void start_tag(std::uint64_t start) {
    name_.clear();
    read_name();
    if (name_.empty()) throw XmlError("missing tag name", start);
    bool self_closing = false;
    for (;;) {
      int c = reader_.get();
      if (c == kEof) throw XmlError("unterminated start tag", start);
      if (c == '"' || c == '\'') {
        skip_quoted(c, start);
        self_closing = false;
      } else if (c == '/') {
        self_closing = true;
      } else if (c == '>') {
        break;
      } else if (!is_space(c)) {
        self_closing = false;
      }
    }
    if (builder_.complete()) {
      throw XmlError("more than one document element", start);
    }
    builder_.open(std::string_view(name_));
    if (self_closing) builder_.close();
  }

  void end_tag(std::uint64_t start) {
    name_.clear();
    read_name();
    for (;;) {
      int c = reader_.get();
      if (c == kEof) throw XmlError("unterminated end tag", start);
      if (c == '>') break;
      if (!is_space(c)) throw XmlError("malformed end tag", start);
    }
    if (builder_.depth() == 0) {
      throw XmlError("unexpected end tag </" + name_ + ">", start);
    }
    if (builder_.open_label() != name_) {
      throw XmlError("mismatched end tag </" + name_ + ">, expected </" +
                         builder_.open_label() + ">",
                     start);
    }
    builder_.close();
  }

  void read_name() {
    for (;;) {
      int c = reader_.peek();
      if (c == kEof || is_space(c) || c == '/' || c == '>') return;
      if (c == '\0') throw XmlError("zero byte in tag name", reader_.offset());
      name_.push_back(static_cast<char>(reader_.get()));
    }
  }

  void skip_quoted(int quote, std::uint64_t start) {
    for (;;) {
      int c = reader_.get();
      if (c == kEof) throw XmlError("unterminated attribute value", start);
      if (c == quote) return;
    }
  }

  void skip_until(std::string_view terminator, std::uint64_t start) {
    // Rolling window over the last terminator.size() bytes.
    std::string window;
    for (;;) {
      int c = reader_.get();
      if (c == kEof) throw XmlError("unterminated markup", start);
      window.push_back(static_cast<char>(c));
      if (window.size() > terminator.size()) window.erase(window.begin());
      if (window == terminator) return;
    }
  }

  ByteReader reader_;
  TreeBuilder builder_;
  std::string name_;
};

}  // namespace

LabelledTree parse_xml(std::istream& in) {
  return XmlStructureParser(in).run();
}

LabelledTree parse_xml(std::string_view document) {
  std::istringstream in{std::string(document)};
  return parse_xml(in);
}

LabelledTree parse_xml_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_xml(in);
}

void write_nested_xml(std::ostream& out, const LabelledTree& tree) {
  std::vector<NodeId> path;
  auto close_to = [&](NodeId parent) {
    while (!path.empty() && path.back() != parent) {
      out << "</" << tree.label_name(path.back()) << '>';
      path.pop_back();
    }
  };
  for (NodeId v = 0; v < tree.size(); ++v) {
    close_to(tree.parent(v));
    if (tree.is_leaf(v)) {
      out << '<' << tree.label_name(v) << "/>";
    } else {
      out << '<' << tree.label_name(v) << '>';
      path.push_back(v);
    }
  }
  close_to(kNoNode);
}

std::string to_nested_xml(const LabelledTree& tree) {
  std::ostringstream out;
  write_nested_xml(out, tree);
  return out.str();
}

}  // namespace toptree
