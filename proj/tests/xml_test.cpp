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

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"

namespace toptree {
namespace {

LabelledTree parse(std::string_view doc) { return parse_xml(doc); }

TEST(XmlTest, StripsAttributesAndText) {
  const LabelledTree t = parse(R"(<a x="1"><b>t</b><c/></a>)");
  EXPECT_EQ(to_nested_xml(t), "<a><b/><c/></a>");
}

TEST(XmlTest, SelfClosingRoot) {
  const LabelledTree t = parse("<a/>");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.label_name(0), "a");
}

TEST(XmlTest, SkipsPrologCommentsAndCdata) {
  const LabelledTree t = parse(
      "\xEF\xBB\xBF<?xml version=\"1.0\"?><!-- <x/> --><!DOCTYPE r [<!ELEMENT r ANY>"
      "<!ENTITY e \"]>\">]><r><![CDATA[<y/>]]><?pi <z/>?><s a='>'/></r><!--tail-->");
  EXPECT_EQ(to_nested_xml(t), "<r><s/></r>");
}

TEST(XmlTest, KeepsNamespacePrefixes) {
  const LabelledTree t = parse(R"(<ns:a xmlns:ns="u"><ns:b/><b/></ns:a>)");
  EXPECT_EQ(to_nested_xml(t), "<ns:a><ns:b/><b/></ns:a>");
  EXPECT_EQ(t.label_table().size(), 3u);
}

TEST(XmlTest, ReportsErrorsWithOffsets) {
  try {
    parse("<a><b></a>");
    FAIL() << "expected XmlError";
  } catch (const XmlError& e) {
    EXPECT_EQ(e.offset(), 6u);
  }
  EXPECT_THROW(parse(""), XmlError);
  EXPECT_THROW(parse("   \n"), XmlError);
  EXPECT_THROW(parse("<a>"), XmlError);
  EXPECT_THROW(parse("<a/><b/>"), XmlError);
  EXPECT_THROW(parse("text<a/>"), XmlError);
  EXPECT_THROW(parse("<a><!-- open"), XmlError);
  EXPECT_THROW(parse("<a x=\"1></a>"), XmlError);
  EXPECT_THROW(parse("</a>"), XmlError);
}

TEST(XmlTest, NodeCountEqualsStartTags) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const LabelledTree t = testing::any_tree(400, rng);
    // Attributes, text and comments must vanish.
    std::string fixed;
    std::vector<std::string> open;
    for (const auto& e : preorder_events(t)) {
      if (e.kind == TreeEvent::Kind::kOpen) {
        fixed += "<" + e.label + " k=\"v<>\">text&amp;";
        open.push_back(e.label);
      } else {
        fixed += "<!-- c --></" + open.back() + ">";
        open.pop_back();
      }
    }
    EXPECT_EQ(parse(fixed), t);
  }
}

TEST(XmlTest, NestedReserializationIsStable) {
  for (const auto& path : testing::fixture_paths()) {
    const LabelledTree t = parse_xml_file(path);
    EXPECT_EQ(parse(to_nested_xml(t)), t) << path;
  }
}

TEST(XmlTest, StreamAndStringAgree) {
  const std::string doc = R"(<r><a/><b><c/></b></r>)";
  std::istringstream in(doc);
  EXPECT_EQ(parse_xml(in), parse(doc));
}

TEST(XmlTest, FixturesParse) {
  EXPECT_EQ(parse_xml_file(std::string(TOPTREE_TEST_DATA_DIR) + "/chain.xml").size(), 300u);
  EXPECT_EQ(tree_stats(parse_xml_file(std::string(TOPTREE_TEST_DATA_DIR) + "/chain.xml")).height,
            300u);
  const LabelledTree note =
      parse_xml_file(std::string(TOPTREE_TEST_DATA_DIR) + "/prolog.xml");
  EXPECT_EQ(to_nested_xml(note), "<note><to/><from/><body/></note>");
  EXPECT_THROW(parse_xml_file("/nonexistent/file.xml"), std::runtime_error);
}

}  // namespace
}  // namespace toptree
