#include <doctest.h>

#include "pathweave/errors.hpp"
#include "pathweave/xml.hpp"

using namespace pathweave;

TEST_CASE("prefixes resolve against the in-scope declarations") {
  const std::string doc =
      "<r:root xmlns:r=\"urn:r\" xmlns=\"urn:d\">\n"
      "  <child a=\"1\" r:b=\"2\"/>\n"
      "  <r:other xmlns:r=\"urn:shadow\">x</r:other>\n"
      "</r:root>";
  const auto root = xml::parse(doc);
  CHECK(root.is("urn:r", "root"));
  REQUIRE(root.children.size() == 2);
  const auto& child = root.children[0];
  CHECK(child.is("urn:d", "child"));
  CHECK(child.line == 2);
  CHECK(child.attribute("a") == "1");
  CHECK_FALSE(child.attribute("b").has_value());
  REQUIRE(child.find_attribute("urn:r", "b"));
  CHECK(child.find_attribute("urn:r", "b")->value == "2");
  CHECK(root.children[1].is("urn:shadow", "other"));
  CHECK(root.children[1].text == "x");
}

TEST_CASE("unqualified attributes carry no namespace and xmlns is not an attribute") {
  const auto root = xml::parse("<a xmlns=\"urn:d\" id=\"v\"/>");
  REQUIRE(root.attributes.size() == 1);
  CHECK(root.attributes[0].ns.empty());
  CHECK(root.declarations.at("") == "urn:d");
}

TEST_CASE("xml prefix is predeclared") {
  const auto root = xml::parse("<a xml:base=\"http://x\"/>");
  const auto* base = root.find_attribute(xml::kXmlNamespace, "base");
  REQUIRE(base);
  CHECK(base->value == "http://x");
}

TEST_CASE("inner_xml returns the exact content bytes") {
  const std::string doc = "<a><b>t &amp; <c x='1'/></b><e/></a>";
  const auto root = xml::parse(doc);
  CHECK(root.children[0].inner_xml(doc) == "t &amp; <c x='1'/>");
  CHECK(root.children[1].inner_xml(doc).empty());
  CHECK(root.inner_xml(doc) == "<b>t &amp; <c x='1'/></b><e/>");
}

TEST_CASE("entities in text are decoded") {
  const auto root = xml::parse("<a>x &lt; y &amp;&#65;</a>");
  CHECK(root.text == "x < y &A");
}

TEST_CASE("inherited bindings cover only prefixes declared outside the content") {
  const std::string doc =
      "<a xmlns:p=\"urn:p\" xmlns:q=\"urn:q\" xmlns:u=\"urn:u\">"
      "<w><p:x q:attr=\"1\"/><s:y xmlns:s=\"urn:s\"/></w></a>";
  const auto root = xml::parse(doc);
  const auto bindings = root.children[0].inherited_bindings();
  CHECK(bindings == xml::NamespaceMap{{"p", "urn:p"}, {"q", "urn:q"}});
}

TEST_CASE("malformed input reports the line") {
  try {
    xml::parse("<a>\n<b>\n</a>");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(xml::parse(""), SyntaxError);
  CHECK_THROWS_AS(xml::parse("<a></a><b/>"), SyntaxError);
}

TEST_CASE("escaping") {
  CHECK(xml::escape_text("a<b>&c\"") == "a&lt;b&gt;&amp;c\"");
  const std::string attr = xml::escape_attribute("a\"<&\n\t");
  const auto root = xml::parse("<x v=\"" + attr + "\"/>");
  CHECK(root.attribute("v") == "a\"<&\n\t");
}

TEST_CASE("trim, is_blank, is_ncname") {
  CHECK(xml::trim("  \t x y\n") == "x y");
  CHECK(xml::trim("   ").empty());
  CHECK(xml::is_blank(" \n\t\r"));
  CHECK_FALSE(xml::is_blank(" a "));
  CHECK(xml::is_ncname("reaction1_RIGHT_C"));
  CHECK(xml::is_ncname("_x.y-z"));
  CHECK_FALSE(xml::is_ncname("1abc"));
  CHECK_FALSE(xml::is_ncname("a:b"));
  CHECK_FALSE(xml::is_ncname(""));
  CHECK_FALSE(xml::is_ncname("a b"));
}
