#pragma once

// Minimal namespace-aware XML DOM used by the SBML, BioPAX and MathML
// readers. Tokenizing is done by expat; this layer adds prefix
// resolution, source line numbers and byte offsets of element content so
// that opaque subtrees can be carried byte-for-byte.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathweave::xml {

inline constexpr std::string_view kXmlNamespace = "http://www.w3.org/XML/1998/namespace";

/// prefix -> namespace URI; the empty prefix is the default namespace.
using NamespaceMap = std::map<std::string, std::string, std::less<>>;

struct Attribute {
  std::string qname;
  std::string prefix;
  std::string local;
  std::string ns;  // empty for unprefixed attributes
  std::string value;
};

struct Element {
  std::string qname;
  std::string prefix;
  std::string local;
  std::string ns;  // empty when unqualified or when the prefix is unbound
  bool unbound_prefix = false;

  std::vector<Attribute> attributes;  // xmlns declarations excluded
  NamespaceMap declarations;          // xmlns attributes written on this element
  std::shared_ptr<const NamespaceMap> scope;

  std::vector<Element> children;
  std::string text;  // concatenated character data of direct children

  std::size_t line = 0;
  std::size_t inner_begin = 0;
  std::size_t inner_end = 0;

  bool is(std::string_view ns_uri, std::string_view local_name) const {
    return ns == ns_uri && local == local_name;
  }

  const Attribute* find_attribute(std::string_view ns_uri, std::string_view local_name) const;

  /// Unqualified attribute value.
  std::optional<std::string> attribute(std::string_view local_name) const;

  /// Bytes between the end of the start tag and the start of the end tag.
  std::string_view inner_xml(std::string_view source) const {
    return source.substr(inner_begin, inner_end - inner_begin);
  }

  /// Prefix bindings used inside this element's content that are declared
  /// outside of it (on this element or an ancestor).
  NamespaceMap inherited_bindings() const;
};

/// Parses a complete document. Throws SyntaxError with the expat message
/// and line on malformed input.
Element parse(std::string_view bytes);

std::string escape_text(std::string_view text);
std::string escape_attribute(std::string_view value);

std::string_view trim(std::string_view s);

/// True when `s` contains only XML whitespace.
bool is_blank(std::string_view s);

/// True when `s` is a valid XML NCName (restricted to ASCII letters,
/// digits, '_', '-', '.' and non-ASCII bytes).
bool is_ncname(std::string_view s);

}  // namespace pathweave::xml
