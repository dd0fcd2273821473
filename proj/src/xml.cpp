#include "pathweave/xml.hpp"

#include <expat.h>

#include <set>

#include "pathweave/errors.hpp"

namespace pathweave::xml {

namespace {

void split_qname(std::string_view qname, std::string& prefix, std::string& local) {
  const auto colon = qname.find(':');
  if (colon == std::string_view::npos) {
    prefix.clear();
    local = qname;
  } else {
    prefix = qname.substr(0, colon);
    local = qname.substr(colon + 1);
  }
}

class Builder {
 public:
  explicit Builder(XML_Parser parser) : parser_(parser) {
    root_scope_ = std::make_shared<NamespaceMap>(NamespaceMap{{"xml", std::string(kXmlNamespace)}});
  }

  void start(const XML_Char* name, const XML_Char** atts) {
    Element el;
    el.qname = name;
    split_qname(el.qname, el.prefix, el.local);
    el.line = static_cast<std::size_t>(XML_GetCurrentLineNumber(parser_));
    const auto index = static_cast<std::size_t>(XML_GetCurrentByteIndex(parser_));
    const auto count = static_cast<std::size_t>(XML_GetCurrentByteCount(parser_));
    el.inner_begin = index + count;

    for (std::size_t i = 0; atts[i] != nullptr; i += 2) {
      const std::string_view aname = atts[i];
      if (aname == "xmlns") {
        el.declarations[""] = atts[i + 1];
      } else if (aname.starts_with("xmlns:")) {
        el.declarations[std::string(aname.substr(6))] = atts[i + 1];
      }
    }

    const auto& parent_scope = stack_.empty() ? root_scope_ : stack_.back().scope;
    if (el.declarations.empty()) {
      el.scope = parent_scope;
    } else {
      auto merged = std::make_shared<NamespaceMap>(*parent_scope);
      for (const auto& [p, uri] : el.declarations) {
        if (uri.empty()) {
          merged->erase(p);  // xmlns="" undeclares the default namespace
        } else {
          (*merged)[p] = uri;
        }
      }
      el.scope = std::move(merged);
    }

    el.ns = resolve(*el.scope, el.prefix, el.unbound_prefix);

    for (std::size_t i = 0; atts[i] != nullptr; i += 2) {
      const std::string_view aname = atts[i];
      if (aname == "xmlns" || aname.starts_with("xmlns:")) continue;
      Attribute a;
      a.qname = aname;
      split_qname(a.qname, a.prefix, a.local);
      if (!a.prefix.empty()) {
        bool unbound = false;
        a.ns = resolve(*el.scope, a.prefix, unbound);
      }
      a.value = atts[i + 1];
      el.attributes.push_back(std::move(a));
    }
    stack_.push_back(std::move(el));
  }

  void end() {
    Element el = std::move(stack_.back());
    stack_.pop_back();
    const auto count = static_cast<std::size_t>(XML_GetCurrentByteCount(parser_));
    if (count == 0) {
      el.inner_end = el.inner_begin;  // <empty/> element
    } else {
      el.inner_end = static_cast<std::size_t>(XML_GetCurrentByteIndex(parser_));
    }
    if (stack_.empty()) {
      root_ = std::move(el);
      have_root_ = true;
    } else {
      stack_.back().children.push_back(std::move(el));
    }
  }

  void text(const XML_Char* s, int len) {
    if (!stack_.empty()) {
      stack_.back().text.append(s, static_cast<std::size_t>(len));
    }
  }

  Element take_root() { return std::move(root_); }
  bool have_root() const { return have_root_; }

 private:
  static std::string resolve(const NamespaceMap& scope, const std::string& prefix, bool& unbound) {
    const auto it = scope.find(prefix);
    if (it == scope.end()) {
      unbound = !prefix.empty();
      return {};
    }
    return it->second;
  }

  XML_Parser parser_;
  std::shared_ptr<const NamespaceMap> root_scope_;
  std::vector<Element> stack_;
  Element root_;
  bool have_root_ = false;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** atts) {
  static_cast<Builder*>(user)->start(name, atts);
}

void XMLCALL on_end(void* user, const XML_Char*) { static_cast<Builder*>(user)->end(); }

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
  static_cast<Builder*>(user)->text(s, len);
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

void collect_inherited(const Element& el, std::set<std::string, std::less<>> declared_inside,
                       const NamespaceMap& outer, NamespaceMap& out) {
  for (const auto& [p, uri] : el.declarations) declared_inside.insert(p);
  auto note = [&](const std::string& prefix) {
    if (prefix.empty() || prefix == "xml" || declared_inside.contains(prefix)) return;
    if (const auto it = outer.find(prefix); it != outer.end()) out[prefix] = it->second;
  };
  note(el.prefix);
  for (const auto& a : el.attributes) note(a.prefix);
  for (const auto& child : el.children) collect_inherited(child, declared_inside, outer, out);
}

}  // namespace

const Attribute* Element::find_attribute(std::string_view ns_uri, std::string_view local_name) const {
  for (const auto& a : attributes) {
    if (a.ns == ns_uri && a.local == local_name) return &a;
  }
  return nullptr;
}

std::optional<std::string> Element::attribute(std::string_view local_name) const {
  for (const auto& a : attributes) {
    if (a.prefix.empty() && a.local == local_name) return a.value;
  }
  return std::nullopt;
}

NamespaceMap Element::inherited_bindings() const {
  NamespaceMap out;
  for (const auto& child : children) {
    collect_inherited(child, {}, *scope, out);
  }
  return out;
}

Element parse(std::string_view bytes) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  if (!parser) throw Error("failed to allocate XML parser");
  Builder builder(parser.get());
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  if (XML_Parse(parser.get(), bytes.data(), static_cast<int>(bytes.size()), XML_TRUE) == XML_STATUS_ERROR) {
    throw SyntaxError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                      static_cast<std::size_t>(XML_GetCurrentLineNumber(parser.get())));
  }
  if (!builder.have_root()) throw SyntaxError("no root element", 1);
  return builder.take_root();
}

std::string escape_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string escape_attribute(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (const char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\r': out += "&#13;"; break;
      case '\t': out += "&#9;"; break;
      default: out += c;
    }
  }
  return out;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool is_ncname(std::string_view s) {
  if (s.empty()) return false;
  auto start_ok = [](unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c >= 0x80;
  };
  auto rest_ok = [&](unsigned char c) {
    return start_ok(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
  };
  if (!start_ok(static_cast<unsigned char>(s.front()))) return false;
  for (const char c : s.substr(1)) {
    if (!rest_ok(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace pathweave::xml
