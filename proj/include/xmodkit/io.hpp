#ifndef XMODKIT_IO_HPP
#define XMODKIT_IO_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xmodkit/equivalences.hpp"

namespace xmodkit {

// A parsed but not yet law-checked document. Categories are raw tables;
// all morphism references have been resolved from names to indices.
struct RawDocument {
  std::string kind;
  std::optional<std::string> meta_name;
  std::optional<std::string> meta_comments;
  std::map<std::string, RawCategoryData> cats;  // category/base/fiber/total
  std::map<std::string, MorIndexMap> maps;      // i, s, t, kappa
  std::vector<int> action_table;                // dense, -1 off-domain
  std::vector<std::array<int, 3>> d_triples;    // (a1, a2, d) in total ids
};

using DocumentBody =
    std::variant<std::monostate, FinCatX, SplitEpiPair, ReflexiveGraph,
                 ActionSystem, PreCrossedModule, CrossedModule, InternalCat>;

struct Document {
  std::string kind;
  std::optional<std::string> meta_name;
  std::optional<std::string> meta_comments;
  DocumentBody body;
};

// Throws ParseError on malformed JSON, unknown kinds, missing keys or
// unresolvable names.
RawDocument parse_document(const std::string& text);

// Runs the kind's validator and returns the typed document.
Document validate_document(const RawDocument& raw);

// Builds the typed document with structural checks only (categories are
// always validated; the cross-structure laws are not). Used by verifiers
// that themselves decide whether a law holds.
Document structural_document(const RawDocument& raw);

// Canonical form: fixed key order, arrays sorted by names, 2-space indent,
// trailing newline. parse . serialize is the identity on canonical files.
std::string serialize_document(const Document& doc);

Document make_document(std::string kind, DocumentBody body,
                       std::optional<std::string> name = std::nullopt,
                       std::optional<std::string> comments = std::nullopt);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace xmodkit

#endif
