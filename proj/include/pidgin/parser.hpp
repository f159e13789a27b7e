#pragma once
// Statement forms of the controlled language and their canonical rendering.
//
//   What <pairs>?              Query        (pairs without values are requested)
//   What <X> has?              SchemaQuery
//   There <pairs>.             Create
//   <X> has <p1>, <p2>, ...    SchemaDecl
//   <selector pairs> <pair>.   Update       (last pair is re-pointed)

#include <span>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "pidgin/graph.hpp"
#include "pidgin/lexicon.hpp"

namespace pidgin {

struct Pair {
  Token property;
  std::vector<Token> values;
  // Leading non-property word taken as the thing's name ("Alan is scientist").
  bool implicit_name = false;
  // First pair of a comma-separated segment.
  bool opens_segment = false;

  bool operator==(const Pair&) const = default;
};

struct Query {
  std::vector<Pair> pairs;
  bool operator==(const Query&) const = default;
};

struct SchemaQuery {
  Token subject;
  Token verb;  // the `has` token
  bool operator==(const SchemaQuery&) const = default;
};

struct Create {
  std::vector<Pair> pairs;
  bool operator==(const Create&) const = default;
};

struct SchemaDecl {
  Token subject;
  Token verb;
  std::vector<Token> properties;
  bool operator==(const SchemaDecl&) const = default;
};

struct Update {
  std::vector<Pair> selector;
  Pair assignment;
  bool operator==(const Update&) const = default;
};

struct Malformed {
  std::string reason;
  bool operator==(const Malformed&) const = default;
};

using Statement = std::variant<Query, SchemaQuery, Create, SchemaDecl, Update, Malformed>;

// Read snapshot of what the parser needs from the graph: which things open
// property pairs, plus the core `name` and `has`.
struct ParseContext {
  std::unordered_set<ThingId, ThingIdHash> properties;
  ThingId name;
  ThingId has;

  // Declared properties are the targets of `has` links plus `is` and `name`.
  static ParseContext from(const Graph& graph);
  bool is_property(const Token& t) const { return t.thing && properties.contains(*t.thing); }
};

// Tokens must be words or commas.
std::vector<Pair> split_pairs(std::span<const Token> tokens, const ParseContext& ctx);

// Total: every token list yields a statement, possibly Malformed.
Statement parse(std::span<const Token> tokens, const ParseContext& ctx);

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Resolved things lacking a name in the target namespace.
class UntranslatableTerm : public RenderError {
 public:
  UntranslatableTerm(std::string ns, std::vector<std::string> terms);
  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;
};

std::string render_statement(const Statement& statement, const Namespace& ns);

}  // namespace pidgin
