#pragma once
// Executes statements against the graph and renders the one-line reply.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pidgin/graph.hpp"
#include "pidgin/lexicon.hpp"
#include "pidgin/parser.hpp"

namespace pidgin {

// "Ok." | "There not." | "There <pairs>[; <pairs>...]." |
// "<Name> has <props>." | "<Name> not."
struct Response {
  std::string text;

  bool operator==(const Response&) const = default;
};

// Graph plus lexicon. Not thread-safe: callers serialize execute().
class Engine {
 public:
  // Seeds the core vocabulary into `default_namespace`.
  explicit Engine(std::string default_namespace = "en");

  const Graph& graph() const { return graph_; }
  const Lexicon& lexicon() const { return lexicon_; }
  Lexicon& lexicon() { return lexicon_; }

  const std::string& default_namespace() const { return default_ns_; }
  void set_default_namespace(std::string_view tag);

  // tokenize + parse + execute in the default namespace (or `ns`).
  Response say(std::string_view line);
  Response say(std::string_view line, std::string_view ns);

  Statement read(std::string_view line, std::string_view ns) const;
  Response execute(const Statement& statement, std::string_view ns);

  Response eval_query(const std::vector<Pair>& pairs, const Namespace& ns) const;
  Response eval_schema_query(const Token& subject, const Namespace& ns) const;
  Response eval_create(const std::vector<Pair>& pairs, Namespace& ns);
  Response eval_schema_decl(const Token& subject, const std::vector<Token>& properties, Namespace& ns);
  Response eval_update(const std::vector<Pair>& selector, const Pair& assignment, Namespace& ns);

  // Body of a "There ..." reply without the leading word and period.
  // `requested` empty means every property.
  std::string render_things(std::span<const ThingId> things, std::span<const ThingId> requested,
                            const Namespace& ns) const;

  // Name of a thing in `ns`, falling back to another namespace, then "#id".
  std::string term(ThingId id, const Namespace& ns) const;

  // Re-renders a statement of namespace `from` in namespace `to`. Throws
  // UntranslatableTerm when a thing has no name in `to`.
  std::string translate(std::string_view text, std::string_view from, std::string_view to) const;

  // Installs target-namespace names for source terms, creating things for
  // source terms not yet known.
  void apply_mapping(const std::vector<MappingEntry>& entries, std::string_view from, std::string_view to);

  bool operator==(const Engine& other) const {
    return graph_ == other.graph_ && lexicon_ == other.lexicon_;
  }

 private:
  ThingId name_new_thing(Namespace& ns, const std::string& term);
  std::vector<Constraint> constraints_of(const std::vector<Pair>& pairs) const;
  Response ok() const { return Response{"Ok."}; }
  Response there_not(const Namespace& ns) const;
  std::string there(const Namespace& ns) const;
  std::string has_word(const Namespace& ns) const;

  Graph graph_;
  Lexicon lexicon_;
  std::string default_ns_;
};

}  // namespace pidgin
