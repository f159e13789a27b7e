#pragma once
// Per-language term dictionaries over one graph, and the tokenizer.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pidgin/graph.hpp"

namespace pidgin {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The term already names a different thing in this namespace.
class HomonymError : public LexiconError {
 public:
  using LexiconError::LexiconError;
};

// The thing already carries a different name in this namespace.
class RenameError : public LexiconError {
 public:
  using LexiconError::LexiconError;
};

// Reserved sentence heads. They are words of the language, not things.
enum class Keyword { What, There };

class Namespace {
 public:
  explicit Namespace(std::string tag);

  const std::string& tag() const { return tag_; }

  void add_term(std::string_view term, ThingId thing);
  // Empty when add_term(term, thing) would succeed; otherwise the reason.
  std::optional<std::string> check_term(std::string_view term, ThingId thing) const;

  std::optional<ThingId> resolve(std::string_view term) const;
  std::optional<std::string> name_of(ThingId thing) const;

  void set_keyword(Keyword kw, std::string_view word);
  std::optional<std::string> keyword_text(Keyword kw) const;
  std::optional<Keyword> keyword(std::string_view word) const;

  // Longest declared term, counted in space-separated words.
  std::size_t max_term_words() const { return max_words_; }
  std::size_t term_count() const { return by_term_.size(); }
  const std::map<std::string, ThingId>& terms() const { return by_term_; }

  bool operator==(const Namespace&) const = default;

 private:
  std::string tag_;
  std::map<std::string, ThingId> by_term_;
  std::map<ThingId, std::string> by_thing_;
  std::map<Keyword, std::string> keywords_;
  std::size_t max_words_ = 0;
};

class Lexicon {
 public:
  Namespace& ensure(std::string_view tag);
  Namespace& at(std::string_view tag);
  const Namespace& at(std::string_view tag) const;
  bool contains(std::string_view tag) const;
  std::vector<std::string> tags() const;

  bool operator==(const Lexicon&) const = default;

 private:
  std::map<std::string, Namespace, std::less<>> spaces_;
};

// Names the core things `thing`, `is`, `has`, `name` in English, gives each a
// `name` self-link and reserves the heads `what` and `there`. Idempotent.
void seed_core(Graph& graph, Namespace& ns);

enum class TokenKind { Word, Punctuation };

struct Token {
  std::string surface;
  TokenKind kind = TokenKind::Word;
  std::optional<ThingId> thing;
  std::optional<Keyword> keyword;

  bool is_punct(char c) const { return kind == TokenKind::Punctuation && surface.size() == 1 && surface[0] == c; }
  bool unknown() const { return kind == TokenKind::Word && !thing && !keyword; }

  bool operator==(const Token&) const = default;
};

std::vector<Token> tokenize(const Namespace& ns, std::string_view text);

struct MappingEntry {
  std::size_t line = 0;
  std::string source;
  std::string target;
};

// `<source><TAB><target>` lines; '#' comments and blank lines skipped.
// Throws LexiconError naming the offending line.
std::vector<MappingEntry> parse_mapping(std::string_view text);

// Reads "<src>-<tgt>" off the end of a mapping file stem, e.g.
// "people.en-ru.tsv" -> {"en", "ru"}.
std::optional<std::pair<std::string, std::string>> mapping_tags(std::string_view path);

}  // namespace pidgin
