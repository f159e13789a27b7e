#include "pidgin/lexicon.hpp"

#include <algorithm>
#include <filesystem>

#include "pidgin/text.hpp"

namespace pidgin {

namespace {

std::string normalize(std::string_view term) {
  // Collapse internal whitespace so "birth  date" and "birth date" agree.
  std::string folded = text::fold_case(text::trim(term));
  std::string out;
  bool space = false;
  for (char c : folded) {
    if (c == ' ' || c == '\t') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

std::size_t word_count(std::string_view term) {
  return static_cast<std::size_t>(std::count(term.begin(), term.end(), ' ')) + 1;
}

bool is_delimiter(char c) { return c == ',' || c == '.' || c == '?' || c == ';'; }

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f'; }

}  // namespace

Namespace::Namespace(std::string tag) : tag_(std::move(tag)) {}

std::optional<std::string> Namespace::check_term(std::string_view raw, ThingId thing) const {
  const std::string term = normalize(raw);
  if (term.empty()) return "empty term";
  if (std::any_of(term.begin(), term.end(), is_delimiter)) return "term '" + term + "' contains punctuation";
  if (keyword(term)) return "term '" + term + "' is a reserved word";
  if (auto it = by_term_.find(term); it != by_term_.end() && it->second != thing) {
    return "term '" + term + "' already names another thing";
  }
  if (auto it = by_thing_.find(thing); it != by_thing_.end() && it->second != term) {
    return "thing already named '" + it->second + "'";
  }
  return std::nullopt;
}

void Namespace::add_term(std::string_view raw, ThingId thing) {
  const std::string term = normalize(raw);
  if (term.empty() || std::any_of(term.begin(), term.end(), is_delimiter)) {
    throw LexiconError(tag_ + ": invalid term '" + term + "'");
  }
  if (keyword(term)) throw HomonymError(tag_ + ": term '" + term + "' is a reserved word");
  if (auto it = by_term_.find(term); it != by_term_.end()) {
    if (it->second == thing) return;
    throw HomonymError(tag_ + ": term '" + term + "' already names another thing");
  }
  if (auto it = by_thing_.find(thing); it != by_thing_.end()) {
    throw RenameError(tag_ + ": thing already named '" + it->second + "'");
  }
  by_term_.emplace(term, thing);
  by_thing_.emplace(thing, term);
  max_words_ = std::max(max_words_, word_count(term));
}

std::optional<ThingId> Namespace::resolve(std::string_view term) const {
  auto it = by_term_.find(normalize(term));
  if (it == by_term_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Namespace::name_of(ThingId thing) const {
  auto it = by_thing_.find(thing);
  if (it == by_thing_.end()) return std::nullopt;
  return it->second;
}

void Namespace::set_keyword(Keyword kw, std::string_view word) {
  const std::string w = normalize(word);
  if (w.empty() || w.find(' ') != std::string::npos) throw LexiconError("keyword must be a single word");
  if (by_term_.contains(w)) throw HomonymError(tag_ + ": keyword '" + w + "' already names a thing");
  keywords_[kw] = w;
}

std::optional<std::string> Namespace::keyword_text(Keyword kw) const {
  auto it = keywords_.find(kw);
  if (it == keywords_.end()) return std::nullopt;
  return it->second;
}

std::optional<Keyword> Namespace::keyword(std::string_view word) const {
  for (const auto& [kw, text] : keywords_) {
    if (text == word) return kw;
  }
  return std::nullopt;
}

Namespace& Lexicon::ensure(std::string_view tag) {
  auto it = spaces_.find(tag);
  if (it == spaces_.end()) it = spaces_.emplace(std::string(tag), Namespace(std::string(tag))).first;
  return it->second;
}

Namespace& Lexicon::at(std::string_view tag) {
  auto it = spaces_.find(tag);
  if (it == spaces_.end()) throw LexiconError("unknown namespace '" + std::string(tag) + "'");
  return it->second;
}

const Namespace& Lexicon::at(std::string_view tag) const {
  auto it = spaces_.find(tag);
  if (it == spaces_.end()) throw LexiconError("unknown namespace '" + std::string(tag) + "'");
  return it->second;
}

bool Lexicon::contains(std::string_view tag) const { return spaces_.find(tag) != spaces_.end(); }

std::vector<std::string> Lexicon::tags() const {
  std::vector<std::string> out;
  for (const auto& [tag, ns] : spaces_) out.push_back(tag);
  return out;
}

void seed_core(Graph& graph, Namespace& ns) {
  const auto& core = graph.core();
  const std::pair<const char*, ThingId> names[] = {
      {"thing", core.thing}, {"is", core.is}, {"has", core.has}, {"name", core.name}};
  for (const auto& [term, id] : names) {
    ns.add_term(term, id);
    graph.add_link(id, core.name, id);
  }
  if (!ns.keyword_text(Keyword::What)) ns.set_keyword(Keyword::What, "what");
  if (!ns.keyword_text(Keyword::There)) ns.set_keyword(Keyword::There, "there");
}

std::vector<Token> tokenize(const Namespace& ns, std::string_view input) {
  std::vector<Token> out;
  std::vector<std::string> run;

  auto flush = [&] {
    std::size_t i = 0;
    while (i < run.size()) {
      const std::size_t longest = std::min(ns.max_term_words(), run.size() - i);
      bool matched = false;
      for (std::size_t n = longest; n >= 1; --n) {
        std::string candidate = run[i];
        for (std::size_t k = 1; k < n; ++k) candidate += ' ' + run[i + k];
        if (auto id = ns.resolve(candidate)) {
          out.push_back(Token{candidate, TokenKind::Word, id, std::nullopt});
          i += n;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (auto kw = ns.keyword(run[i])) {
        out.push_back(Token{run[i], TokenKind::Word, std::nullopt, kw});
      } else {
        out.push_back(Token{run[i], TokenKind::Word, std::nullopt, std::nullopt});
      }
      ++i;
    }
    run.clear();
  };

  std::string word;
  auto end_word = [&] {
    if (!word.empty()) run.push_back(text::fold_case(word));
    word.clear();
  };

  for (char c : input) {
    if (is_space(c)) {
      end_word();
    } else if (is_delimiter(c)) {
      end_word();
      flush();
      out.push_back(Token{std::string(1, c), TokenKind::Punctuation, std::nullopt, std::nullopt});
    } else {
      word += c;
    }
  }
  end_word();
  flush();
  return out;
}

std::vector<MappingEntry> parse_mapping(std::string_view input) {
  std::vector<MappingEntry> out;
  const auto lines = text::split_lines(input);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    const std::string trimmed = text::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw LexiconError("line " + std::to_string(i + 1) + ": expected <source>TAB<target>");
    }
    MappingEntry e{i + 1, text::trim(line.substr(0, tab)), text::trim(line.substr(tab + 1))};
    if (e.source.empty() || e.target.empty() || e.target.find('\t') != std::string::npos) {
      throw LexiconError("line " + std::to_string(i + 1) + ": expected <source>TAB<target>");
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<std::pair<std::string, std::string>> mapping_tags(std::string_view path) {
  std::string stem = std::filesystem::path(path).stem().string();
  if (auto dot = stem.find_last_of("._"); dot != std::string::npos) stem = stem.substr(dot + 1);
  const auto dash = stem.find('-');
  if (dash == std::string::npos || dash == 0 || dash + 1 == stem.size()) return std::nullopt;
  return std::make_pair(stem.substr(0, dash), stem.substr(dash + 1));
}

}  // namespace pidgin
