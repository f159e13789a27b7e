#include "pidgin/parser.hpp"

#include <algorithm>

#include "pidgin/text.hpp"

namespace pidgin {

ParseContext ParseContext::from(const Graph& graph) {
  ParseContext ctx;
  ctx.name = graph.core().name;
  ctx.has = graph.core().has;
  ctx.properties.insert(graph.core().is);
  ctx.properties.insert(graph.core().name);
  for (ThingId id : graph.ids()) {
    for (ThingId p : graph.values(id, graph.core().has)) ctx.properties.insert(p);
  }
  return ctx;
}

std::vector<Pair> split_pairs(std::span<const Token> tokens, const ParseContext& ctx) {
  std::vector<Pair> pairs;
  bool segment_start = true;
  for (const Token& t : tokens) {
    if (t.is_punct(',')) {
      segment_start = true;
      continue;
    }
    if (ctx.is_property(t)) {
      pairs.push_back(Pair{t, {}, false, segment_start});
    } else if (segment_start) {
      Token name{"name", TokenKind::Word, ctx.name, std::nullopt};
      pairs.push_back(Pair{std::move(name), {t}, true, true});
    } else {
      pairs.back().values.push_back(t);
    }
    segment_start = false;
  }
  return pairs;
}

namespace {

// Comma-separated segments; false if any segment is empty.
bool segments(std::span<const Token> tokens, std::vector<std::span<const Token>>& out) {
  std::size_t start = 0;
  for (std::size_t i = 0; i <= tokens.size(); ++i) {
    if (i == tokens.size() || tokens[i].is_punct(',')) {
      if (i == start) return false;
      out.push_back(tokens.subspan(start, i - start));
      start = i + 1;
    }
  }
  return true;
}

bool all_valued(const std::vector<Pair>& pairs) {
  return std::all_of(pairs.begin(), pairs.end(), [](const Pair& p) { return !p.values.empty(); });
}

std::optional<SchemaDecl> schema_decl(std::span<const Token> tokens, const ParseContext& ctx) {
  if (tokens.size() < 3) return std::nullopt;
  const Token& subject = tokens[0];
  const Token& verb = tokens[1];
  if (subject.kind != TokenKind::Word || !verb.thing || *verb.thing != ctx.has) return std::nullopt;
  std::vector<std::span<const Token>> segs;
  if (!segments(tokens.subspan(2), segs)) return std::nullopt;
  SchemaDecl decl{subject, verb, {}};
  for (auto seg : segs) {
    if (seg.size() == 1) {
      decl.properties.push_back(seg[0]);
      continue;
    }
    // A multi-word segment names one new property; it must not contain
    // an existing property, which would make it a property/value pair.
    if (std::any_of(seg.begin(), seg.end(), [&](const Token& t) { return ctx.is_property(t); })) {
      return std::nullopt;
    }
    Token joined{seg[0].surface, TokenKind::Word, std::nullopt, std::nullopt};
    for (std::size_t i = 1; i < seg.size(); ++i) joined.surface += ' ' + seg[i].surface;
    decl.properties.push_back(std::move(joined));
  }
  return decl;
}

}  // namespace

Statement parse(std::span<const Token> tokens, const ParseContext& ctx) {
  if (tokens.empty()) return Malformed{"empty statement"};
  if (tokens.back().is_punct('.') || tokens.back().is_punct('?')) tokens = tokens.first(tokens.size() - 1);
  if (tokens.empty()) return Malformed{"empty statement"};

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::Punctuation && !t.is_punct(',')) {
      return Malformed{"unexpected '" + t.surface + "'"};
    }
    if (t.surface.find_first_of("()") != std::string::npos) {
      return Malformed{"parenthesized references are not supported"};
    }
    if (i > 0 && t.keyword) return Malformed{"'" + t.surface + "' can only start a statement"};
  }

  const Token& head = tokens.front();
  if (head.kind != TokenKind::Word) return Malformed{"statement starts with punctuation"};

  if (head.keyword == Keyword::What) {
    auto rest = tokens.subspan(1);
    if (rest.empty()) return Malformed{"question without terms"};
    if (rest.size() == 2 && rest[0].kind == TokenKind::Word && rest[1].thing && *rest[1].thing == ctx.has) {
      return SchemaQuery{rest[0], rest[1]};
    }
    std::vector<std::span<const Token>> segs;
    if (!segments(rest, segs)) return Malformed{"empty segment"};
    return Query{split_pairs(rest, ctx)};
  }

  if (head.keyword == Keyword::There) {
    auto rest = tokens.subspan(1);
    std::vector<std::span<const Token>> segs;
    if (rest.empty() || !segments(rest, segs)) return Malformed{"empty segment"};
    auto pairs = split_pairs(rest, ctx);
    if (!all_valued(pairs)) return Malformed{"property without value"};
    return Create{std::move(pairs)};
  }

  if (auto decl = schema_decl(tokens, ctx)) return *std::move(decl);

  std::vector<std::span<const Token>> segs;
  if (!segments(tokens, segs)) return Malformed{"empty segment"};
  auto pairs = split_pairs(tokens, ctx);
  if (pairs.size() < 2) return Malformed{"order needs a selector and an assignment"};
  if (!all_valued(pairs)) return Malformed{"property without value"};
  Pair assignment = std::move(pairs.back());
  pairs.pop_back();
  return Update{std::move(pairs), std::move(assignment)};
}

UntranslatableTerm::UntranslatableTerm(std::string ns, std::vector<std::string> terms)
    : RenderError("no name in namespace '" + ns + "' for: " + text::join(terms, ", ")),
      terms_(std::move(terms)) {}

namespace {

class Renderer {
 public:
  explicit Renderer(const Namespace& ns) : ns_(ns) {}

  std::string term(const Token& t) {
    if (t.keyword) return keyword(*t.keyword);
    if (!t.thing) return t.surface;
    if (auto name = ns_.name_of(*t.thing)) return *name;
    missing_.push_back(t.surface);
    return t.surface;
  }

  std::string keyword(Keyword kw) {
    if (auto text = ns_.keyword_text(kw)) return *text;
    missing_.push_back(kw == Keyword::What ? "what" : "there");
    return {};
  }

  std::string pairs(const std::vector<Pair>& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      if (i) out += ps[i].opens_segment ? ", " : " ";
      out += pair(ps[i]);
    }
    return out;
  }

  std::string pair(const Pair& p) {
    std::vector<std::string> words;
    if (!p.implicit_name) words.push_back(term(p.property));
    for (const auto& v : p.values) words.push_back(term(v));
    return text::join(words, " ");
  }

  std::string finish(const std::string& sentence) {
    if (!missing_.empty()) throw UntranslatableTerm(ns_.tag(), missing_);
    return text::capitalize(sentence);
  }

 private:
  const Namespace& ns_;
  std::vector<std::string> missing_;
};

}  // namespace

std::string render_statement(const Statement& statement, const Namespace& ns) {
  Renderer r(ns);
  struct Visitor {
    Renderer& r;
    std::string operator()(const Query& q) { return r.keyword(Keyword::What) + " " + r.pairs(q.pairs) + "?"; }
    std::string operator()(const SchemaQuery& q) {
      return r.keyword(Keyword::What) + " " + r.term(q.subject) + " " + r.term(q.verb) + "?";
    }
    std::string operator()(const Create& c) { return r.keyword(Keyword::There) + " " + r.pairs(c.pairs) + "."; }
    std::string operator()(const SchemaDecl& d) {
      std::vector<std::string> props;
      for (const auto& p : d.properties) props.push_back(r.term(p));
      return r.term(d.subject) + " " + r.term(d.verb) + " " + text::join(props, ", ") + ".";
    }
    std::string operator()(const Update& u) {
      std::vector<Pair> all = u.selector;
      all.push_back(u.assignment);
      return r.pairs(all) + ".";
    }
    std::string operator()(const Malformed& m) {
      throw RenderError("cannot render malformed statement: " + m.reason);
    }
  };
  const std::string sentence = std::visit(Visitor{r}, statement);
  return r.finish(sentence);
}

}  // namespace pidgin
