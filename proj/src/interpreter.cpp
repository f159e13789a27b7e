#include "pidgin/interpreter.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>

#include "pidgin/text.hpp"

namespace pidgin {

Engine::Engine(std::string default_namespace) : default_ns_(std::move(default_namespace)) {
  seed_core(graph_, lexicon_.ensure(default_ns_));
}

void Engine::set_default_namespace(std::string_view tag) {
  lexicon_.at(tag);
  default_ns_ = std::string(tag);
}

Response Engine::say(std::string_view line) { return say(line, default_ns_); }

Response Engine::say(std::string_view line, std::string_view ns) { return execute(read(line, ns), ns); }

Statement Engine::read(std::string_view line, std::string_view ns) const {
  const auto tokens = tokenize(lexicon_.at(ns), line);
  return parse(tokens, ParseContext::from(graph_));
}

Response Engine::execute(const Statement& statement, std::string_view tag) {
  Namespace& ns = lexicon_.at(tag);
  struct Visitor {
    Engine& e;
    Namespace& ns;
    Response operator()(const Query& q) { return e.eval_query(q.pairs, ns); }
    Response operator()(const SchemaQuery& q) { return e.eval_schema_query(q.subject, ns); }
    Response operator()(const Create& c) { return e.eval_create(c.pairs, ns); }
    Response operator()(const SchemaDecl& d) { return e.eval_schema_decl(d.subject, d.properties, ns); }
    Response operator()(const Update& u) { return e.eval_update(u.selector, u.assignment, ns); }
    Response operator()(const Malformed&) { return e.there_not(ns); }
  };
  return std::visit(Visitor{*this, ns}, statement);
}

std::string Engine::there(const Namespace& ns) const {
  return text::capitalize(ns.keyword_text(Keyword::There).value_or("there"));
}

std::string Engine::has_word(const Namespace& ns) const {
  return ns.name_of(graph_.core().has).value_or("has");
}

Response Engine::there_not(const Namespace& ns) const { return Response{there(ns) + " not."}; }

std::string Engine::term(ThingId id, const Namespace& ns) const {
  if (auto name = ns.name_of(id)) return *name;
  for (const auto& tag : lexicon_.tags()) {
    if (auto name = lexicon_.at(tag).name_of(id)) return *name;
  }
  return "#" + std::to_string(id.value);
}

std::vector<Constraint> Engine::constraints_of(const std::vector<Pair>& pairs) const {
  std::vector<Constraint> out;
  for (const auto& p : pairs) {
    const ThingId property = p.property.thing.value_or(kNoThing);
    for (const auto& v : p.values) out.push_back(Constraint{property, v.thing.value_or(kNoThing)});
  }
  return out;
}

std::string Engine::render_things(std::span<const ThingId> things, std::span<const ThingId> requested,
                                  const Namespace& ns) const {
  std::vector<std::string> rendered;
  for (ThingId id : things) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& link : graph_.links(id)) {
      if (!requested.empty() && std::find(requested.begin(), requested.end(), link.property) == requested.end()) {
        continue;
      }
      const std::string property = term(link.property, ns);
      for (ThingId v : link.values) pairs.emplace_back(property, term(v, ns));
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::string> words;
    for (const auto& [p, v] : pairs) words.push_back(p + " " + v);
    rendered.push_back(text::join(words, ", "));
  }
  return text::join(rendered, "; ");
}

Response Engine::eval_query(const std::vector<Pair>& pairs, const Namespace& ns) const {
  std::vector<ThingId> requested;
  for (const auto& p : pairs) {
    if (p.values.empty()) requested.push_back(p.property.thing.value_or(kNoThing));
  }
  const auto constraints = constraints_of(pairs);
  const auto candidates = constraints.empty() ? graph_.ids() : graph_.match(constraints);

  std::vector<std::pair<std::string, ThingId>> found;
  for (ThingId id : candidates) {
    std::string body = render_things(std::span<const ThingId>(&id, 1), requested, ns);
    if (!body.empty()) found.emplace_back(std::move(body), id);
  }
  if (found.empty()) return there_not(ns);
  std::sort(found.begin(), found.end());
  std::vector<std::string> bodies;
  for (auto& [body, id] : found) bodies.push_back(std::move(body));
  return Response{there(ns) + " " + text::join(bodies, "; ") + "."};
}

Response Engine::eval_schema_query(const Token& subject, const Namespace& ns) const {
  if (!subject.thing) return Response{text::capitalize(subject.surface) + " not."};
  const std::string name = text::capitalize(term(*subject.thing, ns));
  std::vector<std::string> properties;
  for (ThingId p : graph_.values(*subject.thing, graph_.core().has)) properties.push_back(term(p, ns));
  if (properties.empty()) return Response{name + " not."};
  std::sort(properties.begin(), properties.end());
  return Response{name + " " + has_word(ns) + " " + text::join(properties, ", ") + "."};
}

ThingId Engine::name_new_thing(Namespace& ns, const std::string& name) {
  if (auto problem = ns.check_term(name, kNoThing)) throw HomonymError(ns.tag() + ": " + *problem);
  const ThingId id = graph_.create_thing();
  ns.add_term(name, id);
  graph_.add_link(id, graph_.core().name, id);
  return id;
}

namespace {

struct PlannedLink {
  ThingId property;
  std::vector<ThingId> known;
  std::vector<std::string> pending;
  bool self = false;
};

}  // namespace

Response Engine::eval_create(const std::vector<Pair>& pairs, Namespace& ns) {
  const ThingId name_property = graph_.core().name;
  std::optional<std::string> own_name;
  std::map<ThingId, PlannedLink> planned;

  for (const auto& p : pairs) {
    if (!p.property.thing) return there_not(ns);
    if (*p.property.thing == name_property) {
      std::vector<std::string> words;
      for (const auto& v : p.values) words.push_back(v.surface);
      std::string name = text::join(words, " ");
      if (own_name && *own_name != name) return there_not(ns);
      own_name = std::move(name);
      continue;
    }
    auto& link = planned[*p.property.thing];
    link.property = *p.property.thing;
    for (const auto& v : p.values) {
      if (v.thing) {
        link.known.push_back(*v.thing);
      } else if (own_name && v.surface == *own_name) {
        link.self = true;
      } else {
        link.pending.push_back(v.surface);
      }
    }
  }
  // A name pair may follow the pair that refers back to it.
  if (own_name) {
    for (auto& [property, link] : planned) {
      auto it = std::find(link.pending.begin(), link.pending.end(), *own_name);
      if (it != link.pending.end()) {
        link.pending.erase(std::remove(link.pending.begin(), link.pending.end(), *own_name), link.pending.end());
        link.self = true;
      }
    }
  }
  const bool any_pending =
      std::any_of(planned.begin(), planned.end(), [](const auto& kv) { return !kv.second.pending.empty(); });

  auto wanted_for = [&](ThingId self) {
    std::vector<Link> wanted;
    for (const auto& [property, link] : planned) {
      Link l{property, link.known};
      if (link.self) l.values.push_back(self);
      wanted.push_back(std::move(l));
    }
    if (own_name) {
      auto it = std::find_if(wanted.begin(), wanted.end(), [&](const Link& l) { return l.property == name_property; });
      if (it == wanted.end()) wanted.push_back(Link{name_property, {self}});
    }
    return wanted;
  };

  if (own_name) {
    if (auto existing = ns.resolve(*own_name)) {
      // Restating facts the named thing already carries is a no-op.
      if (any_pending) return there_not(ns);
      for (const auto& link : wanted_for(*existing)) {
        for (ThingId v : link.values) {
          if (!graph_.has_link(*existing, link.property, v)) return there_not(ns);
        }
      }
      return ok();
    }
    if (ns.check_term(*own_name, kNoThing)) return there_not(ns);
  } else if (!any_pending) {
    for (ThingId id : graph_.ids()) {
      if (graph_.same_links(id, wanted_for(id))) return ok();
    }
  }
  for (const auto& [property, link] : planned) {
    for (const auto& surface : link.pending) {
      if (!ns.resolve(surface) && ns.check_term(surface, kNoThing)) return there_not(ns);
    }
  }

  std::map<std::string, ThingId> created;
  auto value_of = [&](const std::string& surface) {
    if (auto id = ns.resolve(surface)) return *id;
    auto [it, inserted] = created.try_emplace(surface, kNoThing);
    if (inserted) it->second = name_new_thing(ns, surface);
    return it->second;
  };
  std::vector<std::pair<ThingId, std::vector<ThingId>>> resolved;
  for (const auto& [property, link] : planned) {
    std::vector<ThingId> values = link.known;
    for (const auto& surface : link.pending) values.push_back(value_of(surface));
    resolved.emplace_back(property, std::move(values));
  }

  const ThingId subject = own_name ? name_new_thing(ns, *own_name) : graph_.create_thing();
  for (const auto& p : pairs) {
    // Insertion order follows the statement.
    if (*p.property.thing == name_property) continue;
    auto it = std::find_if(resolved.begin(), resolved.end(), [&](const auto& r) { return r.first == *p.property.thing; });
    if (it == resolved.end()) continue;
    for (ThingId v : it->second) graph_.add_link(subject, it->first, v);
    if (planned[it->first].self) graph_.add_link(subject, it->first, subject);
    resolved.erase(it);
  }
  return ok();
}

Response Engine::eval_schema_decl(const Token& subject, const std::vector<Token>& properties, Namespace& ns) {
  if (!subject.thing) return Response{text::capitalize(subject.surface) + " not."};
  for (const auto& p : properties) {
    if (!p.thing && !ns.resolve(p.surface) && ns.check_term(p.surface, kNoThing)) {
      return Response{text::capitalize(term(*subject.thing, ns)) + " not."};
    }
  }
  for (const auto& p : properties) {
    ThingId id;
    if (p.thing) {
      id = *p.thing;
    } else if (auto known = ns.resolve(p.surface)) {
      id = *known;
    } else {
      id = name_new_thing(ns, p.surface);
    }
    graph_.add_link(*subject.thing, graph_.core().has, id);
  }
  return ok();
}

Response Engine::eval_update(const std::vector<Pair>& selector, const Pair& assignment, Namespace& ns) {
  const auto& prop = assignment.property.thing;
  if (!prop || *prop == graph_.core().name || assignment.implicit_name || assignment.values.empty()) {
    return there_not(ns);
  }
  const auto constraints = constraints_of(selector);
  if (constraints.empty()) return there_not(ns);
  const auto targets = graph_.match(constraints);
  if (targets.empty()) return there_not(ns);

  for (const auto& v : assignment.values) {
    if (!v.thing && !ns.resolve(v.surface) && ns.check_term(v.surface, kNoThing)) return there_not(ns);
  }
  std::vector<ThingId> values;
  for (const auto& v : assignment.values) {
    if (v.thing) {
      values.push_back(*v.thing);
    } else if (auto known = ns.resolve(v.surface)) {
      values.push_back(*known);
    } else {
      values.push_back(name_new_thing(ns, v.surface));
    }
  }
  for (ThingId t : targets) graph_.set_links(t, *prop, values);
  return ok();
}

std::string Engine::translate(std::string_view line, std::string_view from, std::string_view to) const {
  const Statement statement = read(line, from);
  const Namespace& target = lexicon_.at(to);
  if (std::holds_alternative<Malformed>(statement)) return there_not(target).text;
  return render_statement(statement, target);
}

void Engine::apply_mapping(const std::vector<MappingEntry>& entries, std::string_view from, std::string_view to) {
  Namespace& source = lexicon_.ensure(from);
  Namespace& target = lexicon_.ensure(to);
  for (const auto& e : entries) {
    try {
      if (auto kw = source.keyword(text::fold_case(e.source))) {
        target.set_keyword(*kw, e.target);
        continue;
      }
      ThingId id;
      if (auto known = source.resolve(e.source)) {
        id = *known;
      } else {
        id = name_new_thing(source, text::fold_case(e.source));
      }
      target.add_term(e.target, id);
      graph_.add_link(id, graph_.core().name, id);
    } catch (const LexiconError& err) {
      throw LexiconError("line " + std::to_string(e.line) + ": " + err.what());
    }
  }
}

}  // namespace pidgin
