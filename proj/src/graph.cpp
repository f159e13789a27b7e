#include "pidgin/graph.hpp"

#include <algorithm>

namespace pidgin {

Graph::Graph() {
  core_.thing = create_thing();
  core_.is = create_thing();
  core_.has = create_thing();
  core_.name = create_thing();
}

ThingId Graph::create_thing() {
  things_.emplace_back();
  return ThingId{static_cast<std::uint32_t>(things_.size() - 1)};
}

void Graph::require(ThingId id) const {
  if (!contains(id)) throw UnknownThing(id);
}

const std::vector<Link>& Graph::links(ThingId subject) const {
  require(subject);
  return things_[subject.value].links;
}

std::span<const ThingId> Graph::values(ThingId subject, ThingId property) const {
  for (const auto& link : links(subject)) {
    if (link.property == property) return link.values;
  }
  return {};
}

bool Graph::has_link(ThingId subject, ThingId property, ThingId value) const {
  auto vals = values(subject, property);
  return std::find(vals.begin(), vals.end(), value) != vals.end();
}

Link* Graph::find_link(ThingId subject, ThingId property) {
  for (auto& link : things_[subject.value].links) {
    if (link.property == property) return &link;
  }
  return nullptr;
}

void Graph::add_link(ThingId subject, ThingId property, ThingId value) {
  require(subject);
  require(property);
  require(value);
  Link* link = find_link(subject, property);
  if (!link) {
    things_[subject.value].links.push_back(Link{property, {value}});
    return;
  }
  if (std::find(link->values.begin(), link->values.end(), value) == link->values.end()) {
    link->values.push_back(value);
  }
}

void Graph::set_link(ThingId subject, ThingId property, ThingId value) {
  set_links(subject, property, std::span<const ThingId>(&value, 1));
}

void Graph::set_links(ThingId subject, ThingId property, std::span<const ThingId> values) {
  require(subject);
  require(property);
  for (ThingId v : values) require(v);
  std::vector<ThingId> fresh;
  for (ThingId v : values) {
    if (std::find(fresh.begin(), fresh.end(), v) == fresh.end()) fresh.push_back(v);
  }
  auto& links = things_[subject.value].links;
  Link* link = find_link(subject, property);
  if (fresh.empty()) {
    if (link) {
      links.erase(links.begin() + (link - links.data()));
    }
    return;
  }
  if (link) {
    link->values = std::move(fresh);
  } else {
    links.push_back(Link{property, std::move(fresh)});
  }
}

std::vector<ThingId> Graph::match(std::span<const Constraint> constraints) const {
  std::vector<ThingId> out;
  for (const auto& c : constraints) {
    if (!contains(c.property) || !contains(c.value)) return out;
  }
  for (std::uint32_t i = 0; i < things_.size(); ++i) {
    const ThingId id{i};
    const bool ok = std::all_of(constraints.begin(), constraints.end(), [&](const Constraint& c) {
      return has_link(id, c.property, c.value);
    });
    if (ok) out.push_back(id);
  }
  return out;
}

bool Graph::same_links(ThingId subject, std::span<const Link> wanted) const {
  const auto& have = links(subject);
  auto as_set = [](std::vector<ThingId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  };
  std::size_t nonempty = 0;
  for (const auto& w : wanted) {
    if (w.values.empty()) continue;
    ++nonempty;
    auto vals = values(subject, w.property);
    if (as_set({vals.begin(), vals.end()}) != as_set(w.values)) return false;
  }
  // Properties repeated in `wanted` are merged by the caller; compare counts.
  return nonempty == have.size();
}

std::vector<ThingId> Graph::ids() const {
  std::vector<ThingId> out;
  out.reserve(things_.size());
  for (std::uint32_t i = 0; i < things_.size(); ++i) out.push_back(ThingId{i});
  return out;
}

}  // namespace pidgin
