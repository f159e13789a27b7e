#pragma once
// In-memory semantic graph: things linked to other things by property things.

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pidgin {

struct ThingId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr auto operator<=>(const ThingId&) const = default;
  constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
};

// Stands in for an unresolvable term inside match constraints; never matches.
inline constexpr ThingId kNoThing{};

struct ThingIdHash {
  std::size_t operator()(ThingId id) const noexcept { return std::hash<std::uint32_t>{}(id.value); }
};

class UnknownThing : public std::invalid_argument {
 public:
  explicit UnknownThing(ThingId id)
      : std::invalid_argument("unknown thing #" + std::to_string(id.value)), id_(id) {}
  ThingId id() const { return id_; }

 private:
  ThingId id_;
};

// Values under one property, deduplicated, in insertion order.
struct Link {
  ThingId property;
  std::vector<ThingId> values;

  bool operator==(const Link&) const = default;
};

struct Thing {
  std::vector<Link> links;

  bool operator==(const Thing&) const = default;
};

struct CoreThings {
  ThingId thing;
  ThingId is;
  ThingId has;
  ThingId name;

  bool operator==(const CoreThings&) const = default;
};

struct Constraint {
  ThingId property;
  ThingId value;
};

class Graph {
 public:
  // The four core things are created here and always occupy ids 0..3.
  Graph();

  ThingId create_thing();
  bool contains(ThingId id) const { return id.valid() && id.value < things_.size(); }
  std::size_t size() const { return things_.size(); }
  const CoreThings& core() const { return core_; }
  bool is_core(ThingId id) const { return id.value < kCoreCount; }

  const std::vector<Link>& links(ThingId subject) const;
  std::span<const ThingId> values(ThingId subject, ThingId property) const;
  bool has_link(ThingId subject, ThingId property, ThingId value) const;

  void add_link(ThingId subject, ThingId property, ThingId value);
  // Replaces the value set under `property` with exactly {value}.
  void set_link(ThingId subject, ThingId property, ThingId value);
  void set_links(ThingId subject, ThingId property, std::span<const ThingId> values);

  // Things satisfying every constraint, ascending by id.
  std::vector<ThingId> match(std::span<const Constraint> constraints) const;

  // Things whose links equal `links` as property -> value-set maps.
  bool same_links(ThingId subject, std::span<const Link> links) const;

  std::vector<ThingId> ids() const;

  bool operator==(const Graph&) const = default;

 private:
  static constexpr std::uint32_t kCoreCount = 4;

  void require(ThingId id) const;
  Link* find_link(ThingId subject, ThingId property);

  std::vector<Thing> things_;
  CoreThings core_;
};

}  // namespace pidgin
