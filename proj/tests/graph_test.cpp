#include "pidgin/graph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace pidgin;

TEST(Graph, CoreThingsExist) {
  Graph g;
  EXPECT_EQ(g.size(), 4u);
  EXPECT_TRUE(g.is_core(g.core().name));
  EXPECT_NE(g.core().is, g.core().has);
}

TEST(Graph, CreateThingIsFreshAndEmpty) {
  Graph g;
  const ThingId a = g.create_thing();
  const ThingId b = g.create_thing();
  EXPECT_NE(a, b);
  EXPECT_TRUE(g.links(a).empty());
}

TEST(Graph, AddLinkIsIdempotent) {
  Graph g;
  const ThingId alan = g.create_thing();
  const ThingId person = g.create_thing();
  g.add_link(alan, g.core().is, person);
  g.add_link(alan, g.core().is, person);
  ASSERT_EQ(g.values(alan, g.core().is).size(), 1u);
  EXPECT_TRUE(g.has_link(alan, g.core().is, person));
}

TEST(Graph, AddLinkRejectsUnknownThings) {
  Graph g;
  const ThingId a = g.create_thing();
  EXPECT_THROW(g.add_link(a, g.core().is, ThingId{999}), UnknownThing);
  EXPECT_THROW(g.add_link(ThingId{999}, g.core().is, a), UnknownThing);
  EXPECT_THROW(g.add_link(a, kNoThing, a), UnknownThing);
}

TEST(Graph, ValuesKeepInsertionOrder) {
  Graph g;
  const ThingId s = g.create_thing();
  const ThingId v1 = g.create_thing();
  const ThingId v0 = g.create_thing();
  g.add_link(s, g.core().is, v1);
  g.add_link(s, g.core().is, v0);
  const auto vals = g.values(s, g.core().is);
  ASSERT_EQ(vals.size(), 2u);
  EXPECT_EQ(vals[0], v1);
  EXPECT_EQ(vals[1], v0);
}

TEST(Graph, SetLinkReplacesPreviousValues) {
  Graph g;
  const ThingId alan = g.create_thing();
  const ThingId birth = g.create_thing();
  const ThingId d1 = g.create_thing();
  const ThingId d2 = g.create_thing();
  g.set_link(alan, birth, d1);
  g.set_link(alan, birth, d2);
  const auto vals = g.values(alan, birth);
  ASSERT_EQ(vals.size(), 1u);
  EXPECT_EQ(vals[0], d2);
}

TEST(Graph, SetLinkOnFreshPropertyActsAsAdd) {
  Graph g;
  const ThingId s = g.create_thing();
  const ThingId v = g.create_thing();
  g.set_link(s, g.core().is, v);
  EXPECT_TRUE(g.has_link(s, g.core().is, v));
}

TEST(Graph, SetLinkLeavesOtherPropertiesAlone) {
  Graph g;
  const ThingId s = g.create_thing();
  const ThingId p = g.create_thing();
  const ThingId v = g.create_thing();
  const ThingId w = g.create_thing();
  g.add_link(s, g.core().is, v);
  g.set_link(s, p, w);
  g.set_link(s, p, v);
  EXPECT_TRUE(g.has_link(s, g.core().is, v));
  EXPECT_EQ(g.links(s).size(), 2u);
}

TEST(Graph, SetLinkReplaceVisibleThroughMatch) {
  Graph g;
  const ThingId s = g.create_thing();
  const ThingId p = g.create_thing();
  const ThingId old_v = g.create_thing();
  const ThingId new_v = g.create_thing();
  g.add_link(s, p, old_v);
  g.set_link(s, p, new_v);
  const Constraint now[] = {{p, new_v}};
  const Constraint before[] = {{p, old_v}};
  EXPECT_EQ(g.match(now), std::vector<ThingId>{s});
  EXPECT_TRUE(g.match(before).empty());
}

TEST(Graph, MatchOnEmptyGraphIsEmpty) {
  Graph g;
  const ThingId person = g.create_thing();
  const Constraint c[] = {{g.core().is, person}};
  EXPECT_TRUE(g.match(c).empty());
}

TEST(Graph, MatchSentinelNeverMatches) {
  Graph g;
  const ThingId s = g.create_thing();
  g.add_link(s, g.core().is, s);
  const Constraint c[] = {{g.core().is, kNoThing}};
  EXPECT_TRUE(g.match(c).empty());
}

namespace {

// Independent filter: walk every thing and look for each constraint's value
// by scanning the raw link list.
std::vector<ThingId> brute_force(const Graph& g, std::span<const Constraint> cs) {
  std::vector<ThingId> out;
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    bool all = true;
    for (const auto& c : cs) {
      bool found = false;
      for (const auto& link : g.links(ThingId{i})) {
        if (link.property != c.property) continue;
        for (ThingId v : link.values) found = found || v == c.value;
      }
      all = all && found;
    }
    if (all) out.push_back(ThingId{i});
  }
  return out;
}

}  // namespace

TEST(Graph, MatchConjunctionAgreesWithBruteForce) {
  Graph g;
  const ThingId firstname = g.create_thing();
  const ThingId lastname = g.create_thing();
  const ThingId alan = g.create_thing();
  const ThingId turing = g.create_thing();
  const ThingId person = g.create_thing();
  const ThingId who = g.create_thing();
  g.add_link(who, g.core().is, person);
  g.add_link(who, firstname, alan);
  g.add_link(who, lastname, turing);

  const Constraint both[] = {{firstname, alan}, {lastname, turing}};
  const Constraint first[] = {{firstname, alan}};
  const Constraint last[] = {{lastname, turing}};
  EXPECT_EQ(g.match(both), brute_force(g, both));
  EXPECT_EQ(g.match(both), std::vector<ThingId>{who});
  EXPECT_EQ(g.match(first), g.match(both));
  EXPECT_EQ(g.match(last), g.match(both));
}

TEST(Graph, RandomMatchesAgreeWithBruteForceAndAreMonotone) {
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    Graph g;
    std::vector<ThingId> ids;
    for (int i = 0; i < 12; ++i) ids.push_back(g.create_thing());
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    for (int i = 0; i < 40; ++i) g.add_link(ids[pick(rng)], ids[pick(rng) % 3], ids[pick(rng)]);
    std::vector<Constraint> cs;
    std::vector<ThingId> previous = g.ids();
    for (int k = 0; k < 3; ++k) {
      cs.push_back(Constraint{ids[pick(rng) % 3], ids[pick(rng)]});
      const auto got = g.match(cs);
      EXPECT_EQ(got, brute_force(g, cs));
      EXPECT_TRUE(std::includes(previous.begin(), previous.end(), got.begin(), got.end()));
      previous = got;
    }
  }
}

TEST(Graph, MatchDoesNotMutate) {
  Graph g;
  const ThingId s = g.create_thing();
  g.add_link(s, g.core().is, s);
  const Graph before = g;
  const Constraint c[] = {{g.core().is, s}};
  (void)g.match(c);
  EXPECT_EQ(g, before);
}

TEST(Graph, SameLinksComparesAsSets) {
  Graph g;
  const ThingId s = g.create_thing();
  const ThingId a = g.create_thing();
  const ThingId b = g.create_thing();
  g.add_link(s, g.core().is, a);
  g.add_link(s, g.core().is, b);
  const Link same[] = {{g.core().is, {b, a}}};
  const Link fewer[] = {{g.core().is, {a}}};
  const Link more[] = {{g.core().is, {a, b}}, {g.core().has, {a}}};
  EXPECT_TRUE(g.same_links(s, same));
  EXPECT_FALSE(g.same_links(s, fewer));
  EXPECT_FALSE(g.same_links(s, more));
}
