#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "rumourlens/error.hpp"
#include "rumourlens/stats.hpp"
#include "support.hpp"

using namespace rumourlens;
using testing_support::read_json;
using testing_support::test_data;

TEST(Ks, ReferenceCases) {
  auto ref = read_json(test_data("ks_reference.json"));
  ASSERT_EQ(ref["cases"].size(), 40u);
  for (const auto& c : ref["cases"]) {
    auto a = c["a"].get<std::vector<double>>();
    auto b = c["b"].get<std::vector<double>>();
    auto r = ks_two_sample(a, b);
    EXPECT_NEAR(r.d_stat, c["d"].get<double>(), 1e-12);
    EXPECT_NEAR(r.p_value, c["p"].get<double>(), 1e-6);
    EXPECT_EQ(r.n1, a.size());
    EXPECT_EQ(r.n2, b.size());
  }
}

TEST(Ks, IdenticalSamples) {
  std::vector<double> a = {3, 1, 4, 1, 5, 9, 2, 6};
  auto r = ks_two_sample(a, a);
  EXPECT_EQ(r.d_stat, 0.0);
  EXPECT_EQ(r.p_value, 1.0);
}

TEST(Ks, DisjointSupports) {
  std::vector<double> a = {1, 2, 3, 4}, b = {5, 6, 7, 8};
  EXPECT_EQ(ks_two_sample(a, b).d_stat, 1.0);
}

TEST(Ks, Errors) {
  std::vector<double> empty, one = {1.0}, nan = {std::numeric_limits<double>::quiet_NaN()};
  try {
    ks_two_sample(empty, one);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EmptySample);
  }
  try {
    ks_two_sample(one, nan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonFiniteValue);
  }
}

TEST(Ks, Symmetry) {
  std::mt19937 gen(21);
  std::uniform_int_distribution<int> v(-5, 5);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> a(1 + gen() % 30), b(1 + gen() % 30);
    for (auto& x : a) x = v(gen);
    for (auto& x : b) x = v(gen) + 0.5 * (gen() % 2);
    auto ab = ks_two_sample(a, b), ba = ks_two_sample(b, a);
    EXPECT_EQ(ab.d_stat, ba.d_stat);
    EXPECT_EQ(ab.p_value, ba.p_value);
  }
}

TEST(Ks, PermutationInvariance) {
  std::mt19937 gen(8);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> a(5 + gen() % 30), b(5 + gen() % 30);
    for (auto& x : a) x = std::round(n01(gen) * 4) / 4;
    for (auto& x : b) x = std::round(n01(gen) * 4) / 4 + 0.3;
    auto r = ks_two_sample(a, b);
    std::shuffle(a.begin(), a.end(), gen);
    std::shuffle(b.begin(), b.end(), gen);
    auto s = ks_two_sample(a, b);
    EXPECT_EQ(r.d_stat, s.d_stat);
    EXPECT_EQ(r.p_value, s.p_value);
  }
}

TEST(Ks, PropertiesHold) {
  std::mt19937 gen(99);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 300; ++i) {
    std::vector<double> a(1 + gen() % 40), b(1 + gen() % 40);
    for (auto& x : a) x = n01(gen);
    for (auto& x : b) x = n01(gen) + (gen() % 3);
    auto r = ks_two_sample(a, b);
    EXPECT_GE(r.d_stat, 0.0);
    EXPECT_LE(r.d_stat, 1.0);
    EXPECT_GT(r.p_value, 0.0);
    EXPECT_LE(r.p_value, 1.0);
  }
}

TEST(Ks, ShiftingApartGrowsD) {
  std::mt19937 gen(4);
  std::normal_distribution<double> n01;
  std::vector<double> a(60), base(60);
  for (auto& x : a) x = n01(gen);
  for (auto& x : base) x = n01(gen);
  double prev_d = -1, prev_p = 2;
  for (double shift = 0; shift <= 4.0; shift += 0.5) {
    std::vector<double> b = base;
    for (auto& x : b) x += shift;
    auto r = ks_two_sample(a, b);
    EXPECT_GE(r.d_stat + 1e-12, prev_d);
    EXPECT_LE(r.p_value, prev_p + 1e-12);
    prev_d = r.d_stat;
    prev_p = r.p_value;
  }
  EXPECT_EQ(prev_d, 1.0);
}

TEST(Ks, TailIsMonotoneAndBounded) {
  double prev = 1.0;
  EXPECT_EQ(kolmogorov_tail(0.0), 1.0);
  for (double l = 0.05; l < 10; l += 0.05) {
    double p = kolmogorov_tail(l);
    EXPECT_LE(p, prev + 1e-11) << l;  // series truncated once a term drops below 1e-12
    EXPECT_GT(p, 0.0);
    prev = p;
  }
  EXPECT_NEAR(kolmogorov_tail(1.0), 0.26999967167735456, 1e-9);
}

namespace {

EventSamples samples(const std::string& event, std::vector<std::vector<std::optional<double>>> r,
                     std::vector<std::vector<std::optional<double>>> nr) {
  return EventSamples{event, std::move(r), std::move(nr)};
}

}  // namespace

TEST(Matrix, LayoutAggregationAndAbsentCells) {
  std::vector<std::string> features = {"f0", "f1"};
  std::vector<EventSamples> events;
  events.push_back(samples("b-event", {{1, 2, 3}, {std::nullopt, std::nullopt}}, {{4, 5, 6}, {1.0}}));
  events.push_back(samples("a-event", {{1, 1}, {2.0}}, {{1, 1}, {3.0}}));
  auto m = significance_matrix(features, events, PopulationPair::Sources, 0.05);
  ASSERT_EQ(m.events, (std::vector<std::string>{"a-event", "b-event", "aggregated"}));
  ASSERT_EQ(m.cells.size(), 6u);
  EXPECT_EQ(m.at(0, 0).ks->d_stat, 0.0);
  EXPECT_EQ(m.at(0, 1).ks->d_stat, 1.0);
  EXPECT_FALSE(m.at(1, 1).ks.has_value());
  EXPECT_FALSE(m.at(1, 1).significant);
  EXPECT_FALSE(m.at(1, 1).mean_rumour.has_value());
  EXPECT_EQ(*m.at(1, 1).mean_nonrumour, 1.0);
  // Aggregated pools every event's values.
  const auto& agg = m.at(0, 2);
  ASSERT_TRUE(agg.ks.has_value());
  EXPECT_EQ(agg.ks->n1, 5u);
  EXPECT_EQ(agg.ks->n2, 5u);
  std::vector<double> ra = {1, 2, 3, 1, 1}, nra = {4, 5, 6, 1, 1};
  EXPECT_EQ(agg.ks->d_stat, ks_two_sample(ra, nra).d_stat);
  EXPECT_EQ(m.at(1, 2).ks->n1, 1u);
  EXPECT_EQ(m.at(1, 2).ks->n2, 2u);

  auto csv = to_csv(m);
  EXPECT_EQ(csv.substr(0, kSignificanceCsvHeader.size()), kSignificanceCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_NE(csv.find("f1,b-event,sources,,,,,,1,\n"), std::string::npos) << csv;
}

TEST(Matrix, AlphaOnlyChangesFlags) {
  std::mt19937 gen(12);
  std::normal_distribution<double> n01;
  std::vector<EventSamples> events;
  for (const char* name : {"x", "y", "z"}) {
    EventSamples e{name, {{}, {}}, {{}, {}}};
    for (int i = 0; i < 25; ++i) {
      e.rumour[0].push_back(n01(gen) + 0.6);
      e.nonrumour[0].push_back(n01(gen));
      e.rumour[1].push_back(n01(gen));
      e.nonrumour[1].push_back(n01(gen));
    }
    events.push_back(e);
  }
  std::vector<std::string> features = {"f0", "f1"};
  auto lo = significance_matrix(features, events, PopulationPair::Reactions, 0.01);
  auto hi = significance_matrix(features, events, PopulationPair::Reactions, 0.2, 4);
  ASSERT_EQ(lo.cells.size(), hi.cells.size());
  for (std::size_t i = 0; i < lo.cells.size(); ++i) {
    EXPECT_EQ(lo.cells[i].ks->d_stat, hi.cells[i].ks->d_stat);
    EXPECT_EQ(lo.cells[i].ks->p_value, hi.cells[i].ks->p_value);
    EXPECT_EQ(lo.cells[i].significant, lo.cells[i].ks->p_value < 0.01);
    EXPECT_EQ(hi.cells[i].significant, hi.cells[i].ks->p_value < 0.2);
    if (lo.cells[i].significant) EXPECT_TRUE(hi.cells[i].significant);
  }
}

TEST(Means, Basics) {
  auto c = mean_of({2.5, 2.5, 2.5});
  EXPECT_EQ(*c.mean, 2.5);
  auto m = mean_of({0.0, 50.0, std::nullopt});
  EXPECT_EQ(*m.mean, 25.0);
  EXPECT_EQ(m.n, 2u);
  EXPECT_EQ(m.absent, 1u);
  auto none = mean_of({std::nullopt});
  EXPECT_FALSE(none.mean.has_value());
}

TEST(Means, ReportAddsAggregatedRow) {
  PopulationValues a{"a", {}}, b{"b", {}};
  a.values = {std::vector<std::vector<std::optional<double>>>{{1.0, 3.0}},
              {{2.0}}, {{std::nullopt}}, {{}}};
  b.values = {std::vector<std::vector<std::optional<double>>>{{5.0}}, {{4.0}}, {{6.0}}, {{}}};
  auto rows = mean_report({"f"}, {a, b});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2].event, "aggregated");
  EXPECT_EQ(*rows[2].populations[0].mean, 3.0);
  EXPECT_EQ(*rows[2].populations[1].mean, 3.0);
  EXPECT_EQ(*rows[2].populations[2].mean, 6.0);
  EXPECT_EQ(rows[2].populations[2].absent, 1u);
  EXPECT_FALSE(rows[2].populations[3].mean.has_value());
  auto csv = to_csv(rows);
  EXPECT_EQ(csv.substr(0, kMeansCsvHeader.size()), kMeansCsvHeader);
}
