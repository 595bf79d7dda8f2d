#include <gtest/gtest.h>

#include <atomic>
#include <functional>

#include "rumourlens/corpus.hpp"
#include "rumourlens/error.hpp"
#include "rumourlens/senticnet.hpp"
#include "rumourlens/textprep.hpp"
#include "rumourlens/util.hpp"
#include "stub_server.hpp"
#include "support.hpp"

using namespace rumourlens;
using testing_support::data_file;
using testing_support::StubServer;
using testing_support::test_data;

namespace {

ErrorKind parse_error(const std::string& csv) {
  try {
    SenticTable::parse_csv(csv);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "parsed: " << csv;
  return ErrorKind::IoError;
}

std::string join(const std::vector<std::string>& words, std::size_t from, std::size_t n) {
  std::string out;
  for (std::size_t i = from; i < from + n; ++i) out += (i > from ? "_" : "") + words[i];
  return out;
}

// Enumerates every segmentation into table concepts (1-4 words) and skipped
// words, then keeps the one whose piece lengths are lexicographically
// largest: longest match at the leftmost position wins.
std::vector<std::string> exhaustive_match(const std::vector<std::string>& lemmas, const SenticTable& table) {
  std::vector<std::size_t> best_key;
  std::vector<std::string> best;
  std::vector<std::size_t> key;
  std::vector<std::string> picked;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == lemmas.size()) {
      if (best_key.empty() || key > best_key) {
        best_key = key;
        best = picked;
      }
      return;
    }
    key.push_back(0);
    go(i + 1);
    key.pop_back();
    for (std::size_t n = 1; n <= kMaxPhraseWords && i + n <= lemmas.size(); ++n) {
      const auto c = join(lemmas, i, n);
      if (!table.contains(c)) continue;
      key.push_back(n);
      picked.push_back(c);
      go(i + n);
      key.pop_back();
      picked.pop_back();
    }
  };
  go(0);
  return best;
}

}  // namespace

TEST(Table, ParsesThreeRows) {
  auto t = SenticTable::parse_csv(
      "concept,pleasantness,attention,sensitivity,aptitude,polarity\n"
      "a,0.1,0.2,0.3,0.4,0.5\nb,-1,0,0,0,1\nc_d,0,0,0,0,0\n");
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(t.find("a")->aptitude, 0.4);
  EXPECT_TRUE(t.contains("c_d"));
}

TEST(Table, Errors) {
  EXPECT_EQ(parse_error("concept,pleasantness,attention,sensitivity,aptitude,polarity\na,0,0,0,0,1.5\n"),
            ErrorKind::OutOfRange);
  EXPECT_EQ(parse_error("concept,pleasantness,attention,sensitivity,aptitude,polarity\na,0,0,0,0,0\na,0,0,0,0,0\n"),
            ErrorKind::DuplicateConcept);
  EXPECT_EQ(parse_error("concept,pleasantness,attention,sensitivity,aptitude,polarity\na,x,0,0,0,0\n"),
            ErrorKind::ParseError);
}

TEST(Table, DemoRoundTrip) {
  const auto text = read_file(data_file("sentic_demo.csv"));
  auto t = SenticTable::parse_csv(text);
  EXPECT_EQ(t.size(), 500u);
  EXPECT_EQ(t.to_csv(), text);
  EXPECT_EQ(SenticTable::parse_csv(t.to_csv()).entries(), t.entries());
}

TEST(Match, LongestPhraseWins) {
  SenticTable t;
  t.insert("celebrate", {});
  t.insert("celebrate_special_occasion", {});
  t.insert("special", {});
  EXPECT_EQ(match_concepts({"celebrate", "special", "occasion"}, t),
            std::vector<std::string>{"celebrate_special_occasion"});
  EXPECT_TRUE(match_concepts({"nothing", "here"}, t).empty());
}

TEST(Match, BigramBeatsUnigram) {
  SenticTable t;
  t.insert("a", {});
  t.insert("a_b", {});
  t.insert("b_c", {});
  EXPECT_EQ(match_concepts({"a", "b", "c"}, t), std::vector<std::string>{"a_b"});
}

TEST(Match, FixtureAgreesWithExhaustiveSearch) {
  auto table = SenticTable::load(data_file("sentic_demo.csv"));
  auto stop = StopwordSet::from_file(data_file("stopwords.txt"));
  auto lem = RuleLemmatizer::from_file(data_file("lemma_exceptions.tsv"));
  std::size_t matched = 0;
  for (const auto& c : load_pheme_tree(test_data("mini-pheme"))) {
    for (const auto* part : {&c.sources, &c.reactions})
      for (const auto& t : *part) {
        auto lemmas = clean_for_senticnet(t.text, stop, lem);
        auto got = match_concepts(lemmas, table);
        EXPECT_EQ(got, exhaustive_match(lemmas, table)) << t.text;
        matched += got.size();
      }
  }
  EXPECT_GT(matched, 50u);
}

TEST(Match, RandomPhrasesAgreeWithExhaustiveSearch) {
  SenticTable t;
  const std::vector<std::string> words = {"a", "b", "c", "d"};
  std::mt19937 gen(41);
  for (int i = 0; i < 40; ++i) {
    std::vector<std::string> parts(1 + gen() % 4);
    for (auto& p : parts) p = words[gen() % words.size()];
    auto c = join(parts, 0, parts.size());
    if (!t.contains(c)) t.insert(c, {});
  }
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> lemmas(gen() % 12);
    for (auto& l : lemmas) l = words[gen() % words.size()];
    ASSERT_EQ(match_concepts(lemmas, t), exhaustive_match(lemmas, t));
  }
}

TEST(Features, MeansOverMatches) {
  SenticTable t;
  t.insert("x", {0.4, 0.2, 0, 0, 0});
  t.insert("y", {0, -0.4, 0, 0, 0});
  auto one = sentic_features({"x"}, t);
  EXPECT_EQ(one.values->pleasantness, 0.4);
  EXPECT_EQ(one.matched_concept_count, 1u);
  auto two = sentic_features({"x", "y"}, t);
  EXPECT_NEAR(two.values->attention, -0.1, 1e-15);
  EXPECT_FALSE(sentic_features({"z"}, t).values.has_value());
}

TEST(Fetch, StubServerWithRetry) {
  StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Get(R"(/api/en/(.+))", [&](const httplib::Request& req, httplib::Response& res) {
    if (calls++ == 0) {
      res.status = 503;
      return;
    }
    if (req.matches[1] == "unknown") {
      res.status = 404;
      return;
    }
    if (req.matches[1] == "broken") {
      res.set_content(R"({"pleasantness":0.1})", "application/json");
      return;
    }
    res.set_content(R"({"pleasantness":0.1,"attention":0.2,"sensitivity":-0.3,"aptitude":0.4,"polarity":0.5})",
                    "application/json");
  });
  stub.start();
  SenticFetchOptions opts{stub.url(), 2000, 2};
  SenticTable table;
  table.insert("cached", {});
  EXPECT_EQ(fetch_missing_concepts(opts, {"cached", "good day", "fresh"}, table), 2u);
  EXPECT_EQ(table.find("good_day")->sensitivity, -0.3);
  EXPECT_EQ(calls.load(), 3);
  try {
    fetch_sentic_concept(opts, "unknown");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ProviderUnavailable);
  }
  try {
    fetch_sentic_concept(opts, "broken");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MalformedResponse);
  }
}

TEST(Fetch, UnreachableServer) {
  SenticFetchOptions opts{"http://127.0.0.1:1", 200, 1};
  try {
    fetch_sentic_concept(opts, "x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ProviderUnavailable);
  }
}
