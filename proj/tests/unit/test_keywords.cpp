#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "test_support.hpp"
#include "wikicorpus/error.hpp"
#include "wikicorpus/keywords.hpp"

using namespace wikicorpus;
namespace wt = wikicorpus::testing;

namespace {

CandidateCounts counts_of(std::string_view text) {
  return count_candidates(wt::pipeline().preprocess_document(text, "t"));
}

Keyword kw(std::string phrase, std::size_t tf, double score) { return Keyword{std::move(phrase), tf, 1.0, score}; }

}  // namespace

TEST_SUITE("keywords") {

TEST_CASE("count_candidates") {
  CHECK(counts_of("The lunar rover stops. The lunar rover turns.") == CandidateCounts{{"lunar rover", 2}});
  CHECK(counts_of("").empty());
  CHECK(counts_of("The rover stops. A rover turns.") == CandidateCounts{{"rover", 2}});
}

TEST_CASE("filter_generic") {
  CHECK(filter_generic({{"rover", 3}, {"lunar rover", 2}}, *wt::mini_wordnet()) ==
        CandidateCounts{{"lunar rover", 2}});
  CHECK(filter_generic({}, *wt::mini_wordnet()).empty());
  // the miniature lexicon has "emergency" and "brake" but not the compound
  CHECK(filter_generic({{"emergency brake", 1}}, *wt::mini_wordnet()).size() == 1);
  if (const auto dir = wt::full_wordnet_dir()) {
    const auto wn = WordnetLexicon::load(*dir);
    CHECK(filter_generic({{"emergency brake", 1}}, wn).empty());
  }
}

TEST_CASE("score_tfidf examples") {
  const std::vector<CandidateCounts> single{{{"x", 3}}};
  const auto s = score_tfidf(single, 0);
  REQUIRE(s.size() == 1);
  CHECK(s[0].score == 3.0);
  CHECK(s[0].idf == 1.0);

  const std::vector<CandidateCounts> only_target{{{"p", 2}}, {{"q", 1}}};
  const auto a = score_tfidf(only_target, 0);
  CHECK(a[0].idf == doctest::Approx(std::log(1.5) + 1).epsilon(1e-12));
  CHECK(a[0].score == doctest::Approx(2.8109).epsilon(1e-4));

  const std::vector<CandidateCounts> both{{{"p", 2}}, {{"p", 5}}};
  CHECK(score_tfidf(both, 0)[0].score == 2.0);

  CHECK_THROWS_AS(score_tfidf(both, 2), Error);
}

TEST_CASE("smoothed idf") {
  CHECK(smoothed_idf(1, 1) == 1.0);
  CHECK(smoothed_idf(2, 2) == 1.0);
  CHECK(smoothed_idf(2, 1) == doctest::Approx(1.4054651081));
}

TEST_CASE("score_tfidf matches the brute-force formula") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto docs = wt::random_count_docs(rng, 10, 100);
    const std::vector<CandidateCounts> counts(docs.begin(), docs.end());
    const std::size_t target = rng() % docs.size();
    const auto got = score_tfidf(counts, target);
    const auto want = wt::brute_force_tfidf(docs, target);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      CHECK(got[i].phrase == want[i].first);
      CHECK(std::abs(got[i].score - want[i].second) <= 1e-9 * std::abs(want[i].second));
    }
  }
}

TEST_CASE("single document scores are raw tf") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto docs = wt::random_count_docs(rng, 1, 60);
    const std::vector<CandidateCounts> counts(docs.begin(), docs.end());
    for (const auto& k : score_tfidf(counts, 0)) CHECK(k.score == static_cast<double>(k.tf));
  }
}

TEST_CASE("select_top_k") {
  CHECK(select_top_k({kw("a", 1, 1), kw("b", 2, 2), kw("c", 3, 3)}, 50).size() == 3);
  const auto tie = select_top_k({kw("b", 2, 2.0), kw("a", 2, 2.0)}, 1);
  REQUIRE(tie.size() == 1);
  CHECK(tie[0].phrase == "a");
  // tf breaks score ties before the phrase does
  CHECK(select_top_k({kw("a", 1, 2.0), kw("b", 2, 2.0)}, 1)[0].phrase == "b");
  CHECK(select_top_k({kw("a", 1, 1)}, 0).empty());
}

TEST_CASE("top-k results are prefixes of one total order") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Keyword> all;
    for (int i = 0; i < 40; ++i) {
      const std::size_t tf = 1 + rng() % 4;
      all.push_back(kw("k" + std::to_string(rng() % 30), tf, static_cast<double>(rng() % 5)));
    }
    std::shuffle(all.begin(), all.end(), rng);
    const auto full = select_top_k(all, all.size());
    CHECK(std::is_sorted(full.begin(), full.end(), ranks_before));
    const std::size_t k = rng() % 40;
    const auto part = select_top_k(all, k);
    REQUIRE(part.size() == k);
    CHECK(std::equal(part.begin(), part.end(), full.begin()));
  }
}

TEST_CASE("filtering commutes with ranking") {
  const auto doc = wt::pipeline().preprocess_document(
      wt::read_file(wt::fixture_dir() / "rs" / "rs1_train_control.txt"), "rs1");
  const auto counts = count_candidates(doc);
  const auto& lex = *wt::mini_wordnet();

  const std::vector<CandidateCounts> filtered{filter_generic(counts, lex)};
  auto a = select_top_k(score_tfidf(filtered, 0), SIZE_MAX);

  const std::vector<CandidateCounts> raw{counts};
  auto b = select_top_k(score_tfidf(raw, 0), SIZE_MAX);
  std::erase_if(b, [&](const Keyword& k) { return lex.contains_lemma(k.phrase); });

  std::set<std::string> sa, sb;
  for (const auto& k : a) sa.insert(k.phrase);
  for (const auto& k : b) sb.insert(k.phrase);
  CHECK(sa == sb);
  CHECK(a == b);
}

TEST_CASE("railway RS keywords") {
  KeywordConfig cfg;
  cfg.top_k = 50;
  const auto rs = wt::read_file(wt::fixture_dir() / "rs" / "rs1_train_control.txt");
  const auto kws = extract_keywords(wt::pipeline(), rs, cfg);
  REQUIRE(kws.size() == 50);
  std::set<std::string> phrases;
  std::size_t multi = 0;
  for (const auto& k : kws) {
    phrases.insert(k.phrase);
    multi += k.phrase.find(' ') != std::string::npos;
  }
  CHECK(phrases.contains("trainborne equipment"));
  CHECK(phrases.contains("emergency brake"));
  CHECK(kws.front().phrase == "trainborne equipment");
  CHECK(multi >= 40);
  // "rover"-style generic single words are gone
  CHECK_FALSE(phrases.contains("train"));
  CHECK_FALSE(phrases.contains("driver"));
}

TEST_CASE("background documents lower shared phrases") {
  KeywordConfig cfg;
  cfg.top_k = 100;
  const auto rs = wt::read_file(wt::fixture_dir() / "rs" / "rs1_train_control.txt");
  cfg.background_docs = {wt::read_file(wt::fixture_dir() / "rs" / "rs2_radio_system.txt")};
  const auto with_bg = extract_keywords(wt::pipeline(), rs, cfg);
  for (const auto& k : with_bg) {
    CHECK(k.score == doctest::Approx(static_cast<double>(k.tf) * k.idf));
    CHECK(k.idf <= std::log(1.5) + 1 + 1e-12);
    CHECK(k.idf >= 1.0);
  }
}

TEST_CASE("tsv output") {
  const std::vector<Keyword> ks{{"lunar rover", 2, 1.0, 2.0}};
  CHECK(keywords_to_tsv(ks) == "lunar rover\t2\t1.000000\t2.000000\n");
}

}  // TEST_SUITE
