#include <doctest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "test_support.hpp"
#include "wikicorpus/error.hpp"
#include "wikicorpus/relatedness.hpp"

using namespace wikicorpus;
namespace wt = wikicorpus::testing;

namespace {

const EmbeddingTable& toy() {
  static const auto t = EmbeddingTable::load(wt::fixture_dir() / "embeddings" / "toy.vec");
  return t;
}

DocumentEmbedding embed(std::string_view text, const EmbeddingTable& t) {
  return embed_document(text, t, wt::pipeline().tokenizer(), wt::pipeline().stopwords());
}

ErrorKind parse_error(std::string_view content, std::string* what = nullptr) {
  try {
    (void)EmbeddingTable::parse(content, "t.vec");
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.kind();
  }
  FAIL("parse succeeded");
  return ErrorKind::Io;
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(d);
  for (auto& x : v) x = n(rng);
  return v;
}

double naive_cosine(const std::vector<double>& u, const std::vector<double>& v) {
  double dot = 0, nu = 0, nv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  return dot / std::sqrt(nu * nv);
}

PooledReport fixture_eval(const std::string& domain, const std::vector<std::string>& tests) {
  const auto corpus = Corpus::load(wt::fixture_dir() / "recorded" / domain / "corpus");
  std::vector<NamedReport> reports;
  for (const auto& t : tests) {
    reports.push_back({t, evaluate(corpus, wt::read_file(wt::fixture_dir() / "rs" / t), toy(),
                                   wt::pipeline().tokenizer(), wt::pipeline().stopwords())});
  }
  return pool_reports(std::move(reports));
}

void check_against_expected(const PooledReport& got, const std::string& file) {
  const auto want = nlohmann::json::parse(wt::read_file(wt::fixture_dir() / "expected" / file));
  CHECK(got.min == doctest::Approx(want["min"].get<double>()).epsilon(1e-9));
  CHECK(got.avg == doctest::Approx(want["avg"].get<double>()).epsilon(1e-9));
  CHECK(got.max == doctest::Approx(want["max"].get<double>()).epsilon(1e-9));
  CHECK(got.oov_rate == doctest::Approx(want["oov_rate"].get<double>()).epsilon(1e-9));
  CHECK(got.pairs == want["pairs"].get<std::size_t>());
  REQUIRE(got.tests.size() == want["tests"].size());
  for (std::size_t t = 0; t < got.tests.size(); ++t) {
    const auto& r = got.tests[t].report;
    const auto& w = want["tests"][t];
    CHECK(r.test_tokens == w["test_tokens"].get<std::size_t>());
    REQUIRE(r.per_article.size() == w["per_article"].size());
    for (std::size_t i = 0; i < r.per_article.size(); ++i) {
      CHECK(r.per_article[i].page_id == w["per_article"][i]["page_id"].get<std::int64_t>());
      CHECK(std::abs(r.per_article[i].score - w["per_article"][i]["score"].get<double>()) <= 1e-9);
    }
  }
}

}  // namespace

TEST_SUITE("relatedness") {

TEST_CASE("vector file parsing") {
  const auto t = EmbeddingTable::parse("rail 1 0 0\nRoad 0 1 0\n", "t.vec");
  CHECK(t.size() == 2);
  CHECK(t.dimension() == 3);
  REQUIRE(t.find("road") != nullptr);
  CHECK(*t.find("road") == std::vector<double>{0, 1, 0});
  CHECK(t.find("bridge") == nullptr);

  const auto h = EmbeddingTable::parse("2 3\nrail 1 0 0\nrail 0 1 0\n", "t.vec");
  CHECK(h.size() == 1);
  CHECK(*h.find("rail") == std::vector<double>{1, 0, 0});

  // a GloVe-sized header is a header, not a two-dimensional vector for "400000"
  const auto g = EmbeddingTable::parse("400000 300\n", "t.vec");
  CHECK(g.dimension() == 300);
  CHECK(g.size() == 0);
}

TEST_CASE("vector file errors carry the line") {
  std::string what;
  CHECK(parse_error("rail 1 0 0\nroad 0 1\n", &what) == ErrorKind::InconsistentDimension);
  CHECK(what.find(":2") != std::string::npos);
  CHECK(parse_error("rail 1 zero 0\n", &what) == ErrorKind::MalformedVectorLine);
  CHECK(what.find(":1") != std::string::npos);
  CHECK(parse_error("2 3\nrail 1 0\n") == ErrorKind::InconsistentDimension);
  try {
    (void)EmbeddingTable::load(wt::fixture_dir() / "embeddings" / "absent.vec");
    FAIL("expected MissingFile");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MissingFile);
  }
}

TEST_CASE("toy embedding") {
  CHECK(toy().dimension() == 48);
  CHECK(toy().size() == 502);
}

TEST_CASE("document embeddings") {
  const auto t = EmbeddingTable::parse("rail 1 0 0\nroad 0 1 0\n", "t.vec");
  const auto one = embed("rail", t);
  CHECK(one.vector == std::vector<double>{1, 0, 0});
  CHECK(one.tokens == 1);
  CHECK(one.oov == 0);

  const auto two = embed("The rail and the road.", t);
  CHECK(two.vector == std::vector<double>{0.5, 0.5, 0});
  CHECK(two.tokens == 2);

  const auto none = embed("bridge tunnel", t);
  CHECK(none.vector == std::vector<double>{0, 0, 0});
  CHECK(none.oov == 2);
  CHECK(embed("", t).tokens == 0);
}

TEST_CASE("cosine examples") {
  const std::vector<double> x{1, 0}, y{0, 1}, z{0, 0}, neg{-2, 0};
  CHECK(cosine(x, x) == doctest::Approx(1.0));
  CHECK(cosine(x, y) == doctest::Approx(0.0));
  CHECK(cosine(x, neg) == doctest::Approx(-1.0));
  CHECK(cosine(x, z) == 0.0);
  CHECK(cosine(z, z) == 0.0);
  const std::vector<double> three{1, 2, 3};
  CHECK_THROWS_AS((void)cosine(x, three), Error);
}

TEST_CASE("cosine properties") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + rng() % 64;
    const auto u = random_vector(rng, d);
    const auto v = random_vector(rng, d);
    const double c = cosine(u, v);
    CHECK(c >= -1.0 - 1e-12);
    CHECK(c <= 1.0 + 1e-12);
    CHECK(c == doctest::Approx(cosine(v, u)).epsilon(1e-12));
    CHECK(c == doctest::Approx(naive_cosine(u, v)).epsilon(1e-9));
    CHECK(cosine(u, u) == doctest::Approx(1.0).epsilon(1e-12));
    auto su = u;
    const double s = scale(rng);
    for (auto& x : su) x *= s;
    CHECK(cosine(su, v) == doctest::Approx(c).epsilon(1e-9));
  }
}

TEST_CASE("embeddings depend only on the bag of words") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words{"rail", "track", "signal", "bridge", "the", "qqq", "train", "road"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> bag;
    for (std::size_t i = 0, n = 1 + rng() % 20; i < n; ++i) bag.push_back(words[rng() % words.size()]);
    auto join = [](const std::vector<std::string>& v) {
      std::string s;
      for (const auto& w : v) s += w + " ";
      return s;
    };
    const auto a = embed(join(bag), toy());
    std::shuffle(bag.begin(), bag.end(), rng);
    const auto b = embed(join(bag), toy());
    CHECK(a.vector == b.vector);
    CHECK(a.oov == b.oov);
  }
}

TEST_CASE("identical texts are fully related") {
  const std::string rs = wt::read_file(wt::fixture_dir() / "rs" / "rs2_radio_system.txt");
  const std::vector<ArticleDoc> docs{{1, "A", rs}, {2, "B", rs}};
  const auto r = evaluate(docs, rs, toy(), wt::pipeline().tokenizer(), wt::pipeline().stopwords());
  CHECK(r.min == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.max == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.test_tokens > 0);
}

TEST_CASE("empty corpus and vacuous articles") {
  CHECK_THROWS_AS(evaluate(std::vector<ArticleDoc>{}, "rail", toy(), wt::pipeline().tokenizer(),
                           wt::pipeline().stopwords()),
                  Error);
  const std::vector<ArticleDoc> docs{{1, "A", "rail track"}, {2, "B", "qqqq zzzz"}};
  const auto r = evaluate(docs, "rail", toy(), wt::pipeline().tokenizer(), wt::pipeline().stopwords());
  CHECK(r.vacuous_articles == 1);
  CHECK(r.min == 0.0);
}

TEST_CASE("aggregates agree with a direct computation") {
  std::mt19937_64 rng(21);
  std::vector<std::string> vocab;
  for (int i = 0; i < 40; ++i) vocab.push_back("w" + std::to_string(i));
  EmbeddingTable t(8, "rand");
  for (int i = 0; i < 30; ++i) t.add(vocab[i], random_vector(rng, 8));
  auto text = [&](std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += vocab[rng() % vocab.size()] + " ";
    return s;
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<ArticleDoc> docs;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 12); i < n; ++i) docs.push_back({100 - i, "t", text(1 + rng() % 30)});
    const auto test = text(25);
    const auto r = evaluate(docs, test, t, wt::pipeline().tokenizer(), wt::pipeline().stopwords());
    const auto tv = embed(test, t).vector;
    std::vector<double> scores;
    for (const auto& d : docs) scores.push_back(cosine(embed(d.text, t).vector, tv));
    double sum = 0;
    for (double s : scores) sum += s;
    CHECK(r.min == doctest::Approx(*std::min_element(scores.begin(), scores.end())));
    CHECK(r.max == doctest::Approx(*std::max_element(scores.begin(), scores.end())));
    CHECK(r.avg == doctest::Approx(sum / static_cast<double>(scores.size())));
    CHECK(std::is_sorted(r.per_article.begin(), r.per_article.end(),
                         [](const auto& a, const auto& b) { return a.page_id < b.page_id; }));
  }
}

TEST_CASE("railway fixture scores") {
  const auto got = fixture_eval("railway", {"rs2_radio_system.txt", "rs3_radio_functions.txt"});
  check_against_expected(got, "railway_eval.json");
  CHECK(got.avg == doctest::Approx(0.94).epsilon(0.01));
}

TEST_CASE("transportation fixture scores") {
  const auto got = fixture_eval("transportation", {"rs5_bridge_management.txt", "rs6_transport_information.txt"});
  check_against_expected(got, "transportation_eval.json");
  CHECK(std::abs(got.min - 0.67) <= 0.01);
  CHECK(std::abs(got.avg - 0.95) <= 0.01);
  CHECK(std::abs(got.max - 0.99) <= 0.01);
}

TEST_CASE("seed documents score above the held-out ones") {
  const auto rw = fixture_eval("railway", {"rs1_train_control.txt"});
  check_against_expected(rw, "railway_seed_eval.json");
  const auto tr = fixture_eval("transportation", {"rs4_traffic_management.txt"});
  check_against_expected(tr, "transportation_seed_eval.json");
}

TEST_CASE("json report") {
  const auto got = fixture_eval("railway", {"rs2_radio_system.txt"});
  const auto j = nlohmann::json::parse(pooled_to_json(got));
  CHECK(j["pairs"] == got.pairs);
  CHECK(j["tests"][0]["name"] == "rs2_radio_system.txt");
  CHECK(pooled_summary(got).rfind("all\tmin=", 0) == 0);
}

}  // TEST_SUITE
