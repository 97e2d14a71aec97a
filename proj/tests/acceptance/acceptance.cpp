// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>

#include "test_support.hpp"
#include "wikicorpus/crawler.hpp"
#include "wikicorpus/error.hpp"
#include "wikicorpus/keywords.hpp"
#include "wikicorpus/relatedness.hpp"

using namespace wikicorpus;
namespace wt = wikicorpus::testing;
namespace fs = std::filesystem;
using namespace std::chrono_literals;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

const fs::path& fixtures() {
  static const fs::path p = wt::fixture_dir();
  return p;
}

std::string rs(const std::string& name) { return (fixtures() / "rs" / name).string(); }

wt::CliRun mine_offline(int depth, const fs::path& out, const std::string& workers = "4") {
  return wt::run_cli({"--log-level", "off", "mine", "--input", rs("rs1_train_control.txt"), "--out", out.string(),
                      "--wordnet", (fixtures() / "wordnet-mini").string(), "--depth", std::to_string(depth),
                      "--offline", "--cache", (fixtures() / "recorded" / "railway" / "cache").string(),
                      "--endpoint", std::string(wt::kFixtureEndpoint), "--workers", workers});
}

nlohmann::json railway_meta() {
  return nlohmann::json::parse(wt::read_file(fixtures() / "wiki" / "railway.json"))["meta"]["expected"];
}

// 1 -------------------------------------------------------------------------
Outcome fixture_crawl() {
  const auto t0 = Clock::now();
  const auto meta = railway_meta();
  wt::TempDir dir;
  const auto d1 = mine_offline(1, dir / "d1");
  const auto d0 = mine_offline(0, dir / "d0");
  const double secs = seconds_since(t0);
  if (d1.code != 0 || d0.code != 0) return {false, fmt::format("mine exited {} / {}", d1.code, d0.code)};
  auto s1 = wt::mine_summary(d1.out);
  auto s0 = wt::mine_summary(d0.out);
  const auto want1 = std::to_string(meta["articles_depth1"].get<int>());
  const auto want0 = std::to_string(meta["seed_articles"].get<int>());
  const bool ok = s1["articles"] == want1 && s0["articles"] == want0 && s1["seed_articles"] == want0 && secs < 30;
  return {ok, fmt::format("depth1={} (want {}) depth0={} (want {}) {:.1f}s", s1["articles"], want1,
                          s0["articles"], want0, secs)};
}

// 2 -------------------------------------------------------------------------
Outcome depth_monotonicity() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20220901);
  std::size_t violations = 0, disagreements = 0, max_nodes = 0;
  for (int g = 0; g < 50; ++g) {
    auto graph = wt::make_random_graph(rng, {1000, 5});
    max_nodes = std::max(max_nodes, graph.model.pages.size());
    auto wiki = std::make_shared<const mock::MockWiki>(graph.model, 50);
    auto transport = std::make_shared<mock::MockTransport>(wiki);
    ClientConfig cc;
    cc.endpoint = wt::kFixtureEndpoint;
    cc.request_delay = 0ms;
    MediaWikiClient client(cc, transport);
    MediaWikiSource source(client);
    std::vector<ArticleRef> seeds;
    for (auto id : graph.seed_ids) {
      for (const auto& p : graph.model.pages) {
        if (p.id == id) seeds.push_back({p.title, p.id, p.ns});
      }
    }
    std::set<std::int64_t> previous;
    for (std::size_t depth = 0; depth <= 3; ++depth) {
      CrawlConfig cfg;
      cfg.depth = depth;
      cfg.workers = 4;
      Crawler crawler(source, wt::pipeline(), cfg);
      std::set<std::int64_t> got;
      for (const auto& a : crawler.expand(seeds).articles) got.insert(a.page_id);
      if (!std::includes(got.begin(), got.end(), previous.begin(), previous.end())) ++violations;
      if (got != wt::reference_expand(graph.model, graph.seed_ids, depth)) ++disagreements;
      previous = std::move(got);
    }
  }
  const double secs = seconds_since(t0);
  return {violations == 0 && disagreements == 0 && secs < 60,
          fmt::format("50 graphs (<= {} nodes), {} subset violations, {} reference mismatches, {:.1f}s", max_nodes,
                      violations, disagreements, secs)};
}

// 3 -------------------------------------------------------------------------
Outcome tfidf_oracle() {
  std::mt19937_64 rng(2024);
  double worst = 0;
  std::size_t bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto docs = wt::random_count_docs(rng, 10, 100);
    const std::vector<CandidateCounts> counts(docs.begin(), docs.end());
    const std::size_t target = rng() % docs.size();
    const auto got = score_tfidf(counts, target);
    const auto want = wt::brute_force_tfidf(docs, target);
    if (got.size() != want.size()) {
      ++bad;
      continue;
    }
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (got[i].phrase != want[i].first) ++bad;
      worst = std::max(worst, std::abs(got[i].score - want[i].second) / std::abs(want[i].second));
    }
  }
  std::size_t single_bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto docs = wt::random_count_docs(rng, 1, 100);
    const std::vector<CandidateCounts> counts(docs.begin(), docs.end());
    for (const auto& k : score_tfidf(counts, 0)) single_bad += k.score != static_cast<double>(k.tf);
  }
  return {bad == 0 && worst <= 1e-9 && single_bad == 0,
          fmt::format("200 instances, max rel err {:.2e}, {} mismatches, {} single-doc deviations", worst, bad,
                      single_bad)};
}

// 4 -------------------------------------------------------------------------
Outcome wordnet_filter() {
  const auto kept = filter_generic({{"rover", 3}, {"lunar rover", 2}}, *wt::mini_wordnet());
  const bool ok = kept == CandidateCounts{{"lunar rover", 2}};
  std::string left;
  for (const auto& [p, n] : kept) left += (left.empty() ? "" : ", ") + p;
  return {ok, "kept: " + left};
}

// 5 -------------------------------------------------------------------------
nlohmann::json run_eval(const std::string& domain, const std::vector<std::string>& tests) {
  std::vector<std::string> args{"--log-level", "off", "eval", "--corpus",
                                (fixtures() / "recorded" / domain / "corpus").string(), "--vectors",
                                (fixtures() / "embeddings" / "toy.vec").string()};
  for (const auto& t : tests) args.insert(args.end(), {"--test", rs(t)});
  const auto r = wt::run_cli(args);
  if (r.code != 0) throw std::runtime_error(fmt::format("eval exited {}", r.code));
  return nlohmann::json::parse(r.out);
}

Outcome relatedness() {
  const auto rw = run_eval("railway", {"rs2_radio_system.txt", "rs3_radio_functions.txt"});
  const auto want = nlohmann::json::parse(wt::read_file(fixtures() / "expected" / "railway_eval.json"));
  bool ok = true;
  for (const char* k : {"min", "avg", "max"}) {
    ok = ok && std::abs(rw[k].get<double>() - want[k].get<double>()) <= 1e-9;
  }
  const auto tr = run_eval("transportation", {"rs5_bridge_management.txt", "rs6_transport_information.txt"});
  const double tmin = tr["min"], tavg = tr["avg"], tmax = tr["max"];
  ok = ok && std::abs(tmin - 0.67) <= 0.01 && std::abs(tavg - 0.95) <= 0.01 && std::abs(tmax - 0.99) <= 0.01;
  return {ok, fmt::format("railway {:.4f}/{:.4f}/{:.4f} (recorded {:.4f}/{:.4f}/{:.4f}); "
                          "transportation {:.4f}/{:.4f}/{:.4f} (target 0.67/0.95/0.99 +-0.01)",
                          rw["min"].get<double>(), rw["avg"].get<double>(), rw["max"].get<double>(),
                          want["min"].get<double>(), want["avg"].get<double>(), want["max"].get<double>(), tmin,
                          tavg, tmax)};
}

// 6 -------------------------------------------------------------------------
Outcome cosine_properties() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(6);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  const auto table = EmbeddingTable::load(fixtures() / "embeddings" / "toy.vec");
  const auto& p = wt::pipeline();
  const std::vector<std::string> words{"rail",  "track", "train", "signal", "road", "bridge", "the",
                                       "qqqq",  "lane",  "brake", "radio",  "data", "of",     "zzzz"};
  std::size_t failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t d = 1 + rng() % 300;
    std::vector<double> u(d), v(d), zero(d, 0.0);
    for (auto& x : u) x = normal(rng);
    for (auto& x : v) x = normal(rng);
    const double c = cosine(u, v);
    auto scaled = u;
    const double s = scale(rng);
    for (auto& x : scaled) x *= s;
    failures += std::abs(c - cosine(v, u)) > 1e-12;
    failures += std::abs(cosine(scaled, v) - c) > 1e-9;
    failures += std::abs(c) > 1 + 1e-9;
    failures += cosine(u, zero) != 0.0 || cosine(zero, zero) != 0.0;

    std::vector<std::string> bag;
    for (std::size_t i = 0, n = rng() % 30; i < n; ++i) bag.push_back(words[rng() % words.size()]);
    auto join = [](const std::vector<std::string>& b) {
      std::string out;
      for (const auto& w : b) out += w + ' ';
      return out;
    };
    const auto a = embed_document(join(bag), table, p.tokenizer(), p.stopwords());
    std::shuffle(bag.begin(), bag.end(), rng);
    const auto b = embed_document(join(bag), table, p.tokenizer(), p.stopwords());
    failures += a.vector != b.vector;
    if (a.tokens == a.oov) failures += std::any_of(a.vector.begin(), a.vector.end(), [](double x) { return x != 0; });
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 5, fmt::format("1000 trials, {} failures, {:.2f}s", failures, secs)};
}

// 7 -------------------------------------------------------------------------
Outcome pos_np_gate() {
  const auto golden = wt::read_golden_tagged(fixtures() / "golden" / "tagged.tsv");
  std::size_t total = 0, same = 0;
  for (const auto& g : golden) {
    std::vector<Token> toks;
    for (const auto& t : g.tokens) toks.push_back(Token{t, {}, Pos::Other, false, {}});
    wt::pipeline().pos_tag(toks);
    for (std::size_t i = 0; i < toks.size(); ++i, ++total) same += toks[i].pos == g.tags[i];
  }
  const double agreement = static_cast<double>(same) / static_cast<double>(total);

  const Pipeline np_pipeline(PipelineResources::load(wt::data_dir()),
                             std::make_shared<const WordnetLexicon>(
                                 WordnetLexicon::load(fixtures() / "golden" / "wordnet")));
  std::vector<wt::GoldenNp> got;
  for (std::size_t i = 0; i < golden.size(); ++i) {
    const auto sentence = wt::golden_sentence(golden[i], np_pipeline);
    for (const auto& np : np_pipeline.chunk(sentence, i)) {
      got.push_back({np.sentence, np.first_token, np.surface, np.normalized});
    }
  }
  const auto expected = wt::read_golden_nps(fixtures() / "golden" / "nps.tsv");
  return {golden.size() == 200 && agreement >= 0.90 && got == expected,
          fmt::format("{} sentences, tag agreement {:.1f}%, NPs {} produced / {} expected, {}", golden.size(),
                      100 * agreement, got.size(), expected.size(), got == expected ? "identical" : "different")};
}

// 8 -------------------------------------------------------------------------
Outcome round_trip() {
  std::mt19937_64 rng(8);
  std::vector<ArticleText> articles;
  for (int i = 0; i < 100; ++i) {
    std::string body;
    for (std::size_t k = 0, n = rng() % 2000; k < n; ++k) body += static_cast<char>(rng() % 256);
    articles.push_back({{"Article/" + std::to_string(i), 5000 + 3 * i, 0}, body});
  }
  ManifestFields f;
  f.tool_version = "acceptance";
  f.created_at = "2022-09-01T00:00:00Z";
  f.rs_source_hash = "sha256:00";
  f.wordnet_version = "3.0";
  wt::TempDir dir;
  write_corpus(articles, f, dir.path());

  std::size_t mismatched = 0;
  {
    const auto c = Corpus::load(dir.path());
    for (std::size_t i = 0; i < c.size(); ++i) mismatched += c.read_text(i) != articles[i].text;
  }
  auto integrity_error = [&] {
    try {
      (void)Corpus::load(dir.path());
    } catch (const Error& e) {
      return e.kind() == ErrorKind::Integrity;
    }
    return false;
  };
  const auto manifest = wt::read_file(dir / "manifest.json");
  auto j = nlohmann::ordered_json::parse(manifest);
  j["articles"][42]["byte_length"] = j["articles"][42]["byte_length"].get<std::uint64_t>() + 1;
  wt::write_file(dir / "manifest.json", j.dump(2) + "\n");
  const bool length_caught = integrity_error();
  wt::write_file(dir / "manifest.json", manifest);
  fs::remove(dir / "articles" / "5150.txt");
  const bool missing_caught = integrity_error();
  return {mismatched == 0 && length_caught && missing_caught,
          fmt::format("100 articles, {} byte mismatches, tampered length {}, missing file {}", mismatched,
                      length_caught ? "detected" : "MISSED", missing_caught ? "detected" : "MISSED")};
}

// 9 -------------------------------------------------------------------------
std::string directory_bytes(const fs::path& root) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::string all;
  for (const auto& f : files) all += fs::relative(f, root).string() + '\0' + wt::read_file(f) + '\0';
  return all;
}

Outcome determinism() {
  // created_at is the only wall-clock field; pin it as reproducible builds do
  ::setenv("SOURCE_DATE_EPOCH", "1661990400", 1);
  wt::TempDir dir;
  const auto a = mine_offline(1, dir / "a", "4");
  const auto b = mine_offline(1, dir / "b", "4");
  const auto c = mine_offline(1, dir / "c", "1");
  ::unsetenv("SOURCE_DATE_EPOCH");
  const bool mine_ok = a.code == 0 && a.out == b.out && a.out == c.out &&
                       directory_bytes(dir / "a") == directory_bytes(dir / "b") &&
                       directory_bytes(dir / "a") == directory_bytes(dir / "c");

  const std::vector<std::string> kw{"--log-level", "off", "keywords", "--input", rs("rs1_train_control.txt"),
                                    "--wordnet", (fixtures() / "wordnet-mini").string()};
  const auto k1 = wt::run_cli(kw);
  const auto k2 = wt::run_cli(kw);
  const bool kw_ok = k1.code == 0 && !k1.out.empty() && k1.out == k2.out;
  return {mine_ok && kw_ok, fmt::format("mine (2 runs + workers 4 vs 1): {}; keywords (2 runs): {}",
                                        mine_ok ? "identical" : "DIFFERENT", kw_ok ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"fixture crawl reproduction", fixture_crawl},
      {"depth monotonicity", depth_monotonicity},
      {"tf-idf oracle equivalence", tfidf_oracle},
      {"wordnet filter", wordnet_filter},
      {"relatedness reproduction", relatedness},
      {"cosine/embedding properties", cosine_properties},
      {"pos/np quality gate", pos_np_gate},
      {"round-trip integrity", round_trip},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << fmt::format("{} {}. {}: {}", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail)
              << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
