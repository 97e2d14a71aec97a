#include <doctest.h>

#include <nlohmann/json.hpp>

#include "test_support.hpp"

namespace wt = wikicorpus::testing;
namespace fs = std::filesystem;

namespace {

const fs::path& fixtures() {
  static const fs::path p = wt::fixture_dir();
  return p;
}

std::string rs(const std::string& name) { return (fixtures() / "rs" / name).string(); }

// Replays the recorded crawl: offline against a copy of the recorded cache.
wt::CliRun mine_offline(const std::string& domain, const std::string& input, int depth, const fs::path& out,
                        const std::string& workers = "4") {
  return wt::run_cli({"--log-level", "off", "mine", "--input", rs(input), "--out", out.string(), "--wordnet",
                      (fixtures() / "wordnet-mini").string(), "--depth", std::to_string(depth), "--offline",
                      "--cache", (fixtures() / "recorded" / domain / "cache").string(), "--endpoint",
                      std::string(wt::kFixtureEndpoint), "--workers", workers});
}

nlohmann::json expected_meta(const std::string& domain) {
  return nlohmann::json::parse(wt::read_file(fixtures() / "wiki" / (domain + ".json")))["meta"]["expected"];
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("mine replays the railway crawl offline") {
  wt::TempDir dir;
  const auto meta = expected_meta("railway");
  const auto r = mine_offline("railway", "rs1_train_control.txt", 1, dir / "corpus");
  REQUIRE(r.code == 0);
  const auto s = wt::mine_summary(r.out);
  CHECK(s.at("keywords") == "50");
  CHECK(s.at("matched_keywords") == std::to_string(meta["matched_keywords"].get<int>()));
  CHECK(s.at("seed_articles") == std::to_string(meta["seed_articles"].get<int>()));
  CHECK(s.at("articles") == std::to_string(meta["articles_depth1"].get<int>()));
  CHECK(r.out.find("trainborne equipment\t") != std::string::npos);
  CHECK(r.out.find("emergency brake\t") != std::string::npos);
}

TEST_CASE("mine at depth 0 keeps only the seeds") {
  wt::TempDir dir;
  const auto r = mine_offline("railway", "rs1_train_control.txt", 0, dir / "corpus");
  REQUIRE(r.code == 0);
  CHECK(wt::mine_summary(r.out).at("articles") ==
        std::to_string(expected_meta("railway")["articles_depth0"].get<int>()));
}

TEST_CASE("mine replays the transportation crawl offline") {
  wt::TempDir dir;
  const auto meta = expected_meta("transportation");
  const auto r = mine_offline("transportation", "rs4_traffic_management.txt", 1, dir / "corpus");
  REQUIRE(r.code == 0);
  const auto s = wt::mine_summary(r.out);
  CHECK(s.at("matched_keywords") == std::to_string(meta["matched_keywords"].get<int>()));
  CHECK(s.at("articles") == std::to_string(meta["articles_depth1"].get<int>()));
}

TEST_CASE("mine reproduces the recorded corpus byte for byte") {
  wt::TempDir dir;
  ::setenv("SOURCE_DATE_EPOCH", "1661990400", 1);
  const auto r = mine_offline("railway", "rs1_train_control.txt", 1, dir / "corpus", "1");
  ::unsetenv("SOURCE_DATE_EPOCH");
  REQUIRE(r.code == 0);
  CHECK(wt::read_file(dir / "corpus" / "manifest.json") ==
        wt::read_file(fixtures() / "recorded" / "railway" / "corpus" / "manifest.json"));
}

TEST_CASE("mine offline with an incomplete cache fails") {
  wt::TempDir dir;
  const auto r = wt::run_cli({"--log-level", "off", "mine", "--input", rs("rs2_radio_system.txt"), "--out",
                              (dir / "c").string(), "--wordnet", (fixtures() / "wordnet-mini").string(),
                              "--offline", "--cache", (dir / "empty").string()});
  CHECK(r.code == 1);
  CHECK_FALSE(fs::exists(dir / "c" / "manifest.json"));
}

TEST_CASE("mine against the mock wiki") {
  wt::TempDir dir;
  auto wiki = wt::load_wiki("railway");
  const auto r = wt::run_cli({"--log-level", "off", "mine", "--input", rs("rs1_train_control.txt"), "--out",
                              (dir / "c").string(), "--wordnet", (fixtures() / "wordnet-mini").string(),
                              "--depth", "0", "--endpoint", std::string(wt::kFixtureEndpoint), "--delay-ms", "0"},
                             [wiki] { return std::make_shared<wikicorpus::mock::MockTransport>(wiki); });
  REQUIRE(r.code == 0);
  CHECK(wt::mine_summary(r.out).at("articles") == "15");
  CHECK(fs::exists(dir / "c" / "cache"));  // default cache location
}

TEST_CASE("usage errors exit 2") {
  wt::TempDir dir;
  const auto no_wn = wt::run_cli({"mine", "--input", rs("rs1_train_control.txt"), "--out", (dir / "c").string()});
  CHECK(no_wn.code == 2);
  CHECK(no_wn.err.find("--wordnet") != std::string::npos);

  CHECK(wt::run_cli({}).code == 2);
  CHECK(wt::run_cli({"frobnicate"}).code == 2);
  CHECK(wt::run_cli({"keywords", "--input", (dir / "absent.txt").string()}).code == 2);
  CHECK(wt::run_cli({"keywords", "--input", rs("rs1_train_control.txt"), "--top-k", "0"}).code == 2);
  CHECK(wt::run_cli({"eval", "--corpus", (fixtures() / "recorded" / "railway" / "corpus").string(), "--test",
                     rs("rs2_radio_system.txt"), "--vectors", (dir / "absent.vec").string()})
            .code == 2);
  CHECK(wt::run_cli({"report", "--corpus", (fixtures() / "recorded" / "railway" / "corpus").string(),
                     "--top-n", "0"})
            .code == 2);
}

TEST_CASE("keywords") {
  wt::TempDir dir;
  wt::write_file(dir / "empty.txt", "");
  const auto empty = wt::run_cli({"--log-level", "off", "keywords", "--input", (dir / "empty.txt").string()});
  CHECK(empty.code == 0);
  CHECK(empty.out.empty());

  const std::vector<std::string> args{"keywords", "--input", rs("rs1_train_control.txt"), "--top-k", "5",
                                      "--wordnet", (fixtures() / "wordnet-mini").string()};
  const auto five = wt::run_cli(args);
  CHECK(five.code == 0);
  CHECK(std::count(five.out.begin(), five.out.end(), '\n') == 5);
  CHECK(five.out.rfind("trainborne equipment\t", 0) == 0);
  CHECK(wt::run_cli(args).out == five.out);

  auto to_file = args;
  to_file.insert(to_file.end(), {"--out", (dir / "k.tsv").string()});
  CHECK(wt::run_cli(to_file).code == 0);
  CHECK(wt::read_file(dir / "k.tsv") == five.out);
}

TEST_CASE("eval") {
  const auto corpus = (fixtures() / "recorded" / "railway" / "corpus").string();
  const auto vec = (fixtures() / "embeddings" / "toy.vec").string();
  const auto r = wt::run_cli({"--log-level", "off", "eval", "--corpus", corpus, "--test",
                              rs("rs2_radio_system.txt"), "--test", rs("rs3_radio_functions.txt"), "--vectors", vec});
  REQUIRE(r.code == 0);
  const auto got = nlohmann::json::parse(r.out);
  const auto want = nlohmann::json::parse(wt::read_file(fixtures() / "expected" / "railway_eval.json"));
  CHECK(got["min"].get<double>() == doctest::Approx(want["min"].get<double>()).epsilon(1e-9));
  CHECK(got["avg"].get<double>() == doctest::Approx(want["avg"].get<double>()).epsilon(1e-9));
  CHECK(got["max"].get<double>() == doctest::Approx(want["max"].get<double>()).epsilon(1e-9));

  wt::TempDir dir;
  const auto seed = wt::run_cli({"--log-level", "off", "eval", "--corpus", corpus, "--test",
                                 rs("rs1_train_control.txt"), "--vectors", vec, "--out", (dir / "e.json").string()});
  REQUIRE(seed.code == 0);
  CHECK(seed.out.rfind("all\tmin=0.2740\tavg=0.9477\tmax=0.9861", 0) == 0);
  CHECK(fs::exists(dir / "e.json"));

  const auto bad = wt::run_cli({"--log-level", "off", "eval", "--corpus", (dir / "nowhere").string(), "--test",
                                rs("rs1_train_control.txt"), "--vectors", vec});
  CHECK(bad.code == 1);  // a runtime failure, not a usage error
}

TEST_CASE("report") {
  const auto corpus = (fixtures() / "recorded" / "railway" / "corpus").string();
  const std::vector<std::string> args{"--log-level", "off", "report", "--corpus", corpus, "--top-n", "5",
                                      "--wordnet", (fixtures() / "wordnet-mini").string()};
  const auto r = wt::run_cli(args);
  REQUIRE(r.code == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
  CHECK(r.out.find("rail\t") != std::string::npos);
  CHECK(wt::run_cli(args).out == r.out);

  wt::TempDir dir;
  fs::copy(corpus, dir / "c", fs::copy_options::recursive);
  fs::remove(dir / "c" / "articles" / "10001.txt");
  CHECK(wt::run_cli({"--log-level", "off", "report", "--corpus", (dir / "c").string()}).code == 1);
}

TEST_CASE("help lists the flags with their defaults") {
  const auto top = wt::run_cli({"--help"});
  CHECK(top.code == 0);
  for (const char* s : {"mine", "keywords", "eval", "report"}) CHECK(top.out.find(s) != std::string::npos);
  const auto mine = wt::run_cli({"mine", "--help"});
  CHECK(mine.code == 0);
  for (const char* f : {"--input", "--out", "--top-k", "--depth", "--wordnet", "--offline", "--cache", "--workers"}) {
    CHECK(mine.out.find(f) != std::string::npos);
  }
  CHECK(mine.out.find("[50]") != std::string::npos);
  CHECK(wt::run_cli({"--version"}).code == 0);
}

}  // TEST_SUITE
