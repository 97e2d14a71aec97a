#include "wikicorpus/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wikicorpus/corpus.hpp"
#include "wikicorpus/crawler.hpp"
#include "wikicorpus/error.hpp"
#include "wikicorpus/keywords.hpp"
#include "wikicorpus/relatedness.hpp"
#include "wikicorpus/text.hpp"

#ifndef WIKICORPUS_DEFAULT_DATA_DIR
#define WIKICORPUS_DEFAULT_DATA_DIR "data"
#endif
#ifndef WIKICORPUS_TOOL_VERSION
#define WIKICORPUS_TOOL_VERSION "0.0.0"
#endif

namespace wikicorpus {

namespace fs = std::filesystem;

namespace {

struct MineOptions {
  fs::path input;
  fs::path out;
  std::size_t top_k = 50;
  std::size_t depth = 1;
  fs::path wordnet;
  std::vector<fs::path> background;
  bool offline = false;
  fs::path cache;
  std::size_t max_articles = 5000;
  std::string endpoint = ClientConfig{}.endpoint;
  std::string user_agent = ClientConfig{}.user_agent;
  std::size_t workers = 4;
  long delay_ms = 100;
};

struct KeywordOptions {
  fs::path input;
  fs::path out;
  std::size_t top_k = 50;
  fs::path wordnet;
  std::vector<fs::path> background;
};

struct EvalOptions {
  fs::path corpus;
  std::vector<fs::path> tests;
  fs::path vectors;
  fs::path out;
};

struct ReportOptions {
  fs::path corpus;
  std::size_t top_n = 20;
  fs::path out;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void emit(const fs::path& target, const std::string& data, std::ostream& out) {
  if (target.empty()) {
    out << data;
    out.flush();
    return;
  }
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  std::ofstream f(target, std::ios::binary | std::ios::trunc);
  f << data;
  f.close();
  if (!f) throw Error(ErrorKind::Io, "cannot write " + target.string());
}

void setup_logging(const std::string& level) {
  auto logger = spdlog::get("wikicorpus");
  if (!logger) {
    logger = spdlog::stderr_color_mt("wikicorpus");
    logger->set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  }
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(level));
}

std::shared_ptr<const WordnetLexicon> load_wordnet(const fs::path& dir) {
  auto lexicon = std::make_shared<const WordnetLexicon>(WordnetLexicon::load(dir));
  spdlog::info("wordnet {}: {} lemmas from {}", lexicon->source_version(), lexicon->size(),
               dir.string());
  return lexicon;
}

std::vector<std::string> read_all(const std::vector<fs::path>& paths) {
  std::vector<std::string> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(slurp(p));
  return out;
}

std::string seed_table(const CrawlResult& crawl) {
  std::string out;
  for (const auto& s : crawl.seeds) {
    if (s.article) {
      out += fmt::format("{}\t{}\t{}\n", s.keyword, s.article->page_id, s.article->title);
    } else {
      out += fmt::format("{}\t-\t-\n", s.keyword);
    }
  }
  return out;
}

class Runner {
 public:
  explicit Runner(const CliContext& ctx)
      : ctx_(ctx),
        out_(ctx.out != nullptr ? *ctx.out : std::cout),
        err_(ctx.err != nullptr ? *ctx.err : std::cerr),
        data_dir_(ctx.data_dir.empty() ? default_data_dir() : ctx.data_dir) {}

  int mine(const MineOptions& o) {
    Pipeline pipeline(PipelineResources::load(data_dir_), load_wordnet(o.wordnet));
    const std::string rs = slurp(o.input);

    KeywordConfig kc;
    kc.top_k = o.top_k;
    kc.background_docs = read_all(o.background);
    const auto keywords = extract_keywords(pipeline, rs, kc);
    spdlog::info("{} keywords", keywords.size());

    ClientConfig cc;
    cc.endpoint = o.endpoint;
    cc.user_agent = o.user_agent;
    cc.cache_dir = o.cache.empty() ? o.out / "cache" : o.cache;
    cc.offline = o.offline;
    cc.request_delay = std::chrono::milliseconds(std::max(0L, o.delay_ms));
    auto transport = ctx_.transport_factory ? ctx_.transport_factory() : make_http_transport();
    MediaWikiClient client(cc, std::move(transport));
    MediaWikiSource source(client);

    CrawlConfig crawl_config;
    crawl_config.depth = o.depth;
    crawl_config.max_articles = o.max_articles;
    crawl_config.workers = o.workers;
    Crawler crawler(source, pipeline, crawl_config);

    std::vector<std::string> phrases;
    phrases.reserve(keywords.size());
    for (const auto& k : keywords) phrases.push_back(k.phrase);
    const auto crawl = crawler.crawl(phrases);
    if (crawl.frontier_truncated) {
      spdlog::warn("stopped at --max-articles={}; corpus is incomplete", o.max_articles);
    }
    const auto texts = crawler.fetch_texts(crawl.articles);

    ManifestFields fields;
    fields.tool_version = WIKICORPUS_TOOL_VERSION;
    fields.created_at = rfc3339_now();
    fields.rs_source_hash = "sha256:" + text::sha256_hex(rs);
    fields.wordnet_version = pipeline.wordnet()->source_version();
    fields.depth = o.depth;
    fields.keywords = keywords;
    const auto manifest = write_corpus(texts, fields, o.out);
    spdlog::info("{} network requests, {} cache hits", client.network_requests(),
                 client.cache_hits());

    const auto matched = std::count_if(crawl.seeds.begin(), crawl.seeds.end(),
                                       [](const SeedMatch& s) { return s.article.has_value(); });
    std::set<std::int64_t> distinct_seeds;
    for (const auto& s : crawl.seeds) {
      if (s.article) distinct_seeds.insert(s.article->page_id);
    }
    out_ << "# keywords\n" << keywords_to_tsv(keywords);
    out_ << "# seeds\n" << seed_table(crawl);
    out_ << fmt::format("# summary\nkeywords\t{}\nmatched_keywords\t{}\nseed_articles\t{}\narticles\t{}\n",
                        keywords.size(), matched, distinct_seeds.size(), manifest.articles.size());
    if (crawl.frontier_truncated) out_ << "truncated\ttrue\n";
    out_.flush();
    return kExitOk;
  }

  int keywords(const KeywordOptions& o) {
    std::shared_ptr<const WordnetLexicon> wordnet;
    if (!o.wordnet.empty()) {
      wordnet = load_wordnet(o.wordnet);
    } else {
      spdlog::warn("no --wordnet given: generic phrases are kept and heads are not lemmatized");
    }
    Pipeline pipeline(PipelineResources::load(data_dir_), wordnet);
    KeywordConfig kc;
    kc.top_k = o.top_k;
    kc.background_docs = read_all(o.background);
    const auto keywords = extract_keywords(pipeline, slurp(o.input), kc);
    emit(o.out, keywords_to_tsv(keywords), out_);
    return kExitOk;
  }

  int eval(const EvalOptions& o) {
    const auto corpus = Corpus::load(o.corpus);
    const auto table = EmbeddingTable::load(o.vectors);
    spdlog::info("{} vectors of dimension {}", table.size(), table.dimension());
    const auto resources = PipelineResources::load(data_dir_);

    std::vector<ArticleDoc> docs;
    docs.reserve(corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const auto& a = corpus.manifest().articles[i];
      docs.push_back({a.page_id, a.title, corpus.read_text(i)});
    }
    std::vector<NamedReport> reports;
    for (const auto& t : o.tests) {
      reports.push_back({t.filename().string(), evaluate(docs, slurp(t), table, resources.tokenizer,
                                                         resources.stopwords)});
      const auto& r = reports.back().report;
      if (r.oov_rate > 0.5) {
        spdlog::warn("{}: {:.0f}% of tokens have no vector; scores may be vacuous",
                     t.string(), 100.0 * r.oov_rate);
      }
    }
    const auto pooled = pool_reports(std::move(reports));
    if (o.out.empty()) {
      out_ << pooled_to_json(pooled);
    } else {
      emit(o.out, pooled_to_json(pooled), out_);
      out_ << pooled_summary(pooled);
    }
    out_.flush();
    return kExitOk;
  }

  int report(const ReportOptions& o) {
    const auto corpus = Corpus::load(o.corpus);
    // lemmas need the WordNet version the corpus was built with; the
    // frequency report tolerates its absence by counting lowercase surfaces
    Pipeline pipeline(PipelineResources::load(data_dir_), wordnet_for_report_);
    const auto report = frequency_report(corpus, pipeline, o.top_n);
    spdlog::info("{} retained tokens", report.retained_tokens);
    emit(o.out, frequency_to_tsv(report), out_);
    return kExitOk;
  }

  void set_report_wordnet(std::shared_ptr<const WordnetLexicon> w) { wordnet_for_report_ = std::move(w); }

  std::ostream& err() { return err_; }

 private:
  const CliContext& ctx_;
  std::ostream& out_;
  std::ostream& err_;
  fs::path data_dir_;
  std::shared_ptr<const WordnetLexicon> wordnet_for_report_;
};

}  // namespace

fs::path default_data_dir() {
  if (const char* env = std::getenv("WIKICORPUS_DATA_DIR"); env != nullptr && *env != '\0') {
    return env;
  }
  return WIKICORPUS_DEFAULT_DATA_DIR;
}

int run_cli(const std::vector<std::string>& args, const CliContext& context) {
  Runner runner(context);
  std::ostream& out = context.out != nullptr ? *context.out : std::cout;

  CLI::App app{"Builds domain-specific corpora from Wikipedia for a requirements document."};
  app.name("wikicorpus");
  app.set_version_flag("--version", std::string(WIKICORPUS_TOOL_VERSION));
  app.require_subcommand(1);
  std::string log_level = "info";
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off")
      ->capture_default_str()
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}));

  const auto positive = CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max());

  MineOptions mo;
  auto* mine = app.add_subcommand("mine", "Extract keywords, crawl Wikipedia, write a corpus");
  mine->add_option("--input", mo.input, "Requirements document (UTF-8 text)")
      ->required()
      ->check(CLI::ExistingFile);
  mine->add_option("--out", mo.out, "Corpus output directory")->required();
  mine->add_option("--top-k", mo.top_k, "Keywords used as search queries")
      ->capture_default_str()
      ->check(positive);
  mine->add_option("--depth", mo.depth, "Category levels to expand (0 = seed articles only)")
      ->capture_default_str();
  mine->add_option("--wordnet", mo.wordnet, "WordNet dict directory (index.* and *.exc)")
      ->required()
      ->check(CLI::ExistingDirectory);
  mine->add_option("--background", mo.background, "Background documents for IDF (repeatable)")
      ->check(CLI::ExistingFile);
  mine->add_flag("--offline", mo.offline, "Answer every request from the cache");
  mine->add_option("--cache", mo.cache, "Response cache directory (default: <out>/cache)");
  mine->add_option("--max-articles", mo.max_articles, "Stop expanding beyond this many articles")
      ->capture_default_str()
      ->check(positive);
  mine->add_option("--endpoint", mo.endpoint, "MediaWiki API endpoint")->capture_default_str();
  mine->add_option("--user-agent", mo.user_agent, "User-Agent header")->capture_default_str();
  mine->add_option("--workers", mo.workers, "Concurrent API requests")
      ->capture_default_str()
      ->check(positive);
  mine->add_option("--delay-ms", mo.delay_ms, "Minimum gap between requests per worker")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);

  KeywordOptions ko;
  auto* kw = app.add_subcommand("keywords", "Print the top-K keywords of a document as TSV");
  kw->add_option("--input", ko.input, "Requirements document (UTF-8 text)")
      ->required()
      ->check(CLI::ExistingFile);
  kw->add_option("--out", ko.out, "Write the TSV here instead of standard output");
  kw->add_option("--top-k", ko.top_k, "Number of keywords")->capture_default_str()->check(positive);
  kw->add_option("--wordnet", ko.wordnet, "WordNet dict directory; enables the generic-term filter")
      ->check(CLI::ExistingDirectory);
  kw->add_option("--background", ko.background, "Background documents for IDF (repeatable)")
      ->check(CLI::ExistingFile);

  EvalOptions eo;
  auto* ev = app.add_subcommand("eval", "Cosine relatedness between a corpus and test documents");
  ev->add_option("--corpus", eo.corpus, "Corpus directory (contains manifest.json)")->required();
  ev->add_option("--test", eo.tests, "Test document (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  ev->add_option("--vectors", eo.vectors, "Word vectors in word2vec/GloVe text format")
      ->required()
      ->check(CLI::ExistingFile);
  ev->add_option("--out", eo.out, "Write the JSON report here; print a summary instead");

  ReportOptions ro;
  fs::path report_wordnet;
  auto* rep = app.add_subcommand("report", "Most frequent lemmas of a corpus as TSV");
  rep->add_option("--corpus", ro.corpus, "Corpus directory (contains manifest.json)")->required();
  rep->add_option("--top-n", ro.top_n, "Number of rows")->capture_default_str()->check(positive);
  rep->add_option("--wordnet", report_wordnet, "WordNet dict directory for lemmatization")
      ->check(CLI::ExistingDirectory);
  rep->add_option("--out", ro.out, "Write the TSV here instead of standard output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << WIKICORPUS_TOOL_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    runner.err() << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  setup_logging(log_level);
  try {
    if (*mine) return runner.mine(mo);
    if (*kw) return runner.keywords(ko);
    if (*ev) return runner.eval(eo);
    if (!report_wordnet.empty()) runner.set_report_wordnet(load_wordnet(report_wordnet));
    return runner.report(ro);
  } catch (const Error& e) {
    spdlog::error("{}: {}", to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
  }
  return kExitFailure;
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace wikicorpus
