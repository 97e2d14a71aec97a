#include "wikicorpus/crawler.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <set>
#include <thread>
#include <unordered_set>

#include "wikicorpus/error.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

namespace {

/// Applies fn to 0..n-1 on up to `workers` threads; results keep index
/// order. The lowest-index failure is rethrown after all threads stop.
template <typename Fn>
auto parallel_map(std::size_t n, std::size_t workers, Fn fn)
    -> std::vector<decltype(fn(std::size_t{}))> {
  using Result = decltype(fn(std::size_t{}));
  std::vector<Result> results(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    const std::size_t threads = std::min(workers, n);
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (;;) {
          if (failed.load()) return;
          const std::size_t i = next.fetch_add(1);
          if (i >= n) return;
          try {
            results[i] = fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
            failed.store(true);
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

ArticleRef article_from(const nlohmann::json& page) {
  ArticleRef ref;
  ref.title = page.value("title", std::string());
  ref.page_id = page.value("pageid", std::int64_t{0});
  ref.ns = page.value("ns", 0);
  return ref;
}

const nlohmann::json& pages_of(const nlohmann::json& batch) {
  static const nlohmann::json kEmpty = nlohmann::json::array();
  if (!batch.contains("query")) return kEmpty;
  const auto& q = batch["query"];
  if (!q.contains("pages") || !q["pages"].is_array()) return kEmpty;
  return q["pages"];
}

}  // namespace

std::vector<SearchHit> MediaWikiSource::search(std::string_view query) const {
  const auto doc = client_.query({
      {"action", "query"},
      {"format", "json"},
      {"formatversion", "2"},
      {"generator", "search"},
      {"gsrsearch", std::string(query)},
      {"gsrnamespace", "0"},
      {"gsrlimit", std::to_string(kSearchLimit)},
      {"prop", "pageprops"},
      {"ppprop", "disambiguation"},
  });
  std::vector<std::pair<int, SearchHit>> ranked;
  for (const auto& page : pages_of(doc)) {
    if (page.value("missing", false)) continue;
    SearchHit hit;
    hit.article = article_from(page);
    hit.disambiguation = page.contains("pageprops") && page["pageprops"].contains("disambiguation");
    ranked.emplace_back(page.value("index", 0), std::move(hit));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<SearchHit> out;
  out.reserve(ranked.size());
  for (auto& [index, hit] : ranked) out.push_back(std::move(hit));
  return out;
}

std::vector<CategoryRef> MediaWikiSource::categories(const ArticleRef& article) const {
  const auto batches = client_.query_all({
      {"action", "query"},
      {"format", "json"},
      {"formatversion", "2"},
      {"generator", "categories"},
      {"pageids", std::to_string(article.page_id)},
      {"gclshow", "!hidden"},
      {"gcllimit", "max"},
  });
  std::vector<CategoryRef> out;
  for (const auto& batch : batches) {
    for (const auto& page : pages_of(batch)) {
      // category pages that do not exist have no page id to address them by
      if (page.value("missing", false) || !page.contains("pageid")) continue;
      if (page.value("ns", -1) != kCategoryNamespace) continue;
      out.push_back({page.value("title", std::string()), page.value("pageid", std::int64_t{0})});
    }
  }
  return out;
}

CategoryMembers MediaWikiSource::members(const CategoryRef& category) const {
  const auto batches = client_.query_all({
      {"action", "query"},
      {"format", "json"},
      {"formatversion", "2"},
      {"list", "categorymembers"},
      {"cmpageid", std::to_string(category.page_id)},
      {"cmtype", "page|subcat"},
      {"cmprop", "ids|title"},
      {"cmlimit", "max"},
  });
  CategoryMembers out;
  for (const auto& batch : batches) {
    if (!batch.contains("query") || !batch["query"].contains("categorymembers")) continue;
    for (const auto& m : batch["query"]["categorymembers"]) {
      const int ns = m.value("ns", -1);
      if (ns == kArticleNamespace) {
        out.pages.push_back(article_from(m));
      } else if (ns == kCategoryNamespace) {
        out.subcats.push_back({m.value("title", std::string()), m.value("pageid", std::int64_t{0})});
      }
    }
  }
  return out;
}

std::string MediaWikiSource::extract(const ArticleRef& article) const {
  const auto doc = client_.query({
      {"action", "query"},
      {"format", "json"},
      {"formatversion", "2"},
      {"prop", "extracts"},
      {"explaintext", "1"},
      {"exsectionformat", "plain"},
      {"pageids", std::to_string(article.page_id)},
      {"redirects", "1"},
  });
  const bool redirected = doc.contains("query") && doc["query"].contains("redirects") &&
                          !doc["query"]["redirects"].empty();
  const auto& pages = pages_of(doc);
  if (pages.empty()) {
    throw Error(ErrorKind::PageMissing, "no page returned for id " + std::to_string(article.page_id));
  }
  const auto& page = pages.front();
  if (page.value("missing", false) || page.value("invalid", false)) {
    if (redirected) return {};
    throw Error(ErrorKind::PageMissing, "page id " + std::to_string(article.page_id) + " is missing");
  }
  return page.value("extract", std::string());
}

Crawler::Crawler(const WikiSource& source, const Pipeline& pipeline, CrawlConfig config)
    : source_(source), pipeline_(pipeline), config_(config) {
  if (config_.max_articles == 0) config_.max_articles = 1;
  if (config_.workers == 0) config_.workers = 1;
  if (config_.overlap_threshold == 0) config_.overlap_threshold = 1;
}

bool Crawler::title_overlap(std::string_view title, std::string_view keyword) const {
  const auto a = pipeline_.content_tokens(title);
  const auto b = pipeline_.content_tokens(keyword);
  const std::set<std::string> left(a.begin(), a.end());
  std::size_t shared = 0;
  for (const auto& t : std::set<std::string>(b.begin(), b.end())) {
    if (left.contains(t)) ++shared;
  }
  return shared >= config_.overlap_threshold;
}

std::optional<ArticleRef> Crawler::search_article(std::string_view keyword) const {
  if (text::trim(keyword).empty()) return std::nullopt;
  for (const auto& hit : source_.search(keyword)) {
    if (hit.disambiguation || hit.article.ns != kArticleNamespace) continue;
    if (title_overlap(hit.article.title, keyword)) return hit.article;
  }
  return std::nullopt;
}

std::vector<CategoryRef> Crawler::list_categories(const ArticleRef& article) const {
  return source_.categories(article);
}

CategoryMembers Crawler::list_category_members(const CategoryRef& category) const {
  return source_.members(category);
}

std::string Crawler::fetch_article_text(const ArticleRef& article) const {
  return source_.extract(article);
}

CrawlResult Crawler::expand(const std::vector<ArticleRef>& seeds) const {
  CrawlResult result;
  std::map<std::int64_t, ArticleRef> found;
  for (const auto& s : seeds) found.emplace(s.page_id, s);

  if (config_.depth > 0 && !seeds.empty()) {
    std::unordered_set<std::int64_t> visited;
    std::vector<CategoryRef> frontier;
    const auto seed_categories = parallel_map(seeds.size(), config_.workers, [&](std::size_t i) {
      return list_categories(seeds[i]);
    });
    for (const auto& cats : seed_categories) {
      for (const auto& c : cats) {
        if (visited.insert(c.page_id).second) frontier.push_back(c);
      }
    }

    for (std::size_t level = 0; level < config_.depth && !frontier.empty(); ++level) {
      const auto members = parallel_map(frontier.size(), config_.workers, [&](std::size_t i) {
        return list_category_members(frontier[i]);
      });
      spdlog::debug("level {}: {} categories", level, frontier.size());
      std::vector<CategoryRef> next;
      for (std::size_t i = 0; i < frontier.size() && !result.frontier_truncated; ++i) {
        for (const auto& page : members[i].pages) {
          if (page.ns != kArticleNamespace || found.contains(page.page_id)) continue;
          if (found.size() >= config_.max_articles) {
            result.frontier_truncated = true;
            break;
          }
          found.emplace(page.page_id, page);
        }
        if (level + 1 < config_.depth) {
          for (const auto& sub : members[i].subcats) {
            if (visited.insert(sub.page_id).second) next.push_back(sub);
          }
        }
      }
      if (result.frontier_truncated) break;
      frontier = std::move(next);
    }
  }

  result.articles.reserve(found.size());
  for (auto& [id, ref] : found) result.articles.push_back(std::move(ref));
  return result;
}

CrawlResult Crawler::crawl(const std::vector<std::string>& keywords) const {
  auto hits = parallel_map(keywords.size(), config_.workers,
                           [&](std::size_t i) { return search_article(keywords[i]); });
  std::map<std::int64_t, ArticleRef> distinct;
  std::vector<SeedMatch> seeds;
  seeds.reserve(keywords.size());
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    if (hits[i]) distinct.emplace(hits[i]->page_id, *hits[i]);
    seeds.push_back({keywords[i], std::move(hits[i])});
  }
  std::vector<ArticleRef> seed_articles;
  for (auto& [id, ref] : distinct) seed_articles.push_back(ref);
  auto result = expand(seed_articles);
  result.seeds = std::move(seeds);
  return result;
}

std::vector<ArticleText> Crawler::fetch_texts(const std::vector<ArticleRef>& articles) const {
  return parallel_map(articles.size(), config_.workers, [&](std::size_t i) {
    return ArticleText{articles[i], fetch_article_text(articles[i])};
  });
}

}  // namespace wikicorpus
