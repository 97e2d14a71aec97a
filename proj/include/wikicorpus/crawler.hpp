#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikicorpus/mediawiki.hpp"
#include "wikicorpus/preprocess.hpp"

namespace wikicorpus {

inline constexpr int kArticleNamespace = 0;
inline constexpr int kCategoryNamespace = 14;
inline constexpr std::string_view kCategoryPrefix = "Category:";

struct ArticleRef {
  std::string title;
  std::int64_t page_id = 0;
  int ns = kArticleNamespace;

  friend bool operator==(const ArticleRef&, const ArticleRef&) = default;
};

struct CategoryRef {
  std::string title;  // includes the "Category:" prefix
  std::int64_t page_id = 0;

  friend bool operator==(const CategoryRef&, const CategoryRef&) = default;
};

struct CategoryMembers {
  std::vector<ArticleRef> pages;
  std::vector<CategoryRef> subcats;
};

struct SearchHit {
  ArticleRef article;
  bool disambiguation = false;
};

/// Read-only view of a wiki. Implementations must tolerate concurrent calls.
class WikiSource {
 public:
  virtual ~WikiSource() = default;

  /// Full-text search over namespace 0, best hit first.
  virtual std::vector<SearchHit> search(std::string_view query) const = 0;
  /// Non-hidden categories of a page.
  virtual std::vector<CategoryRef> categories(const ArticleRef& article) const = 0;
  /// Namespace-0 pages and namespace-14 subcategories, all continuation drained.
  virtual CategoryMembers members(const CategoryRef& category) const = 0;
  /// Plain-text extract after redirect resolution. Throws Error(PageMissing).
  virtual std::string extract(const ArticleRef& article) const = 0;
};

/// WikiSource over the MediaWiki Action API.
class MediaWikiSource final : public WikiSource {
 public:
  explicit MediaWikiSource(const MediaWikiClient& client) : client_(client) {}

  std::vector<SearchHit> search(std::string_view query) const override;
  std::vector<CategoryRef> categories(const ArticleRef& article) const override;
  CategoryMembers members(const CategoryRef& category) const override;
  std::string extract(const ArticleRef& article) const override;

  static constexpr int kSearchLimit = 10;

 private:
  const MediaWikiClient& client_;
};

struct CrawlConfig {
  std::size_t depth = 1;
  std::size_t max_articles = 5000;
  std::size_t workers = 4;
  /// Minimum number of shared content tokens for a partial title match.
  std::size_t overlap_threshold = 1;
};

struct SeedMatch {
  std::string keyword;
  std::optional<ArticleRef> article;
};

struct CrawlResult {
  std::vector<SeedMatch> seeds;
  std::vector<ArticleRef> articles;  // unique page ids, sorted by page id
  bool frontier_truncated = false;
};

struct ArticleText {
  ArticleRef article;
  std::string text;
};

/// Keyword search plus breadth-first category expansion.
///
/// depth 0 keeps the seeds only; depth d >= 1 adds the pages of every
/// category within d-1 subcategory hops of a seed's own categories. A
/// visited set makes cyclic category graphs safe. Network fetches fan out
/// over `workers` threads, but results are merged in a fixed order, so the
/// outcome does not depend on scheduling.
class Crawler {
 public:
  Crawler(const WikiSource& source, const Pipeline& pipeline, CrawlConfig config);

  bool title_overlap(std::string_view title, std::string_view keyword) const;
  std::optional<ArticleRef> search_article(std::string_view keyword) const;
  std::vector<CategoryRef> list_categories(const ArticleRef& article) const;
  CategoryMembers list_category_members(const CategoryRef& category) const;
  std::string fetch_article_text(const ArticleRef& article) const;

  CrawlResult expand(const std::vector<ArticleRef>& seeds) const;

  /// search_article for every keyword, then expand over the distinct hits.
  CrawlResult crawl(const std::vector<std::string>& keywords) const;

  std::vector<ArticleText> fetch_texts(const std::vector<ArticleRef>& articles) const;

  const CrawlConfig& config() const noexcept { return config_; }

 private:
  const WikiSource& source_;
  const Pipeline& pipeline_;
  CrawlConfig config_;
};

}  // namespace wikicorpus
