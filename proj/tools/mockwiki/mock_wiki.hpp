#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wikicorpus/mediawiki.hpp"

namespace httplib {
class Server;
}

namespace wikicorpus::mock {

struct MockPage {
  std::int64_t id = 0;
  int ns = 0;
  std::string title;
  std::string text;
  std::vector<std::string> categories;  // category titles, "Category:" prefixed
  bool hidden = false;                  // hidden category (ns 14 only)
  bool disambiguation = false;
  std::optional<std::string> redirect;  // target title
};

/// A tiny wiki: pages, category membership, and canned search results.
struct WikiModel {
  std::vector<MockPage> pages;
  std::map<std::string, std::vector<std::int64_t>> search;  // lowercase query -> ranked ids

  /// {"pages":[{"id","ns","title","text","categories","hidden","disambiguation","redirect"}],
  ///  "search":{"query":[ids]}}
  static WikiModel from_json(const nlohmann::json& j);
  static WikiModel load(const std::filesystem::path& path);
};

/// Answers the subset of the Action API the crawler uses, formatversion=2.
/// Lists are paginated at `page_size` entries, so continuation is exercised.
class MockWiki {
 public:
  explicit MockWiki(WikiModel model, std::size_t page_size = 50);

  /// Full request URL in, JSON body out (HTTP 200 unless the request is bad).
  HttpResponse handle(const std::string& url) const;

  const WikiModel& model() const noexcept { return model_; }

 private:
  using Params = std::map<std::string, std::string>;

  std::string search(const Params& p) const;
  std::string categories(const Params& p) const;
  std::string members(const Params& p) const;
  std::string extract(const Params& p) const;

  const MockPage* by_id(std::int64_t id) const;
  const MockPage* by_title(const std::string& title) const;

  WikiModel model_;
  std::size_t page_size_;
  std::map<std::int64_t, std::size_t> id_index_;
  std::map<std::string, std::size_t> title_index_;
  std::map<std::string, std::vector<std::size_t>> members_;  // category title -> sorted page indices
};

/// Splits "a=1&b=x%20y" into decoded key/value pairs.
std::map<std::string, std::string> parse_query(std::string_view url);

/// In-process transport over a MockWiki, with request accounting and
/// optional fault injection.
class MockTransport final : public HttpTransport {
 public:
  explicit MockTransport(std::shared_ptr<const MockWiki> wiki) : wiki_(std::move(wiki)) {}

  HttpResponse get(const std::string& url, const std::string& user_agent) override;

  /// Called before the wiki; a returned response (or a thrown Error) replaces it.
  using Fault = std::function<std::optional<HttpResponse>(const std::string& url, std::size_t call)>;
  void set_fault(Fault fault);

  std::size_t calls() const noexcept { return calls_.load(); }
  std::vector<std::string> urls() const;
  std::string last_user_agent() const;

 private:
  std::shared_ptr<const MockWiki> wiki_;
  Fault fault_;
  std::atomic<std::size_t> calls_{0};
  mutable std::mutex mutex_;
  std::vector<std::string> urls_;
  std::string user_agent_;
};

/// The same wiki behind a real HTTP socket on 127.0.0.1.
class MockServer {
 public:
  explicit MockServer(std::shared_ptr<const MockWiki> wiki);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  std::string endpoint() const;  // http://127.0.0.1:<port>/w/api.php

  /// Responds with `status` to the next `count` requests.
  void fail_next(std::size_t count, int status);
  std::size_t requests() const noexcept { return requests_.load(); }

 private:
  std::shared_ptr<const MockWiki> wiki_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<std::size_t> requests_{0};
  std::atomic<std::size_t> failures_left_{0};
  std::atomic<int> failure_status_{500};
};

}  // namespace wikicorpus::mock
