#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

namespace wikicorpus {

struct HttpResponse {
  int status = 0;
  std::string body;
};

/// Blocking GET. Implementations throw Error(Network) on transport failure
/// and must be safe to call from several threads at once.
class HttpTransport {
 public:
  virtual ~HttpTransport() = default;
  virtual HttpResponse get(const std::string& url, const std::string& user_agent) = 0;
};

/// cpp-httplib backed transport (HTTP and HTTPS).
std::shared_ptr<HttpTransport> make_http_transport(std::chrono::milliseconds timeout =
                                                       std::chrono::seconds(30));

using QueryParams = std::map<std::string, std::string>;

std::string percent_encode(std::string_view s);

/// endpoint + "?" + key-sorted, percent-encoded parameters. The same logical
/// request always yields the same string, which is what the cache keys on.
std::string canonical_url(std::string_view endpoint, const QueryParams& params);

/// `<dir>/<sha256(url)>.json` holding the raw response body.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  std::filesystem::path path_for(std::string_view url) const;
  std::optional<std::string> get(std::string_view url) const;
  /// Atomic: written to a temporary sibling, then renamed.
  void put(std::string_view url, std::string_view body) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }

 private:
  std::filesystem::path dir_;
};

struct ClientConfig {
  std::string endpoint = "https://en.wikipedia.org/w/api.php";
  std::string user_agent = "wikicorpus/0.1 (corpus builder)";
  std::optional<std::filesystem::path> cache_dir;
  bool offline = false;
  std::chrono::milliseconds request_delay{100};
  int max_attempts = 3;
  std::chrono::milliseconds backoff_base{500};
};

/// MediaWiki Action API client with on-disk response cache, per-thread
/// request pacing and bounded retries for transport/5xx failures.
class MediaWikiClient {
 public:
  MediaWikiClient(ClientConfig config, std::shared_ptr<HttpTransport> transport);

  /// One request. Cache hit -> no network. Offline cache miss -> Error(CacheMiss).
  /// API-level {"error": ...} -> Error(Api), never cached.
  nlohmann::json query(const QueryParams& params) const;

  /// Follows "continue" blocks until exhausted; one JSON per batch.
  std::vector<nlohmann::json> query_all(QueryParams params) const;

  std::size_t network_requests() const noexcept { return network_requests_.load(); }
  std::size_t cache_hits() const noexcept { return cache_hits_.load(); }
  const ClientConfig& config() const noexcept { return config_; }

 private:
  std::string fetch(const std::string& url, bool& from_cache) const;
  void pace() const;

  ClientConfig config_;
  std::shared_ptr<HttpTransport> transport_;
  std::optional<ResponseCache> cache_;
  mutable std::atomic<std::size_t> network_requests_{0};
  mutable std::atomic<std::size_t> cache_hits_{0};
  mutable std::mutex pace_mutex_;
  mutable std::unordered_map<std::thread::id, std::chrono::steady_clock::time_point> last_request_;
};

}  // namespace wikicorpus
