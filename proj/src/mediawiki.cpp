#include "wikicorpus/mediawiki.hpp"

#include <httplib.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <sstream>

#include "wikicorpus/error.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

namespace {

class HttplibTransport final : public HttpTransport {
 public:
  explicit HttplibTransport(std::chrono::milliseconds timeout) : timeout_(timeout) {}

  HttpResponse get(const std::string& url, const std::string& user_agent) override {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
      throw Error(ErrorKind::Network, "malformed URL: " + url);
    }
    const auto path_begin = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_begin);
    const std::string target = path_begin == std::string::npos ? "/" : url.substr(path_begin);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_follow_location(true);
    client.set_keep_alive(false);
    const httplib::Headers headers = {{"User-Agent", user_agent}};
    auto res = client.Get(target, headers);
    if (!res) {
      throw Error(ErrorKind::Network,
                  "request to " + origin + " failed: " + httplib::to_string(res.error()));
    }
    return {res->status, std::move(res->body)};
  }

 private:
  std::chrono::milliseconds timeout_;
};

std::string response_preview(std::string_view body) {
  return std::string(body.substr(0, 200));
}

}  // namespace

std::shared_ptr<HttpTransport> make_http_transport(std::chrono::milliseconds timeout) {
  return std::make_shared<HttplibTransport>(timeout);
}

std::string percent_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
        c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0x0F]);
    }
  }
  return out;
}

std::string canonical_url(std::string_view endpoint, const QueryParams& params) {
  std::string url(endpoint);
  char sep = url.find('?') == std::string::npos ? '?' : '&';
  for (const auto& [key, value] : params) {
    url.push_back(sep);
    url += percent_encode(key);
    url.push_back('=');
    url += percent_encode(value);
    sep = '&';
  }
  return url;
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResponseCache::path_for(std::string_view url) const {
  return dir_ / (text::sha256_hex(url) + ".json");
}

std::optional<std::string> ResponseCache::get(std::string_view url) const {
  std::ifstream in(path_for(url), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void ResponseCache::put(std::string_view url, std::string_view body) const {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create cache dir " + dir_.string() + ": " + ec.message());
  const auto final_path = path_for(url);
  std::ostringstream tmp_name;
  tmp_name << final_path.filename().string() << ".tmp." << std::this_thread::get_id();
  const auto tmp_path = dir_ / tmp_name.str();
  {
    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    if (!out) throw Error(ErrorKind::Io, "cannot write cache entry " + tmp_path.string());
  }
  std::filesystem::rename(tmp_path, final_path, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot publish cache entry " + final_path.string());
}

MediaWikiClient::MediaWikiClient(ClientConfig config, std::shared_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  if (config_.cache_dir) cache_.emplace(*config_.cache_dir);
  if (config_.max_attempts < 1) config_.max_attempts = 1;
}

void MediaWikiClient::pace() const {
  if (config_.request_delay.count() <= 0) return;
  const auto id = std::this_thread::get_id();
  std::chrono::steady_clock::time_point due;
  {
    std::lock_guard lock(pace_mutex_);
    const auto it = last_request_.find(id);
    due = it == last_request_.end() ? std::chrono::steady_clock::now()
                                    : it->second + config_.request_delay;
  }
  std::this_thread::sleep_until(due);
  std::lock_guard lock(pace_mutex_);
  last_request_[id] = std::chrono::steady_clock::now();
}

std::string MediaWikiClient::fetch(const std::string& url, bool& from_cache) const {
  from_cache = false;
  if (cache_) {
    if (auto hit = cache_->get(url)) {
      ++cache_hits_;
      from_cache = true;
      return *std::move(hit);
    }
  }
  if (config_.offline) {
    throw Error(ErrorKind::CacheMiss, "offline mode: no cached response for " + url);
  }
  if (!transport_) throw Error(ErrorKind::Network, "no HTTP transport configured");

  for (int attempt = 1;; ++attempt) {
    pace();
    ++network_requests_;
    try {
      auto res = transport_->get(url, config_.user_agent);
      if (res.status >= 500) {
        throw Error(ErrorKind::Network, "HTTP " + std::to_string(res.status) + " from " + url);
      }
      if (res.status != 200) {
        throw Error(ErrorKind::Api, "HTTP " + std::to_string(res.status) + " from " + url + ": " +
                                        response_preview(res.body));
      }
      return std::move(res.body);
    } catch (const Error& e) {
      if (!e.retryable() || attempt >= config_.max_attempts) throw;
      const auto wait = config_.backoff_base * (1 << (attempt - 1));
      spdlog::warn("attempt {}/{} failed ({}); retrying in {} ms", attempt, config_.max_attempts,
                   e.what(), wait.count());
      std::this_thread::sleep_for(wait);
    }
  }
}

nlohmann::json MediaWikiClient::query(const QueryParams& params) const {
  const auto url = canonical_url(config_.endpoint, params);
  bool from_cache = false;
  std::string body = fetch(url, from_cache);
  nlohmann::json doc = nlohmann::json::parse(body, nullptr, false);
  if (doc.is_discarded()) {
    throw Error(ErrorKind::Api, "response is not JSON: " + response_preview(body));
  }
  if (doc.contains("error")) {
    const auto& err = doc["error"];
    throw Error(ErrorKind::Api, "MediaWiki error " + err.value("code", std::string("?")) + ": " +
                                    err.value("info", std::string()));
  }
  if (cache_ && !from_cache) cache_->put(url, body);
  return doc;
}

std::vector<nlohmann::json> MediaWikiClient::query_all(QueryParams params) const {
  std::vector<nlohmann::json> batches;
  for (;;) {
    auto doc = query(params);
    const bool more = doc.contains("continue") && doc["continue"].is_object();
    if (more) {
      const QueryParams before = params;
      for (const auto& [key, value] : doc["continue"].items()) {
        params[key] = value.is_string() ? value.get<std::string>() : value.dump();
      }
      if (params == before) throw Error(ErrorKind::Api, "continuation did not advance");
    }
    batches.push_back(std::move(doc));
    if (!more) break;
  }
  return batches;
}

}  // namespace wikicorpus
