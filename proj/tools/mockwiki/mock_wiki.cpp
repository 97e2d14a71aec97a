#include "mock_wiki.hpp"

#include <httplib.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "wikicorpus/error.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus::mock {

using nlohmann::json;

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string decode(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '%' && i + 2 < s.size() && hex_value(s[i + 1]) >= 0 && hex_value(s[i + 2]) >= 0) {
      out.push_back(static_cast<char>(hex_value(s[i + 1]) * 16 + hex_value(s[i + 2])));
      i += 2;
    } else if (s[i] == '+') {
      out.push_back(' ');
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text::to_lower(s)) {
    if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string error_body(const std::string& code, const std::string& info) {
  return json{{"error", {{"code", code}, {"info", info}}}}.dump();
}

std::size_t parse_offset(const std::string& token) {
  const auto bar = token.rfind('|');
  return static_cast<std::size_t>(std::stoull(bar == std::string::npos ? token : token.substr(bar + 1)));
}

json page_stub(const MockPage& p) { return json{{"pageid", p.id}, {"ns", p.ns}, {"title", p.title}}; }

}  // namespace

WikiModel WikiModel::from_json(const json& j) {
  WikiModel m;
  for (const auto& p : j.at("pages")) {
    MockPage page;
    page.id = p.at("id").get<std::int64_t>();
    page.ns = p.value("ns", 0);
    page.title = p.at("title").get<std::string>();
    page.text = p.value("text", std::string());
    page.categories = p.value("categories", std::vector<std::string>{});
    page.hidden = p.value("hidden", false);
    page.disambiguation = p.value("disambiguation", false);
    if (p.contains("redirect") && p["redirect"].is_string()) page.redirect = p["redirect"].get<std::string>();
    m.pages.push_back(std::move(page));
  }
  if (j.contains("search")) {
    for (const auto& [query, ids] : j["search"].items()) {
      m.search[text::to_lower(query)] = ids.get<std::vector<std::int64_t>>();
    }
  }
  return m;
}

WikiModel WikiModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open wiki model " + path.string());
  return from_json(json::parse(in));
}

std::map<std::string, std::string> parse_query(std::string_view url) {
  std::map<std::string, std::string> out;
  const auto q = url.find('?');
  if (q == std::string_view::npos) return out;
  std::string_view rest = url.substr(q + 1);
  while (!rest.empty()) {
    const auto amp = rest.find('&');
    const auto pair = rest.substr(0, amp);
    const auto eq = pair.find('=');
    if (eq == std::string_view::npos) {
      out[decode(pair)] = "";
    } else {
      out[decode(pair.substr(0, eq))] = decode(pair.substr(eq + 1));
    }
    if (amp == std::string_view::npos) break;
    rest = rest.substr(amp + 1);
  }
  return out;
}

MockWiki::MockWiki(WikiModel model, std::size_t page_size)
    : model_(std::move(model)), page_size_(std::max<std::size_t>(1, page_size)) {
  for (std::size_t i = 0; i < model_.pages.size(); ++i) {
    id_index_[model_.pages[i].id] = i;
    title_index_[model_.pages[i].title] = i;
  }
  for (std::size_t i = 0; i < model_.pages.size(); ++i) {
    for (const auto& c : model_.pages[i].categories) members_[c].push_back(i);
  }
  for (auto& [cat, list] : members_) {
    std::sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return model_.pages[a].title < model_.pages[b].title;
    });
  }
}

const MockPage* MockWiki::by_id(std::int64_t id) const {
  const auto it = id_index_.find(id);
  return it == id_index_.end() ? nullptr : &model_.pages[it->second];
}

const MockPage* MockWiki::by_title(const std::string& title) const {
  const auto it = title_index_.find(title);
  return it == title_index_.end() ? nullptr : &model_.pages[it->second];
}

HttpResponse MockWiki::handle(const std::string& url) const {
  const auto p = parse_query(url);
  const auto get = [&](const char* key) {
    const auto it = p.find(key);
    return it == p.end() ? std::string() : it->second;
  };
  if (get("action") != "query" || get("format") != "json") {
    return {200, error_body("badvalue", "only action=query&format=json is supported")};
  }
  try {
    if (get("generator") == "search") return {200, search(p)};
    if (get("generator") == "categories") return {200, categories(p)};
    if (get("list") == "categorymembers") return {200, members(p)};
    if (get("prop") == "extracts") return {200, extract(p)};
  } catch (const std::exception& e) {
    return {200, error_body("badparam", e.what())};
  }
  return {200, error_body("unsupported", "request not understood by the mock")};
}

std::string MockWiki::search(const Params& p) const {
  const std::string query = text::to_lower(p.at("gsrsearch"));
  const std::size_t limit = p.count("gsrlimit") ? std::stoul(p.at("gsrlimit")) : 10;
  std::vector<std::int64_t> ranked;
  if (const auto it = model_.search.find(query); it != model_.search.end()) {
    ranked = it->second;
  } else {
    // fallback: titles sharing words with the query, most shared first
    const auto q = words(query);
    const std::set<std::string> qs(q.begin(), q.end());
    std::vector<std::pair<std::size_t, std::int64_t>> scored;
    for (const auto& page : model_.pages) {
      if (page.ns != 0 || page.redirect) continue;
      std::size_t shared = 0;
      const auto title_words = words(page.title);
      for (const auto& w : std::set<std::string>(title_words.begin(), title_words.end())) {
        if (qs.contains(w)) ++shared;
      }
      if (shared > 0) scored.emplace_back(shared, page.id);
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [n, id] : scored) ranked.push_back(id);
  }
  if (ranked.size() > limit) ranked.resize(limit);

  json pages = json::array();
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto* page = by_id(ranked[i]);
    if (page == nullptr) continue;
    json entry = page_stub(*page);
    entry["index"] = i + 1;
    if (p.count("ppprop") && page->disambiguation) entry["pageprops"] = {{"disambiguation", ""}};
    pages.push_back(std::move(entry));
  }
  // the real API does not return generator results in rank order
  std::sort(pages.begin(), pages.end(),
            [](const json& a, const json& b) { return a["pageid"].get<std::int64_t>() < b["pageid"].get<std::int64_t>(); });
  json out = {{"batchcomplete", true}};
  if (!pages.empty()) out["query"] = {{"pages", pages}};
  return out.dump();
}

std::string MockWiki::categories(const Params& p) const {
  const auto id = std::stoll(p.at("pageids"));
  const auto* page = by_id(id);
  if (page == nullptr) return json{{"batchcomplete", true}}.dump();
  const bool skip_hidden = p.count("gclshow") && p.at("gclshow") == "!hidden";

  std::vector<std::string> cats;
  for (const auto& c : page->categories) {
    const auto* cp = by_title(c);
    if (skip_hidden && cp != nullptr && cp->hidden) continue;
    cats.push_back(c);
  }
  std::sort(cats.begin(), cats.end());

  const std::size_t offset = p.count("gclcontinue") ? parse_offset(p.at("gclcontinue")) : 0;
  const std::size_t end = std::min(cats.size(), offset + page_size_);
  json pages = json::array();
  for (std::size_t i = offset; i < end; ++i) {
    if (const auto* cp = by_title(cats[i])) {
      pages.push_back(page_stub(*cp));
    } else {
      pages.push_back({{"ns", 14}, {"title", cats[i]}, {"missing", true}});
    }
  }
  json out = json::object();
  if (end < cats.size()) {
    out["continue"] = {{"gclcontinue", std::to_string(id) + "|" + std::to_string(end)}, {"continue", "gcl||"}};
  } else {
    out["batchcomplete"] = true;
  }
  if (!pages.empty()) out["query"] = {{"pages", pages}};
  return out.dump();
}

std::string MockWiki::members(const Params& p) const {
  const auto* cat = by_id(std::stoll(p.at("cmpageid")));
  if (cat == nullptr || cat->ns != 14) {
    return error_body("invalidcategory", "The category name you entered is not valid.");
  }
  std::set<int> wanted_ns;
  const std::string types = p.count("cmtype") ? p.at("cmtype") : "page|subcat";
  if (types.find("page") != std::string::npos) wanted_ns.insert(0);
  if (types.find("subcat") != std::string::npos) wanted_ns.insert(14);

  std::vector<const MockPage*> all;
  if (const auto it = members_.find(cat->title); it != members_.end()) {
    for (auto idx : it->second) {
      if (wanted_ns.contains(model_.pages[idx].ns)) all.push_back(&model_.pages[idx]);
    }
  }
  std::size_t limit = page_size_;
  if (p.count("cmlimit") && p.at("cmlimit") != "max") limit = std::min(limit, std::stoul(p.at("cmlimit")));
  const std::size_t offset = p.count("cmcontinue") ? parse_offset(p.at("cmcontinue")) : 0;
  const std::size_t end = std::min(all.size(), offset + limit);

  json list = json::array();
  for (std::size_t i = offset; i < end; ++i) list.push_back(page_stub(*all[i]));
  json out = json::object();
  if (end < all.size()) {
    out["continue"] = {{"cmcontinue", "page|" + std::to_string(end)}, {"continue", "-||"}};
  } else {
    out["batchcomplete"] = true;
  }
  out["query"] = {{"categorymembers", list}};
  return out.dump();
}

std::string MockWiki::extract(const Params& p) const {
  const auto id = std::stoll(p.at("pageids"));
  const auto* page = by_id(id);
  json out = {{"batchcomplete", true}};
  if (page == nullptr) {
    out["query"] = {{"pages", json::array({{{"pageid", id}, {"missing", true}}})}};
    return out.dump();
  }
  const bool follow = p.count("redirects") != 0;
  if (follow && page->redirect) {
    out["query"]["redirects"] = json::array({{{"from", page->title}, {"to", *page->redirect}}});
    const auto* target = by_title(*page->redirect);
    if (target == nullptr) {
      out["query"]["pages"] = json::array({{{"ns", 0}, {"title", *page->redirect}, {"missing", true}}});
      return out.dump();
    }
    page = target;
  }
  json entry = page_stub(*page);
  entry["extract"] = page->text;
  out["query"]["pages"] = json::array({entry});
  return out.dump();
}

HttpResponse MockTransport::get(const std::string& url, const std::string& user_agent) {
  const std::size_t call = calls_++;
  {
    std::lock_guard lock(mutex_);
    urls_.push_back(url);
    user_agent_ = user_agent;
  }
  if (fault_) {
    if (auto replaced = fault_(url, call)) return *replaced;
  }
  return wiki_->handle(url);
}

void MockTransport::set_fault(Fault fault) { fault_ = std::move(fault); }

std::vector<std::string> MockTransport::urls() const {
  std::lock_guard lock(mutex_);
  return urls_;
}

std::string MockTransport::last_user_agent() const {
  std::lock_guard lock(mutex_);
  return user_agent_;
}

MockServer::MockServer(std::shared_ptr<const MockWiki> wiki)
    : wiki_(std::move(wiki)), server_(std::make_unique<httplib::Server>()) {
  server_->Get("/w/api.php", [this](const httplib::Request& req, httplib::Response& res) {
    ++requests_;
    std::size_t left = failures_left_.load();
    while (left > 0 && !failures_left_.compare_exchange_weak(left, left - 1)) {
    }
    if (left > 0) {
      res.status = failure_status_.load();
      res.set_content("temporarily unavailable", "text/plain");
      return;
    }
    std::string url = "/w/api.php?";
    bool first = true;
    for (const auto& [k, v] : req.params) {
      if (!first) url += "&";
      url += percent_encode(k) + "=" + percent_encode(v);
      first = false;
    }
    const auto answer = wiki_->handle(url);
    res.status = answer.status;
    res.set_content(answer.body, "application/json");
  });
  port_ = server_->bind_to_any_port("127.0.0.1");
  thread_ = std::thread([this] { server_->listen_after_bind(); });
  server_->wait_until_ready();
}

MockServer::~MockServer() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

std::string MockServer::endpoint() const {
  return "http://127.0.0.1:" + std::to_string(port_) + "/w/api.php";
}

void MockServer::fail_next(std::size_t count, int status) {
  failure_status_ = status;
  failures_left_ = count;
}

}  // namespace wikicorpus::mock
