#include "wikicorpus/corpus.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "wikicorpus/error.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_file(const fs::path& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  out.close();
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

bool is_article_file(const fs::path& p) {
  const auto stem = p.stem().string();
  return p.extension() == ".txt" && !stem.empty() &&
         std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; });
}

nlohmann::ordered_json keyword_json(const Keyword& kw) {
  nlohmann::ordered_json j;
  j["phrase"] = kw.phrase;
  j["tf"] = kw.tf;
  j["idf"] = kw.idf;
  j["score"] = kw.score;
  return j;
}

[[noreturn]] void integrity(const std::string& what) { throw Error(ErrorKind::Integrity, what); }

}  // namespace

std::string rfc3339_now() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch != nullptr && *epoch != '\0') {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string manifest_to_json(const CorpusManifest& m) {
  nlohmann::ordered_json j;
  j["tool_version"] = m.tool_version;
  j["created_at"] = m.created_at;
  j["rs_source_hash"] = m.rs_source_hash;
  j["wordnet_version"] = m.wordnet_version;
  j["depth"] = m.depth;
  j["keywords"] = nlohmann::ordered_json::array();
  for (const auto& kw : m.keywords) j["keywords"].push_back(keyword_json(kw));
  j["articles"] = nlohmann::ordered_json::array();
  for (const auto& a : m.articles) {
    nlohmann::ordered_json row;
    row["page_id"] = a.page_id;
    row["title"] = a.title;
    row["byte_length"] = a.byte_length;
    row["path"] = a.relative_path;
    j["articles"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

CorpusManifest write_corpus(const std::vector<ArticleText>& articles, const ManifestFields& fields,
                            const fs::path& out_dir) {
  std::set<std::int64_t> ids;
  for (const auto& a : articles) {
    if (!ids.insert(a.article.page_id).second) {
      throw Error(ErrorKind::DuplicatePageId,
                  "duplicate page id " + std::to_string(a.article.page_id));
    }
  }

  const fs::path article_dir = out_dir / "articles";
  std::error_code ec;
  fs::create_directories(article_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + article_dir.string() + ": " + ec.message());

  CorpusManifest manifest;
  manifest.tool_version = fields.tool_version;
  manifest.created_at = fields.created_at;
  manifest.rs_source_hash = fields.rs_source_hash;
  manifest.wordnet_version = fields.wordnet_version;
  manifest.depth = fields.depth;
  manifest.keywords = fields.keywords;

  std::vector<const ArticleText*> ordered;
  ordered.reserve(articles.size());
  for (const auto& a : articles) ordered.push_back(&a);
  std::sort(ordered.begin(), ordered.end(),
            [](const auto* x, const auto* y) { return x->article.page_id < y->article.page_id; });

  std::set<std::string> written;
  for (const auto* a : ordered) {
    const std::string name = std::to_string(a->article.page_id) + ".txt";
    write_file(article_dir / name, a->text);
    written.insert(name);
    manifest.articles.push_back(
        {a->article.page_id, a->article.title, a->text.size(), "articles/" + name});
  }
  for (const auto& entry : fs::directory_iterator(article_dir)) {
    if (is_article_file(entry.path()) && !written.contains(entry.path().filename().string())) {
      fs::remove(entry.path(), ec);
    }
  }

  const fs::path tmp = out_dir / "manifest.json.tmp";
  write_file(tmp, manifest_to_json(manifest));
  fs::rename(tmp, out_dir / "manifest.json", ec);
  if (ec) throw Error(ErrorKind::Io, "cannot publish manifest in " + out_dir.string());
  return manifest;
}

Corpus Corpus::load(const fs::path& dir) {
  const fs::path manifest_path = dir / "manifest.json";
  if (!fs::is_regular_file(manifest_path)) {
    throw Error(ErrorKind::ManifestMissing, "no manifest.json in " + dir.string());
  }
  const auto j = nlohmann::json::parse(read_file(manifest_path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) integrity(manifest_path.string() + ": not valid JSON");

  Corpus corpus;
  corpus.dir_ = dir;
  auto& m = corpus.manifest_;
  try {
    m.tool_version = j.value("tool_version", std::string());
    m.created_at = j.value("created_at", std::string());
    m.rs_source_hash = j.value("rs_source_hash", std::string());
    m.wordnet_version = j.value("wordnet_version", std::string());
    m.depth = j.value("depth", std::size_t{0});
    for (const auto& kw : j.value("keywords", nlohmann::json::array())) {
      m.keywords.push_back({kw.at("phrase").get<std::string>(), kw.at("tf").get<std::size_t>(),
                            kw.at("idf").get<double>(), kw.at("score").get<double>()});
    }
    for (const auto& a : j.at("articles")) {
      m.articles.push_back({a.at("page_id").get<std::int64_t>(), a.at("title").get<std::string>(),
                            a.at("byte_length").get<std::uint64_t>(), a.at("path").get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    integrity(manifest_path.string() + ": " + e.what());
  }

  std::set<std::int64_t> ids;
  for (const auto& a : m.articles) {
    if (!ids.insert(a.page_id).second) {
      integrity(manifest_path.string() + ": duplicate page id " + std::to_string(a.page_id));
    }
    const fs::path p = dir / a.relative_path;
    std::error_code ec;
    if (!fs::is_regular_file(p, ec)) integrity("missing article file " + p.string());
    const auto size = fs::file_size(p, ec);
    if (ec) integrity("cannot stat " + p.string());
    if (size != a.byte_length) {
      integrity(fmt::format("{}: size {} does not match manifest byte_length {}", p.string(), size,
                            a.byte_length));
    }
  }
  return corpus;
}

std::string Corpus::read_text(std::size_t index) const {
  const auto& a = manifest_.articles.at(index);
  auto body = read_file(dir_ / a.relative_path);
  if (body.size() != a.byte_length) {
    integrity(fmt::format("{}: changed on disk since load", (dir_ / a.relative_path).string()));
  }
  return body;
}

FrequencyReport frequency_report(const std::vector<std::string>& texts, const Pipeline& pipeline,
                                 std::size_t top_n) {
  std::unordered_map<std::string, std::size_t> counts;
  FrequencyReport report;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto doc = pipeline.preprocess_document(texts[i], std::to_string(i));
    for (const auto& sentence : doc.sentences) {
      for (const auto& tok : sentence.tokens) {
        if (tok.is_stopword || tok.pos == Pos::Punct || tok.pos == Pos::Num) continue;
        if (!text::has_letter(tok.lemma) || text::is_all_digits(tok.lemma)) continue;
        std::size_t first_len = 0;
        text::decode(tok.lemma, 0, first_len);
        if (first_len == tok.lemma.size()) continue;  // single character
        if (pipeline.stopwords().contains(tok.lemma)) continue;
        ++counts[tok.lemma];
        ++report.retained_tokens;
      }
    }
  }
  report.entries.reserve(counts.size());
  for (auto& [term, count] : counts) report.entries.push_back({term, count});
  std::sort(report.entries.begin(), report.entries.end(), [](const auto& a, const auto& b) {
    return a.count != b.count ? a.count > b.count : a.term < b.term;
  });
  if (report.entries.size() > top_n) report.entries.resize(top_n);
  return report;
}

FrequencyReport frequency_report(const Corpus& corpus, const Pipeline& pipeline, std::size_t top_n) {
  std::vector<std::string> texts;
  texts.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) texts.push_back(corpus.read_text(i));
  return frequency_report(texts, pipeline, top_n);
}

std::string frequency_to_tsv(const FrequencyReport& report) {
  std::string out;
  for (const auto& e : report.entries) out += fmt::format("{}\t{}\n", e.term, e.count);
  return out;
}

}  // namespace wikicorpus
