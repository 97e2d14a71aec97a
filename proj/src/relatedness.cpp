#include "wikicorpus/relatedness.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "wikicorpus/error.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

bool parse_count(std::string_view s, std::size_t& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::size_t dimension, std::string source)
    : dimension_(dimension), source_(std::move(source)) {}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open vector file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

EmbeddingTable EmbeddingTable::parse(std::string_view content, std::string source) {
  EmbeddingTable table(0, std::move(source));
  std::size_t header_dim = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    if (nl == std::string_view::npos) nl = content.size();
    std::string_view line = content.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto fields = split_fields(line);
    if (fields.empty()) continue;
    const auto where = fmt::format("{}:{}", table.source_, line_no);

    std::size_t count = 0;
    std::size_t dim = 0;
    if (line_no == 1 && fields.size() == 2 && parse_count(fields[0], count) &&
        parse_count(fields[1], dim)) {
      if (dim == 0) throw Error(ErrorKind::MalformedVectorLine, where + ": header dimension is 0");
      header_dim = dim;
      continue;
    }
    if (fields.size() < 2) {
      throw Error(ErrorKind::MalformedVectorLine, where + ": expected a token followed by values");
    }

    std::vector<double> v(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (!parse_double(fields[i], v[i - 1])) {
        throw Error(ErrorKind::MalformedVectorLine,
                    fmt::format("{}: '{}' is not a number", where, fields[i]));
      }
    }
    const std::size_t expected = table.dimension_ != 0 ? table.dimension_ : header_dim;
    if (expected != 0 && v.size() != expected) {
      throw Error(ErrorKind::InconsistentDimension,
                  fmt::format("{}: {} values, expected {}", where, v.size(), expected));
    }
    if (!text::is_valid_utf8(fields[0])) {
      throw Error(ErrorKind::MalformedVectorLine, where + ": token is not valid UTF-8");
    }
    table.dimension_ = v.size();
    table.vectors_.emplace(text::to_lower(fields[0]), std::move(v));
  }
  if (table.dimension_ == 0) table.dimension_ = header_dim;
  return table;
}

bool EmbeddingTable::add(std::string token, std::vector<double> vector) {
  if (dimension_ == 0) dimension_ = vector.size();
  if (vector.size() != dimension_) {
    throw Error(ErrorKind::InconsistentDimension,
                fmt::format("vector for '{}' has {} values, expected {}", token, vector.size(),
                            dimension_));
  }
  return vectors_.emplace(std::move(token), std::move(vector)).second;
}

const std::vector<double>* EmbeddingTable::find(std::string_view token) const {
  const auto it = vectors_.find(std::string(token));
  return it == vectors_.end() ? nullptr : &it->second;
}

DocumentEmbedding embed_document(std::string_view raw, const EmbeddingTable& table,
                                 const Tokenizer& tokenizer, const Stopwords& stopwords) {
  DocumentEmbedding out;
  out.vector.assign(table.dimension(), 0.0);
  const std::string normalized = text::nfc(raw);

  std::map<std::string, std::size_t> bag;
  for (const auto& tok : tokenizer.tokenize(normalized)) {
    if (!text::has_letter(tok.surface) && !text::is_all_digits(tok.surface)) continue;
    auto lower = text::to_lower(tok.surface);
    if (stopwords.contains(lower)) continue;
    ++bag[std::move(lower)];
  }

  std::size_t in_vocab = 0;
  for (const auto& [token, n] : bag) {
    out.tokens += n;
    const auto* v = table.find(token);
    if (v == nullptr) {
      out.oov += n;
      continue;
    }
    in_vocab += n;
    const double weight = static_cast<double>(n);
    for (std::size_t i = 0; i < v->size(); ++i) out.vector[i] += weight * (*v)[i];
  }
  if (in_vocab > 0) {
    for (auto& x : out.vector) x /= static_cast<double>(in_vocab);
  }
  return out;
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                fmt::format("cannot compare vectors of length {} and {}", u.size(), v.size()));
  }
  double dot = 0.0;
  double uu = 0.0;
  double vv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  if (uu == 0.0 || vv == 0.0) return 0.0;
  const double c = dot / (std::sqrt(uu) * std::sqrt(vv));
  return std::clamp(c, -1.0, 1.0);
}

RelatednessReport evaluate(std::span<const ArticleDoc> articles, std::string_view test_rs_text,
                           const EmbeddingTable& table, const Tokenizer& tokenizer,
                           const Stopwords& stopwords) {
  if (articles.empty()) throw Error(ErrorKind::EmptyCorpus, "corpus has no articles");

  RelatednessReport report;
  const auto test = embed_document(test_rs_text, table, tokenizer, stopwords);
  report.test_tokens = test.tokens;
  report.test_oov = test.oov;
  report.oov_rate =
      test.tokens == 0 ? 1.0 : static_cast<double>(test.oov) / static_cast<double>(test.tokens);

  report.per_article.reserve(articles.size());
  for (const auto& a : articles) {
    const auto doc = embed_document(a.text, table, tokenizer, stopwords);
    if (doc.tokens == doc.oov) ++report.vacuous_articles;
    report.per_article.push_back({a.page_id, a.title, cosine(test.vector, doc.vector)});
  }
  std::sort(report.per_article.begin(), report.per_article.end(),
            [](const auto& x, const auto& y) { return x.page_id < y.page_id; });

  report.min = std::numeric_limits<double>::infinity();
  report.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const auto& s : report.per_article) {
    report.min = std::min(report.min, s.score);
    report.max = std::max(report.max, s.score);
    sum += s.score;
  }
  report.avg = sum / static_cast<double>(report.per_article.size());
  return report;
}

RelatednessReport evaluate(const Corpus& corpus, std::string_view test_rs_text,
                           const EmbeddingTable& table, const Tokenizer& tokenizer,
                           const Stopwords& stopwords) {
  std::vector<ArticleDoc> docs;
  docs.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& a = corpus.manifest().articles[i];
    docs.push_back({a.page_id, a.title, corpus.read_text(i)});
  }
  return evaluate(docs, test_rs_text, table, tokenizer, stopwords);
}

PooledReport pool_reports(std::vector<NamedReport> reports) {
  PooledReport pooled;
  pooled.tests = std::move(reports);
  if (pooled.tests.empty()) return pooled;
  pooled.min = std::numeric_limits<double>::infinity();
  pooled.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  std::size_t tokens = 0;
  std::size_t oov = 0;
  for (const auto& t : pooled.tests) {
    for (const auto& s : t.report.per_article) {
      pooled.min = std::min(pooled.min, s.score);
      pooled.max = std::max(pooled.max, s.score);
      sum += s.score;
      ++pooled.pairs;
    }
    tokens += t.report.test_tokens;
    oov += t.report.test_oov;
  }
  if (pooled.pairs == 0) throw Error(ErrorKind::EmptyCorpus, "corpus has no articles");
  pooled.avg = sum / static_cast<double>(pooled.pairs);
  pooled.oov_rate = tokens == 0 ? 1.0 : static_cast<double>(oov) / static_cast<double>(tokens);
  return pooled;
}

namespace {

nlohmann::ordered_json report_json(const RelatednessReport& r) {
  nlohmann::ordered_json j;
  j["min"] = r.min;
  j["avg"] = r.avg;
  j["max"] = r.max;
  j["oov_rate"] = r.oov_rate;
  j["test_tokens"] = r.test_tokens;
  j["vacuous_articles"] = r.vacuous_articles;
  j["per_article"] = nlohmann::ordered_json::array();
  for (const auto& s : r.per_article) {
    nlohmann::ordered_json row;
    row["page_id"] = s.page_id;
    row["title"] = s.title;
    row["score"] = s.score;
    j["per_article"].push_back(std::move(row));
  }
  return j;
}

}  // namespace

std::string report_to_json(const RelatednessReport& report) {
  return report_json(report).dump(2) + "\n";
}

std::string pooled_to_json(const PooledReport& report) {
  nlohmann::ordered_json j;
  j["min"] = report.min;
  j["avg"] = report.avg;
  j["max"] = report.max;
  j["oov_rate"] = report.oov_rate;
  j["pairs"] = report.pairs;
  j["tests"] = nlohmann::ordered_json::array();
  for (const auto& t : report.tests) {
    auto row = report_json(t.report);
    row["name"] = t.name;
    j["tests"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

std::string pooled_summary(const PooledReport& report) {
  std::string out = fmt::format("all\tmin={:.4f}\tavg={:.4f}\tmax={:.4f}\toov_rate={:.4f}\tpairs={}\n",
                                report.min, report.avg, report.max, report.oov_rate, report.pairs);
  for (const auto& t : report.tests) {
    const auto& r = t.report;
    out += fmt::format("{}\tmin={:.4f}\tavg={:.4f}\tmax={:.4f}\toov_rate={:.4f}\tarticles={}\n", t.name,
                       r.min, r.avg, r.max, r.oov_rate, r.per_article.size());
  }
  return out;
}

}  // namespace wikicorpus
