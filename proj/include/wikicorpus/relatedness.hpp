#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikicorpus/corpus.hpp"
#include "wikicorpus/preprocess.hpp"

namespace wikicorpus {

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t dimension, std::string source);

  /// Text format: `token v1 .. vd` per line, optionally preceded by a
  /// `count dim` header. Tokens are lowercased; the first duplicate wins.
  /// Throws Error(MissingFile), Error(MalformedVectorLine) or
  /// Error(InconsistentDimension), the latter two with the line number.
  static EmbeddingTable load(const std::filesystem::path& path);
  static EmbeddingTable parse(std::string_view content, std::string source);

  /// Returns false (and keeps the old vector) when the token already exists.
  bool add(std::string token, std::vector<double> vector);
  const std::vector<double>* find(std::string_view token) const;

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const std::string& source() const noexcept { return source_; }

 private:
  std::size_t dimension_ = 0;
  std::string source_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

struct DocumentEmbedding {
  std::vector<double> vector;  // zero vector when nothing was in vocabulary
  std::size_t tokens = 0;      // word tokens left after stopword removal
  std::size_t oov = 0;         // ... of which had no vector
};

/// Mean of the vectors of the lowercase, non-stopword word tokens of `text`.
/// Token counts are accumulated first and summed in token order, so the
/// result depends only on the bag of words.
DocumentEmbedding embed_document(std::string_view text, const EmbeddingTable& table,
                                 const Tokenizer& tokenizer, const Stopwords& stopwords);

/// u·v / (|u||v|), 0 when either norm is 0. Throws Error(DimensionMismatch).
double cosine(std::span<const double> u, std::span<const double> v);

struct ArticleScore {
  std::int64_t page_id = 0;
  std::string title;
  double score = 0.0;
};

struct RelatednessReport {
  std::vector<ArticleScore> per_article;  // sorted by page id
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
  double oov_rate = 0.0;  // test-RS tokens without a vector / test-RS tokens
  std::size_t test_tokens = 0;
  std::size_t test_oov = 0;
  std::size_t vacuous_articles = 0;  // articles whose embedding is all zero
};

/// Scores every corpus article against one test RS. Throws Error(EmptyCorpus).
RelatednessReport evaluate(const Corpus& corpus, std::string_view test_rs_text,
                           const EmbeddingTable& table, const Tokenizer& tokenizer,
                           const Stopwords& stopwords);

/// Same, with article texts already in memory.
struct ArticleDoc {
  std::int64_t page_id = 0;
  std::string title;
  std::string text;
};
RelatednessReport evaluate(std::span<const ArticleDoc> articles, std::string_view test_rs_text,
                           const EmbeddingTable& table, const Tokenizer& tokenizer,
                           const Stopwords& stopwords);

struct NamedReport {
  std::string name;
  RelatednessReport report;
};

/// Several test RSs against one corpus. min/avg/max are taken over every
/// (article, test RS) pair; oov_rate over all test-RS tokens.
struct PooledReport {
  std::vector<NamedReport> tests;
  double min = 0.0;
  double avg = 0.0;
  double max = 0.0;
  double oov_rate = 0.0;
  std::size_t pairs = 0;
};

PooledReport pool_reports(std::vector<NamedReport> reports);

std::string report_to_json(const RelatednessReport& report);
std::string pooled_to_json(const PooledReport& report);

/// "min=0.xxxx avg=0.xxxx max=0.xxxx ..." lines for the terminal.
std::string pooled_summary(const PooledReport& report);

}  // namespace wikicorpus
