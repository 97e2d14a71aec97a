#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "wikicorpus/crawler.hpp"
#include "wikicorpus/keywords.hpp"
#include "wikicorpus/preprocess.hpp"

namespace wikicorpus {

struct ManifestArticle {
  std::int64_t page_id = 0;
  std::string title;
  std::uint64_t byte_length = 0;
  std::string relative_path;  // "articles/<page_id>.txt"

  friend bool operator==(const ManifestArticle&, const ManifestArticle&) = default;
};

struct CorpusManifest {
  std::string tool_version;
  std::string created_at;      // RFC 3339, UTC
  std::string rs_source_hash;  // "sha256:<hex>"
  std::string wordnet_version;
  std::size_t depth = 0;
  std::vector<Keyword> keywords;
  std::vector<ManifestArticle> articles;
};

/// Everything but the article list, supplied by the caller.
struct ManifestFields {
  std::string tool_version;
  std::string created_at;
  std::string rs_source_hash;
  std::string wordnet_version;
  std::size_t depth = 0;
  std::vector<Keyword> keywords;
};

/// Current UTC time as RFC 3339, or SOURCE_DATE_EPOCH when that is set.
std::string rfc3339_now();

/// Writes out_dir/articles/<page_id>.txt for each article and then
/// out_dir/manifest.json (temp file + rename). Stale article files from a
/// previous run are removed. Throws Error(DuplicatePageId) / Error(Io).
CorpusManifest write_corpus(const std::vector<ArticleText>& articles, const ManifestFields& fields,
                            const std::filesystem::path& out_dir);

std::string manifest_to_json(const CorpusManifest& manifest);

/// A validated corpus directory. Article bodies are read on demand.
class Corpus {
 public:
  /// Throws Error(ManifestMissing) or Error(Integrity) naming the offending
  /// path when a file is missing or its size disagrees with the manifest.
  static Corpus load(const std::filesystem::path& dir);

  const CorpusManifest& manifest() const noexcept { return manifest_; }
  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::size_t size() const noexcept { return manifest_.articles.size(); }

  std::string read_text(std::size_t index) const;

 private:
  std::filesystem::path dir_;
  CorpusManifest manifest_;
};

struct TermCount {
  std::string term;
  std::size_t count = 0;

  friend bool operator==(const TermCount&, const TermCount&) = default;
};

struct FrequencyReport {
  std::vector<TermCount> entries;  // count desc, term asc
  std::size_t retained_tokens = 0;  // over the whole corpus, before top_n
};

/// Lemma counts over all article text, without stopwords, punctuation,
/// numbers or single-character terms. Keeps the first `top_n` entries.
FrequencyReport frequency_report(const Corpus& corpus, const Pipeline& pipeline, std::size_t top_n);

/// Same, over in-memory texts.
FrequencyReport frequency_report(const std::vector<std::string>& texts, const Pipeline& pipeline,
                                 std::size_t top_n);

std::string frequency_to_tsv(const FrequencyReport& report);

}  // namespace wikicorpus
