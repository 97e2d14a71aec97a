#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wikicorpus/lexicon.hpp"
#include "wikicorpus/preprocess.hpp"

namespace wikicorpus {

/// Normalized noun phrase -> occurrence count, ordered by phrase.
using CandidateCounts = std::map<std::string, std::size_t>;

struct Keyword {
  std::string phrase;
  std::size_t tf = 0;
  double idf = 1.0;
  double score = 0.0;  // tf * idf

  friend bool operator==(const Keyword&, const Keyword&) = default;
};

struct KeywordConfig {
  std::size_t top_k = 50;
  std::vector<std::string> background_docs;  // document texts, may be empty
  bool wordnet_filter = true;
};

CandidateCounts count_candidates(const PreprocessedDoc& doc);

/// Drops every phrase WordNet knows as a whole (any part of speech).
CandidateCounts filter_generic(CandidateCounts candidates, const WordnetLexicon& lexicon);

/// Smoothed inverse document frequency, ln((1+N)/(1+df)) + 1, or exactly 1
/// when the collection holds a single document.
double smoothed_idf(std::size_t documents, std::size_t document_frequency);

/// Scores every phrase of per_doc_counts[target_index] against the whole
/// collection. Output is ordered by phrase. Throws Error(IndexOutOfRange).
std::vector<Keyword> score_tfidf(std::span<const CandidateCounts> per_doc_counts,
                                 std::size_t target_index);

/// Total order used for ranking: score desc, tf desc, phrase asc.
bool ranks_before(const Keyword& a, const Keyword& b) noexcept;

/// First min(k, n) keywords in ranking order.
std::vector<Keyword> select_top_k(std::vector<Keyword> keywords, std::size_t k);

/// preprocess -> count -> (filter) -> score against background -> top-k.
std::vector<Keyword> extract_keywords(const Pipeline& pipeline, std::string_view rs_text,
                                      const KeywordConfig& config);

/// phrase<TAB>tf<TAB>idf<TAB>score, one row per keyword, six decimals.
std::string keywords_to_tsv(std::span<const Keyword> keywords);

}  // namespace wikicorpus
