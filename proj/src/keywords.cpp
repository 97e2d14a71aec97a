#include "wikicorpus/keywords.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "wikicorpus/error.hpp"

namespace wikicorpus {

CandidateCounts count_candidates(const PreprocessedDoc& doc) {
  CandidateCounts counts;
  for (const auto& np : doc.noun_phrases) ++counts[np.normalized];
  return counts;
}

CandidateCounts filter_generic(CandidateCounts candidates, const WordnetLexicon& lexicon) {
  std::erase_if(candidates, [&](const auto& entry) { return lexicon.contains_lemma(entry.first); });
  return candidates;
}

double smoothed_idf(std::size_t documents, std::size_t document_frequency) {
  if (documents <= 1) return 1.0;
  return std::log((1.0 + static_cast<double>(documents)) /
                  (1.0 + static_cast<double>(document_frequency))) +
         1.0;
}

std::vector<Keyword> score_tfidf(std::span<const CandidateCounts> per_doc_counts,
                                 std::size_t target_index) {
  if (target_index >= per_doc_counts.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                fmt::format("target index {} out of range for {} documents", target_index,
                            per_doc_counts.size()));
  }
  const std::size_t documents = per_doc_counts.size();
  std::vector<Keyword> out;
  out.reserve(per_doc_counts[target_index].size());
  for (const auto& [phrase, tf] : per_doc_counts[target_index]) {
    if (tf == 0) continue;
    std::size_t df = 0;
    for (const auto& doc : per_doc_counts) {
      const auto it = doc.find(phrase);
      if (it != doc.end() && it->second > 0) ++df;
    }
    Keyword kw;
    kw.phrase = phrase;
    kw.tf = tf;
    kw.idf = smoothed_idf(documents, df);
    kw.score = static_cast<double>(tf) * kw.idf;
    out.push_back(std::move(kw));
  }
  return out;
}

bool ranks_before(const Keyword& a, const Keyword& b) noexcept {
  if (a.score != b.score) return a.score > b.score;
  if (a.tf != b.tf) return a.tf > b.tf;
  return a.phrase < b.phrase;
}

std::vector<Keyword> select_top_k(std::vector<Keyword> keywords, std::size_t k) {
  std::sort(keywords.begin(), keywords.end(), ranks_before);
  if (keywords.size() > k) keywords.resize(k);
  return keywords;
}

std::vector<Keyword> extract_keywords(const Pipeline& pipeline, std::string_view rs_text,
                                      const KeywordConfig& config) {
  std::vector<CandidateCounts> counts;
  counts.reserve(1 + config.background_docs.size());
  auto target = count_candidates(pipeline.preprocess_document(rs_text, "input"));
  if (config.wordnet_filter && pipeline.wordnet() != nullptr) {
    target = filter_generic(std::move(target), *pipeline.wordnet());
  }
  counts.push_back(std::move(target));
  for (std::size_t i = 0; i < config.background_docs.size(); ++i) {
    counts.push_back(count_candidates(
        pipeline.preprocess_document(config.background_docs[i], "background-" + std::to_string(i))));
  }
  return select_top_k(score_tfidf(counts, 0), config.top_k);
}

std::string keywords_to_tsv(std::span<const Keyword> keywords) {
  std::string out;
  for (const auto& kw : keywords) {
    out += fmt::format("{}\t{}\t{:.6f}\t{:.6f}\n", kw.phrase, kw.tf, kw.idf, kw.score);
  }
  return out;
}

}  // namespace wikicorpus
