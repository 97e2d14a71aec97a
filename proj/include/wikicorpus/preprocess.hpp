#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wikicorpus/lexicon.hpp"
#include "wikicorpus/pos.hpp"

namespace wikicorpus {

/// Half-open byte range into the (NFC-normalized) source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

struct Token {
  std::string surface;
  std::string lemma;
  Pos pos = Pos::Other;
  bool is_stopword = false;
  Span span;
};

struct Sentence {
  std::vector<Token> tokens;
  std::string text;
  Span span;
};

struct NounPhrase {
  std::string surface;
  std::string normalized;
  std::size_t token_count = 0;
  // location of the (boundary-stripped) token run
  std::size_t sentence = 0;
  std::size_t first_token = 0;
};

struct PreprocessedDoc {
  std::string source_id;
  std::string text;  // NFC-normalized input; all spans index into it
  std::vector<Sentence> sentences;
  std::vector<NounPhrase> noun_phrases;
};

/// Bundled English stopword list (lowercase, one word per line on disk).
class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::unordered_set<std::string> words) : words_(std::move(words)) {}
  static Stopwords load(const std::filesystem::path& file);

  /// `word` is compared after lowercasing.
  bool contains(std::string_view word) const;
  std::size_t size() const noexcept { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

/// Whitespace/punctuation tokenizer. Abbreviations from the bundled list
/// ("e.g.", "Fig.") stay whole; every other punctuation mark is its own token.
class Tokenizer {
 public:
  Tokenizer() = default;
  explicit Tokenizer(std::vector<std::string> abbreviations);
  static Tokenizer load(const std::filesystem::path& file);

  /// Tokens carry surface and span only. `text` must be valid UTF-8.
  std::vector<Token> tokenize(std::string_view text) const;

  bool is_abbreviation(std::string_view token) const;

 private:
  std::size_t match_abbreviation(std::string_view text, std::size_t pos) const;

  std::vector<std::string> abbreviations_;  // lowercase, longest first
};

/// Groups tokens into sentences. A terminator (. ! ?) closes a sentence when
/// followed by end of text, or by whitespace and a capitalized/numeric/quoted
/// token. Abbreviation tokens never terminate; a blank line always does.
std::vector<std::vector<Token>> group_sentences(std::string_view text, std::vector<Token> tokens);

/// word -> coarse tag, loaded from a TSV lexicon (word<TAB>TAG).
class TagLexicon {
 public:
  TagLexicon() = default;
  static TagLexicon load(const std::filesystem::path& file);

  void add(std::string word, Pos pos) { tags_.emplace(std::move(word), pos); }
  std::optional<Pos> find(std::string_view word) const;
  std::size_t size() const noexcept { return tags_.size(); }

 private:
  std::unordered_map<std::string, Pos> tags_;
};

/// Lexicon lookup with suffix fallback and a handful of contextual
/// corrections. Deterministic; every token leaves with a tag.
class PosTagger {
 public:
  PosTagger() = default;
  explicit PosTagger(TagLexicon lexicon) : lexicon_(std::move(lexicon)) {}

  void tag(std::span<Token> sentence) const;

  /// Tag for a word seen without context (lexicon, then suffix rules).
  Pos initial_tag(std::string_view word, bool sentence_initial) const;

 private:
  TagLexicon lexicon_;
};

/// WordNet-backed lemmatizer. Without a lexicon it degrades to lowercasing.
class Lemmatizer {
 public:
  Lemmatizer() = default;
  explicit Lemmatizer(std::shared_ptr<const WordnetLexicon> wordnet) : wordnet_(std::move(wordnet)) {}

  std::string lemmatize(std::string_view surface, Pos pos) const;
  const WordnetLexicon* wordnet() const noexcept { return wordnet_.get(); }

 private:
  std::shared_ptr<const WordnetLexicon> wordnet_;
};

/// Maximal matches of  DET? (ADJ|NOUN|PROPN|NUM)* (NOUN|PROPN)  in a tagged,
/// lemmatized sentence. Boundary stopwords are stripped; the head is
/// replaced by its lemma, modifiers are kept verbatim (case-folded).
std::vector<NounPhrase> chunk_noun_phrases(const Sentence& sentence, std::size_t sentence_index);

struct PipelineResources {
  Stopwords stopwords;
  Tokenizer tokenizer;
  PosTagger tagger;

  /// Loads stopwords.txt, abbreviations.txt and tag_lexicon.tsv.
  static PipelineResources load(const std::filesystem::path& data_dir);
};

/// The six-stage pipeline: tokenize, sentence-split, POS-tag, lemmatize,
/// stopword-mark, NP-chunk. Immutable and safe to share across threads.
class Pipeline {
 public:
  Pipeline(PipelineResources resources, std::shared_ptr<const WordnetLexicon> wordnet);

  std::vector<Token> tokenize(std::string_view text) const;
  std::vector<Span> split_sentences(std::string_view text) const;
  void pos_tag(std::span<Token> sentence) const { resources_.tagger.tag(sentence); }
  std::string lemmatize(std::string_view surface, Pos pos) const {
    return lemmatizer_.lemmatize(surface, pos);
  }
  std::vector<NounPhrase> chunk(const Sentence& sentence, std::size_t index) const {
    return chunk_noun_phrases(sentence, index);
  }

  /// Throws Error(InvalidEncoding) on malformed UTF-8.
  PreprocessedDoc preprocess_document(std::string_view text, std::string source_id) const;

  /// Lowercased, stopword-free content tokens with head lemmatization of the
  /// last one; used for title/keyword overlap.
  std::vector<std::string> content_tokens(std::string_view phrase) const;

  const Stopwords& stopwords() const noexcept { return resources_.stopwords; }
  const Tokenizer& tokenizer() const noexcept { return resources_.tokenizer; }
  const WordnetLexicon* wordnet() const noexcept { return lemmatizer_.wordnet(); }

  /// POS-tag, then lemmatize and stopword-mark, one sentence in place.
  void annotate(std::span<Token> sentence) const;
  /// Lemmatize and stopword-mark tokens that already carry a tag.
  void annotate_tagged(std::span<Token> sentence) const;

 private:

  PipelineResources resources_;
  Lemmatizer lemmatizer_;
};

}  // namespace wikicorpus
