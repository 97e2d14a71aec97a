#include <fstream>

#include "wikicorpus/error.hpp"
#include "wikicorpus/preprocess.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

Stopwords Stopwords::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::MissingFile, "missing stopword list: " + file.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (!t.empty()) words.insert(text::to_lower(t));
  }
  return Stopwords(std::move(words));
}

bool Stopwords::contains(std::string_view word) const {
  return words_.contains(text::to_lower(word));
}

std::string Lemmatizer::lemmatize(std::string_view surface, Pos pos) const {
  if (wordnet_ && (pos == Pos::Noun || pos == Pos::Verb || pos == Pos::Adj || pos == Pos::Adv)) {
    if (auto base = wordnet_->morphy(surface, pos)) return *std::move(base);
  }
  return text::to_lower(surface);
}

std::vector<NounPhrase> chunk_noun_phrases(const Sentence& sentence, std::size_t sentence_index) {
  const auto& toks = sentence.tokens;
  const std::size_t n = toks.size();
  const auto is_modifier = [](Pos p) {
    return p == Pos::Adj || p == Pos::Noun || p == Pos::Propn || p == Pos::Num;
  };
  const auto is_nominal = [](Pos p) { return p == Pos::Noun || p == Pos::Propn; };

  std::vector<NounPhrase> out;
  std::size_t i = 0;
  while (i < n) {
    const std::size_t start = i;
    std::size_t k = toks[i].pos == Pos::Det ? i + 1 : i;
    std::size_t last_nominal = n;
    while (k < n && is_modifier(toks[k].pos)) {
      if (is_nominal(toks[k].pos)) last_nominal = k;
      ++k;
    }
    if (last_nominal == n) {
      i = k > i ? k : i + 1;
      continue;
    }
    i = last_nominal + 1;

    std::size_t first = start;
    std::size_t last = last_nominal;
    while (first <= last && (toks[first].is_stopword || toks[first].pos == Pos::Det)) ++first;
    while (last >= first && last > 0 && toks[last].is_stopword) --last;
    if (first > last || toks[last].is_stopword) continue;

    NounPhrase np;
    np.sentence = sentence_index;
    np.first_token = first;
    np.token_count = last - first + 1;
    const std::size_t offset = sentence.span.begin;
    np.surface = sentence.text.substr(toks[first].span.begin - offset,
                                      toks[last].span.end - toks[first].span.begin);
    for (std::size_t t = first; t < last; ++t) {
      np.normalized += text::to_lower(toks[t].surface);
      np.normalized += ' ';
    }
    np.normalized += is_nominal(toks[last].pos) ? toks[last].lemma : text::to_lower(toks[last].surface);
    out.push_back(std::move(np));
  }
  return out;
}

PipelineResources PipelineResources::load(const std::filesystem::path& data_dir) {
  PipelineResources res;
  res.stopwords = Stopwords::load(data_dir / "stopwords.txt");
  res.tokenizer = Tokenizer::load(data_dir / "abbreviations.txt");
  res.tagger = PosTagger(TagLexicon::load(data_dir / "tag_lexicon.tsv"));
  return res;
}

Pipeline::Pipeline(PipelineResources resources, std::shared_ptr<const WordnetLexicon> wordnet)
    : resources_(std::move(resources)), lemmatizer_(std::move(wordnet)) {}

std::vector<Token> Pipeline::tokenize(std::string_view input) const {
  return resources_.tokenizer.tokenize(input);
}

std::vector<Span> Pipeline::split_sentences(std::string_view input) const {
  std::vector<Span> spans;
  for (const auto& s : group_sentences(input, resources_.tokenizer.tokenize(input))) {
    spans.push_back({s.front().span.begin, s.back().span.end});
  }
  return spans;
}

void Pipeline::annotate(std::span<Token> sentence) const {
  resources_.tagger.tag(sentence);
  annotate_tagged(sentence);
}

void Pipeline::annotate_tagged(std::span<Token> sentence) const {
  for (auto& t : sentence) {
    t.lemma = lemmatizer_.lemmatize(t.surface, t.pos);
    t.is_stopword = resources_.stopwords.contains(t.surface);
  }
}

PreprocessedDoc Pipeline::preprocess_document(std::string_view input, std::string source_id) const {
  PreprocessedDoc doc;
  doc.source_id = std::move(source_id);
  doc.text = text::nfc(input);

  auto grouped = group_sentences(doc.text, resources_.tokenizer.tokenize(doc.text));
  doc.sentences.reserve(grouped.size());
  for (auto& tokens : grouped) {
    Sentence s;
    s.span = {tokens.front().span.begin, tokens.back().span.end};
    s.text = doc.text.substr(s.span.begin, s.span.size());
    s.tokens = std::move(tokens);
    annotate(s.tokens);
    doc.sentences.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
    auto nps = chunk_noun_phrases(doc.sentences[i], i);
    doc.noun_phrases.insert(doc.noun_phrases.end(), std::make_move_iterator(nps.begin()),
                            std::make_move_iterator(nps.end()));
  }
  return doc;
}

std::vector<std::string> Pipeline::content_tokens(std::string_view phrase) const {
  const auto normalized = text::nfc(phrase);
  auto tokens = resources_.tokenizer.tokenize(normalized);
  std::vector<std::string> out;
  std::size_t last_content = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& surface = tokens[i].surface;
    if (!text::has_letter(surface) && !text::is_all_digits(surface)) continue;
    if (resources_.stopwords.contains(surface)) continue;
    out.push_back(text::to_lower(surface));
    last_content = i;
  }
  if (!out.empty() && last_content < tokens.size()) {
    out.back() = lemmatizer_.lemmatize(tokens[last_content].surface, Pos::Noun);
  }
  return out;
}

}  // namespace wikicorpus
