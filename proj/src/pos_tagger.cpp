#include <array>
#include <fstream>

#include "wikicorpus/error.hpp"
#include "wikicorpus/preprocess.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

namespace {

constexpr std::array<std::string_view, 12> kModals = {
    "shall", "will", "must", "should", "may", "can", "could", "would", "might", "cannot",
    "ca", "wo"};

bool is_modal(std::string_view lowered) {
  for (auto m : kModals) {
    if (m == lowered) return true;
  }
  return false;
}

bool is_punctuation_only(std::string_view word) {
  for (std::size_t i = 0, len = 0; i < word.size(); i += len) {
    if (text::is_alnum(text::decode(word, i, len))) return false;
  }
  return true;
}

// digits with numeric punctuation: 12, 3.5, 1,000, 10:30, 50%
bool is_number_like(std::string_view word) {
  bool digit = false;
  for (char c : word) {
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c != '.' && c != ',' && c != ':' && c != '/' && c != '-' && c != '%' && c != '+') {
      return false;
    }
  }
  return digit;
}

bool is_title_case(std::string_view word) {
  if (!text::starts_with_upper(word)) return false;
  std::size_t len = 0;
  text::decode(word, 0, len);
  for (std::size_t i = len, l = 0; i < word.size(); i += l) {
    if (text::is_upper(text::decode(word, i, l))) return false;
  }
  return true;
}

Pos suffix_tag(std::string_view w) {
  const auto ends = [&](std::string_view s) { return w.size() > s.size() + 1 && w.ends_with(s); };
  if (ends("ly")) return Pos::Adv;
  if (ends("ing") || ends("ed")) return Pos::Verb;
  for (auto s : {"tion", "sion", "ment", "ness", "ity", "ance", "ence", "ship", "ism", "ist",
                 "ure", "age", "er", "or"}) {
    if (ends(s)) return Pos::Noun;
  }
  for (auto s : {"ous", "ful", "ive", "able", "ible", "al", "ic", "less", "ary", "ish"}) {
    if (ends(s)) return Pos::Adj;
  }
  if (w.find('-') != std::string_view::npos) return Pos::Adj;
  return Pos::Noun;
}

}  // namespace

TagLexicon TagLexicon::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "missing tag lexicon: " + file.string());
  TagLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw Error(ErrorKind::MalformedLine,
                  file.string() + ":" + std::to_string(line_no) + ": expected word<TAB>tag");
    }
    const auto pos = parse_pos(std::string_view(line).substr(tab + 1));
    if (!pos) {
      throw Error(ErrorKind::MalformedLine,
                  file.string() + ":" + std::to_string(line_no) + ": unknown tag");
    }
    // first row for a word wins
    lex.add(line.substr(0, tab), *pos);
  }
  return lex;
}

std::optional<Pos> TagLexicon::find(std::string_view word) const {
  const auto it = tags_.find(std::string(word));
  if (it == tags_.end()) return std::nullopt;
  return it->second;
}

Pos PosTagger::initial_tag(std::string_view word, bool sentence_initial) const {
  if (word.empty() || is_punctuation_only(word)) return Pos::Punct;
  if (is_number_like(word)) return Pos::Num;
  if (auto hit = lexicon_.find(word)) return *hit;
  const auto lowered = text::to_lower(word);
  if (sentence_initial) {
    if (auto hit = lexicon_.find(lowered)) return *hit;
  }
  if (is_title_case(word)) return sentence_initial ? suffix_tag(lowered) : Pos::Propn;
  if (auto hit = lexicon_.find(lowered)) return *hit;
  return suffix_tag(lowered);
}

void PosTagger::tag(std::span<Token> sentence) const {
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    sentence[i].pos = initial_tag(sentence[i].surface, i == 0);
  }

  // Contextual corrections, one left-to-right pass.
  const auto lower = [&](std::size_t i) { return text::to_lower(sentence[i].surface); };
  for (std::size_t i = 0; i < sentence.size(); ++i) {
    Token& t = sentence[i];
    const Pos prev = i > 0 ? sentence[i - 1].pos : Pos::Punct;
    const Pos next = i + 1 < sentence.size() ? sentence[i + 1].pos : Pos::Punct;
    const std::string prev_word = i > 0 ? lower(i - 1) : std::string();

    // "shall transmit", "to stop": base verb after a modal or infinitival "to"
    if ((t.pos == Pos::Noun || t.pos == Pos::Adj) && !text::starts_with_upper(t.surface) &&
        (is_modal(prev_word) || (prev_word == "to" && next != Pos::Noun && next != Pos::Propn)) &&
        !t.surface.ends_with("s")) {
      if (is_modal(prev_word) || next == Pos::Det || next == Pos::Adp || next == Pos::Other) {
        t.pos = Pos::Verb;
        continue;
      }
    }
    // "the display", "a request": verb-tagged word right after a determiner
    if (t.pos == Pos::Verb && prev == Pos::Det && !t.surface.ends_with("ed") &&
        !t.surface.ends_with("ing")) {
      t.pos = Pos::Noun;
      continue;
    }
    // "the transmitted message": participle between determiner/adjective and noun
    if (t.pos == Pos::Verb && (prev == Pos::Det || prev == Pos::Adj) &&
        (next == Pos::Noun || next == Pos::Propn) &&
        (t.surface.ends_with("ed") || t.surface.ends_with("ing"))) {
      t.pos = Pos::Adj;
      continue;
    }
  }
}

}  // namespace wikicorpus
