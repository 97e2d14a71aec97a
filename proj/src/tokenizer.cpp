#include <algorithm>
#include <fstream>

#include "wikicorpus/error.hpp"
#include "wikicorpus/preprocess.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

namespace {

bool is_apostrophe(char32_t c) { return c == U'\'' || c == U'’'; }

bool is_terminator(std::string_view surface) {
  if (surface.empty()) return false;
  return std::all_of(surface.begin(), surface.end(),
                     [](char c) { return c == '.' || c == '!' || c == '?'; });
}

bool is_opening_quote(std::string_view surface) {
  return surface == "\"" || surface == "(" || surface == "[" || surface == "'" ||
         surface == "“" || surface == "‘";
}

bool is_closing_quote(std::string_view surface) {
  return surface == "\"" || surface == ")" || surface == "]" || surface == "'" ||
         surface == "”" || surface == "’";
}

bool contains_blank_line(std::string_view gap) {
  std::size_t newlines = 0;
  for (char c : gap) {
    if (c == '\n') {
      if (++newlines >= 2) return true;
    } else if (c != ' ' && c != '\t' && c != '\r') {
      newlines = 0;
    }
  }
  return false;
}

// "U.S" followed by '.', i.e. single letters joined by periods.
bool is_dotted_initials(std::string_view word) {
  if (word.size() < 3) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const bool letter_slot = (i % 2 == 0);
    const char c = word[i];
    if (letter_slot && !((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
    if (!letter_slot && c != '.') return false;
  }
  return word.size() % 2 == 1;
}

}  // namespace

Tokenizer::Tokenizer(std::vector<std::string> abbreviations) {
  for (auto& a : abbreviations) {
    auto lowered = text::to_lower(text::trim(a));
    if (!lowered.empty()) abbreviations_.push_back(std::move(lowered));
  }
  std::sort(abbreviations_.begin(), abbreviations_.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() > y.size() : x < y;
  });
  abbreviations_.erase(std::unique(abbreviations_.begin(), abbreviations_.end()),
                       abbreviations_.end());
}

Tokenizer Tokenizer::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::MissingFile, "missing abbreviation list: " + file.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (!t.empty() && t.front() != '#') words.emplace_back(t);
  }
  return Tokenizer(std::move(words));
}

bool Tokenizer::is_abbreviation(std::string_view token) const {
  const auto lowered = text::to_lower(token);
  return std::find(abbreviations_.begin(), abbreviations_.end(), lowered) != abbreviations_.end();
}

std::size_t Tokenizer::match_abbreviation(std::string_view input, std::size_t pos) const {
  for (const auto& a : abbreviations_) {
    if (pos + a.size() > input.size()) continue;
    bool equal = true;
    for (std::size_t k = 0; k < a.size() && equal; ++k) {
      char c = input[pos + k];
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
      equal = (c == a[k]);
    }
    if (!equal) continue;
    const std::size_t after = pos + a.size();
    if (after < input.size()) {
      std::size_t len = 0;
      if (text::is_alnum(text::decode(input, after, len))) continue;
    }
    return a.size();
  }
  return 0;
}

std::vector<Token> Tokenizer::tokenize(std::string_view input) const {
  std::vector<Token> tokens;
  const std::size_t n = input.size();
  std::size_t i = 0;

  const auto emit = [&](std::size_t begin, std::size_t end) {
    Token t;
    t.surface = std::string(input.substr(begin, end - begin));
    t.span = {begin, end};
    tokens.push_back(std::move(t));
  };
  const auto alnum_at = [&](std::size_t pos) {
    if (pos >= n) return false;
    std::size_t len = 0;
    return text::is_alnum(text::decode(input, pos, len));
  };
  const auto digit_at = [&](std::size_t pos) {
    if (pos >= n) return false;
    std::size_t len = 0;
    return text::is_digit(text::decode(input, pos, len));
  };

  while (i < n) {
    std::size_t len = 0;
    const char32_t c = text::decode(input, i, len);
    if (text::is_space(c)) {
      i += len;
      continue;
    }

    const bool at_word_start = tokens.empty() || tokens.back().span.end < i || !alnum_at(i - 1);
    if (at_word_start) {
      if (const std::size_t a = match_abbreviation(input, i); a > 0) {
        emit(i, i + a);
        i += a;
        continue;
      }
    }

    if (text::is_alnum(c)) {
      std::size_t j = i + len;
      bool prev_digit = text::is_digit(c);
      while (j < n) {
        std::size_t l = 0;
        const char32_t d = text::decode(input, j, l);
        if (text::is_alnum(d) || (d >= 0x300 && d <= 0x36F)) {
          prev_digit = text::is_digit(d);
          j += l;
          continue;
        }
        const std::size_t next = j + l;
        if (is_apostrophe(d)) {
          // split the possessive clitic: "driver's" -> "driver" "'s"
          const bool clitic = next < n && (input[next] == 's' || input[next] == 'S') &&
                              !alnum_at(next + 1);
          if (!clitic && alnum_at(next)) {
            j = next;
            continue;
          }
          break;
        }
        if ((d == U'-' || d == U'.' || d == U'_') && alnum_at(next)) {
          j = next;
          continue;
        }
        if (d == U',' && prev_digit && digit_at(next)) {
          j = next;
          continue;
        }
        break;
      }
      if (j < n && input[j] == '.' && is_dotted_initials(input.substr(i, j - i))) ++j;
      emit(i, j);
      i = j;
      continue;
    }

    // possessive clitic directly attached to the previous word
    if (is_apostrophe(c) && !tokens.empty() && tokens.back().span.end == i && i + len < n &&
        (input[i + len] == 's' || input[i + len] == 'S') && !alnum_at(i + len + 1)) {
      emit(i, i + len + 1);
      i += len + 1;
      continue;
    }

    // runs of '.' or '-' ("...", "--") form one token, anything else is single
    std::size_t j = i + len;
    if (c == U'.' || c == U'-') {
      while (j < n && input[j] == static_cast<char>(c)) ++j;
    }
    emit(i, j);
    i = j;
  }
  return tokens;
}

std::vector<std::vector<Token>> group_sentences(std::string_view input, std::vector<Token> tokens) {
  std::vector<std::vector<Token>> sentences;
  std::vector<Token> current;

  const auto close = [&] {
    if (!current.empty()) sentences.push_back(std::move(current));
    current.clear();
  };

  for (std::size_t k = 0; k < tokens.size(); ++k) {
    if (!current.empty()) {
      const auto gap = input.substr(current.back().span.end,
                                    tokens[k].span.begin - current.back().span.end);
      if (contains_blank_line(gap)) close();
    }
    current.push_back(std::move(tokens[k]));
    const Token& tok = current.back();
    if (!is_terminator(tok.surface)) continue;

    // a closing quote glued to the terminator belongs to this sentence
    std::size_t look = k + 1;
    while (look < tokens.size() && tokens[look].span.begin == tokens[look - 1].span.end &&
           is_closing_quote(tokens[look].surface)) {
      ++look;
    }
    if (look >= tokens.size()) {
      for (std::size_t q = k + 1; q < look; ++q) current.push_back(std::move(tokens[q]));
      k = look - 1;
      close();
      continue;
    }
    const Token& last = (look > k + 1) ? tokens[look - 1] : tok;
    const Token& next = tokens[look];
    const bool separated = next.span.begin > last.span.end;
    std::size_t len = 0;
    const char32_t first = text::decode(next.surface, 0, len);
    const bool starts_new = text::is_upper(first) || text::is_digit(first) ||
                            is_opening_quote(next.surface);
    if (separated && starts_new) {
      for (std::size_t q = k + 1; q < look; ++q) current.push_back(std::move(tokens[q]));
      k = look - 1;
      close();
    }
  }
  close();
  return sentences;
}

}  // namespace wikicorpus
