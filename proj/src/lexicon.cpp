#include "wikicorpus/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <regex>
#include <span>
#include <sstream>
#include <utility>

#include "wikicorpus/error.hpp"
#include "wikicorpus/text.hpp"

namespace wikicorpus {

std::string_view to_string(Pos pos) noexcept {
  switch (pos) {
    case Pos::Noun: return "NOUN";
    case Pos::Propn: return "PROPN";
    case Pos::Verb: return "VERB";
    case Pos::Adj: return "ADJ";
    case Pos::Adv: return "ADV";
    case Pos::Det: return "DET";
    case Pos::Adp: return "ADP";
    case Pos::Punct: return "PUNCT";
    case Pos::Num: return "NUM";
    case Pos::Other: return "OTHER";
  }
  return "OTHER";
}

std::optional<Pos> parse_pos(std::string_view name) noexcept {
  static constexpr std::array<Pos, 10> kAll = {Pos::Noun, Pos::Propn, Pos::Verb, Pos::Adj,
                                               Pos::Adv,  Pos::Det,   Pos::Adp,  Pos::Punct,
                                               Pos::Num,  Pos::Other};
  for (Pos p : kAll) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

namespace {

constexpr std::array<std::string_view, 4> kSuffixes = {"noun", "verb", "adj", "adv"};

// Standard WordNet detachment rules, tried in this order.
using Rule = std::pair<std::string_view, std::string_view>;
constexpr std::array<Rule, 9> kNounRules = {{{"s", ""}, {"ses", "s"}, {"ves", "f"},
                                             {"xes", "x"}, {"zes", "z"}, {"ches", "ch"},
                                             {"shes", "sh"}, {"men", "man"}, {"ies", "y"}}};
constexpr std::array<Rule, 8> kVerbRules = {{{"s", ""}, {"ies", "y"}, {"es", "e"}, {"es", ""},
                                             {"ed", "e"}, {"ed", ""}, {"ing", "e"}, {"ing", ""}}};
constexpr std::array<Rule, 4> kAdjRules = {{{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}}};

std::span<const Rule> rules_for(std::size_t cls) {
  switch (cls) {
    case 0: return kNounRules;
    case 1: return kVerbRules;
    case 2: return kAdjRules;
    default: return {};
  }
}

std::string decode_lemma(std::string_view raw) {
  std::string out = text::to_lower(raw);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

[[noreturn]] void malformed(const std::filesystem::path& file, std::size_t line_no,
                            const std::string& what) {
  std::ostringstream os;
  os << file.string() << ":" << line_no << ": " << what;
  throw Error(ErrorKind::MalformedLine, os.str());
}

std::ifstream open_required(const std::filesystem::path& file) {
  if (!std::filesystem::is_regular_file(file)) {
    throw Error(ErrorKind::MissingFile, "missing WordNet file: " + file.string());
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorKind::MissingFile, "cannot open WordNet file: " + file.string());
  return in;
}

bool is_numeric(std::string_view s) {
  unsigned long value = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, value);
  return ec == std::errc() && ptr == end;
}

}  // namespace

std::optional<std::size_t> WordnetLexicon::class_index(Pos pos) noexcept {
  switch (pos) {
    case Pos::Noun: return 0;
    case Pos::Verb: return 1;
    case Pos::Adj: return 2;
    case Pos::Adv: return 3;
    default: return std::nullopt;
  }
}

WordnetLexicon WordnetLexicon::load(const std::filesystem::path& directory) {
  WordnetLexicon lex;
  static const std::regex kVersion(R"(WordNet\s+(\d+(?:\.\d+)*))");

  for (std::size_t cls = 0; cls < kClasses; ++cls) {
    const auto file = directory / ("index." + std::string(kSuffixes[cls]));
    auto in = open_required(file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      // License header lines are indented.
      if (line.front() == ' ') {
        std::smatch m;
        if (lex.source_version_ == "unknown" && std::regex_search(line, m, kVersion)) {
          lex.source_version_ = "WordNet " + m[1].str();
        }
        continue;
      }
      const auto fields = split_fields(line);
      if (fields.size() < 4) malformed(file, line_no, "expected at least 4 fields");
      const auto pos_field = fields[1];
      if (pos_field.size() != 1 || std::string_view("nvasr").find(pos_field[0]) == std::string_view::npos) {
        malformed(file, line_no, "unknown part of speech '" + std::string(pos_field) + "'");
      }
      if (!is_numeric(fields[2])) malformed(file, line_no, "synset count is not a number");
      lex.entries_[decode_lemma(fields[0])] |= static_cast<std::uint8_t>(1U << cls);
    }
  }

  for (std::size_t cls = 0; cls < kClasses; ++cls) {
    const auto file = directory / (std::string(kSuffixes[cls]) + ".exc");
    auto in = open_required(file);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line.front() == ' ') continue;
      const auto fields = split_fields(line);
      if (fields.empty()) continue;
      if (fields.size() < 2) malformed(file, line_no, "exception without base form");
      std::vector<std::string> bases;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        auto base = decode_lemma(fields[i]);
        const auto it = lex.entries_.find(base);
        // keep only bases that are themselves indexed under this class
        if (it != lex.entries_.end() && (it->second & (1U << cls)) != 0 &&
            std::find(bases.begin(), bases.end(), base) == bases.end()) {
          bases.push_back(std::move(base));
        }
      }
      if (bases.empty()) continue;
      auto& slot = lex.exceptions_[cls][decode_lemma(fields[0])];
      for (auto& b : bases) {
        if (std::find(slot.begin(), slot.end(), b) == slot.end()) slot.push_back(std::move(b));
      }
    }
  }
  return lex;
}

bool WordnetLexicon::contains(std::string_view lemma, Pos pos) const {
  const auto cls = class_index(pos);
  if (!cls) return false;
  const auto it = entries_.find(text::normalize_phrase(lemma));
  return it != entries_.end() && (it->second & (1U << *cls)) != 0;
}

bool WordnetLexicon::contains_lemma(std::string_view phrase) const {
  auto key = text::normalize_phrase(phrase);
  if (key.empty()) return false;
  std::replace(key.begin(), key.end(), '_', ' ');
  return entries_.contains(key);
}

std::optional<std::string> WordnetLexicon::morphy(std::string_view surface, Pos pos) const {
  const auto cls = class_index(pos);
  if (!cls) return std::nullopt;
  auto form = text::normalize_phrase(surface);
  std::replace(form.begin(), form.end(), '_', ' ');
  if (form.empty()) return std::nullopt;

  const auto indexed = [&](const std::string& candidate) {
    const auto it = entries_.find(candidate);
    return it != entries_.end() && (it->second & (1U << *cls)) != 0;
  };

  if (const auto exc = exceptions_[*cls].find(form); exc != exceptions_[*cls].end()) {
    return exc->second.front();
  }
  for (const auto& [suffix, replacement] : rules_for(*cls)) {
    if (form.size() > suffix.size() && form.ends_with(suffix)) {
      std::string candidate = form.substr(0, form.size() - suffix.size());
      candidate.append(replacement);
      if (indexed(candidate)) return candidate;
    }
  }
  if (indexed(form)) return form;
  return std::nullopt;
}

}  // namespace wikicorpus
