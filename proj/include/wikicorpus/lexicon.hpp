#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wikicorpus/pos.hpp"

namespace wikicorpus {

/// Lemma-membership view of a WordNet 3.x flat-file database.
///
/// Only the index.{noun,verb,adj,adv} files and the matching *.exc exception
/// lists are read; synsets are never touched. Lemmas are stored lowercase
/// with the on-disk underscores decoded to spaces. Immutable after load.
class WordnetLexicon {
 public:
  /// Reads index.* and *.exc from `directory`. Throws Error(MissingFile) if
  /// any of the eight files is absent and Error(MalformedLine) with a
  /// file:line diagnostic for unparseable rows.
  static WordnetLexicon load(const std::filesystem::path& directory);

  /// True iff `lemma` is indexed under `pos` (Noun, Verb, Adj or Adv).
  bool contains(std::string_view lemma, Pos pos) const;

  /// True iff the whitespace-normalized, lowercased phrase is indexed under
  /// any part of speech. Multi-word phrases are checked whole.
  bool contains_lemma(std::string_view phrase) const;

  /// WordNet base-form search: exception list, then suffix detachment, then
  /// the form itself. Returns the first candidate that is indexed under
  /// `pos`, or nullopt (also for parts of speech WordNet does not cover).
  std::optional<std::string> morphy(std::string_view surface, Pos pos) const;

  const std::string& source_version() const noexcept { return source_version_; }
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  static constexpr std::size_t kClasses = 4;
  static std::optional<std::size_t> class_index(Pos pos) noexcept;

  // lemma -> bitmask over {noun, verb, adj, adv}
  std::unordered_map<std::string, std::uint8_t> entries_;
  std::array<std::unordered_map<std::string, std::vector<std::string>>, kClasses> exceptions_;
  std::string source_version_ = "unknown";
};

}  // namespace wikicorpus
