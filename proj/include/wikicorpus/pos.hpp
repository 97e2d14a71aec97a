#pragma once

#include <optional>
#include <string_view>

namespace wikicorpus {

/// Coarse part-of-speech tag set.
enum class Pos { Noun, Propn, Verb, Adj, Adv, Det, Adp, Punct, Num, Other };

std::string_view to_string(Pos pos) noexcept;
std::optional<Pos> parse_pos(std::string_view name) noexcept;

}  // namespace wikicorpus
