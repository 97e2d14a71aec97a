#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "wikicorpus/mediawiki.hpp"

namespace wikicorpus {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// What the front-end needs from its surroundings. Tests and the fixture
/// recorder substitute the transport and capture the streams.
struct CliContext {
  std::ostream* out = nullptr;  // data output; defaults to std::cout
  std::ostream* err = nullptr;  // usage errors; defaults to std::cerr
  /// Builds the HTTP transport for `mine`; defaults to make_http_transport().
  std::function<std::shared_ptr<HttpTransport>()> transport_factory;
  /// Directory with stopwords.txt, abbreviations.txt and tag_lexicon.tsv.
  /// Empty: $WIKICORPUS_DATA_DIR, then the directory baked in at build time.
  std::filesystem::path data_dir;
};

std::filesystem::path default_data_dir();

/// Parses `args` (without the program name) and runs the chosen subcommand.
/// Returns kExitOk, kExitFailure (runtime failure) or kExitUsage.
int run_cli(const std::vector<std::string>& args, const CliContext& context = {});

int run_cli(int argc, const char* const* argv);

}  // namespace wikicorpus
