// Helper for regenerating test fixtures; not installed.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "mock_wiki.hpp"
#include "wikicorpus/cli.hpp"
#include "wikicorpus/preprocess.hpp"
#include "wikicorpus/text.hpp"

namespace {

using namespace wikicorpus;

int tokenize(const std::filesystem::path& data_dir) {
  const auto tokenizer = Tokenizer::load(data_dir / "abbreviations.txt");
  std::string line;
  while (std::getline(std::cin, line)) {
    const auto normalized = text::nfc(line);
    bool first = true;
    for (const auto& tok : tokenizer.tokenize(normalized)) {
      std::cout << (first ? "" : "\t") << tok.surface;
      first = false;
    }
    std::cout << "\n";
  }
  return 0;
}

struct GoldSentence {
  std::vector<std::string> tokens;
  std::vector<Pos> tags;
};

std::vector<GoldSentence> read_golden(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::vector<GoldSentence> out(1);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) {
      if (!out.back().tokens.empty()) out.emplace_back();
      continue;
    }
    const auto tab = line.find('\t');
    out.back().tokens.push_back(line.substr(0, tab));
    out.back().tags.push_back(parse_pos(line.substr(tab + 1)).value());
  }
  if (out.back().tokens.empty()) out.pop_back();
  return out;
}

// Coarse-tag agreement with a golden file, plus the confusions.
int agreement(const std::filesystem::path& data_dir, const std::filesystem::path& golden) {
  Pipeline pipeline(PipelineResources::load(data_dir), nullptr);
  std::size_t total = 0, same = 0;
  std::map<std::string, std::size_t> confusions;
  for (const auto& g : read_golden(golden)) {
    std::vector<Token> toks;
    for (const auto& t : g.tokens) toks.push_back(Token{t, {}, Pos::Other, false, {}});
    pipeline.pos_tag(toks);
    for (std::size_t i = 0; i < toks.size(); ++i) {
      ++total;
      if (toks[i].pos == g.tags[i]) {
        ++same;
      } else {
        ++confusions[std::string(to_string(g.tags[i])) + " -> " + std::string(to_string(toks[i].pos)) +
                     "  " + toks[i].surface];
      }
    }
  }
  std::cout << "agreement " << same << "/" << total << " = " << double(same) / double(total) << "\n";
  for (const auto& [k, n] : confusions) std::cout << n << "\t" << k << "\n";
  return 0;
}

// Runs `wikicorpus mine` against a wiki model; the cache it fills is the
// recorded fixture. Pass --endpoint and --cache explicitly.
int record(const std::filesystem::path& model, const std::vector<std::string>& mine_args) {
  ::setenv("SOURCE_DATE_EPOCH", "1661990400", 1);
  auto wiki = std::make_shared<const mock::MockWiki>(mock::WikiModel::load(model));
  CliContext ctx;
  ctx.transport_factory = [wiki] { return std::make_shared<mock::MockTransport>(wiki); };
  std::vector<std::string> args{"mine"};
  args.insert(args.end(), mine_args.begin(), mine_args.end());
  return run_cli(args, ctx);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wikicorpus fixture helper"};
  app.require_subcommand(1);
  std::filesystem::path data_dir = WIKICORPUS_DEFAULT_DATA_DIR;
  app.add_option("--data", data_dir)->capture_default_str();
  auto* tok = app.add_subcommand("tokenize", "One tab-separated token line per input line");
  std::filesystem::path golden;
  auto* agree = app.add_subcommand("agreement", "Tagger agreement with a golden file");
  agree->add_option("golden", golden)->required();
  auto* rec = app.add_subcommand("record", "Run mine against a wiki model (extra args go to mine)");
  std::filesystem::path model;
  rec->add_option("--model", model)->required()->check(CLI::ExistingFile);
  rec->allow_extras();
  CLI11_PARSE(app, argc, argv);
  if (*tok) return tokenize(data_dir);
  if (*rec) return record(model, rec->remaining());
  if (*agree) return agreement(data_dir, golden);
  return 0;
}
