#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rumourlens/config.hpp"
#include "rumourlens/error.hpp"
#include "rumourlens/lexicon.hpp"
#include "rumourlens/pipeline.hpp"
#include "rumourlens/senticnet.hpp"
#include "rumourlens/util.hpp"

namespace fs = std::filesystem;
using namespace rumourlens;

namespace {

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<double> alpha;
  std::optional<std::string> out;
  std::vector<std::string> settings;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Run configuration (key = value lines)")->required();
  cmd->add_option("--seed", f.seed, "Random seed");
  cmd->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
  cmd->add_option("--alpha", f.alpha, "Significance level");
  cmd->add_option("--out", f.out, "Output root; files go to <out>/<run_id>");
  cmd->add_option("--set", f.settings, "Override any config key: KEY=VALUE");
}

RunConfig resolve(const CommonFlags& f) {
  auto c = load_run_config(fs::path(f.config));
  const auto cwd = fs::current_path();
  for (const auto& s : f.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ConfigError, "--set expects KEY=VALUE, got '" + s + "'");
    apply_setting(c, trim(std::string_view(s).substr(0, eq)), std::string_view(s).substr(eq + 1), cwd);
  }
  if (f.seed) c.seed = *f.seed;
  if (f.threads) c.threads = *f.threads;
  if (f.alpha) c.alpha = *f.alpha;
  if (f.out) apply_setting(c, "out", *f.out, cwd);
  c.validate();
  return c;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::ConfigError: return 2;
    case ErrorKind::MissingArtifact: return 3;
    case ErrorKind::IoError: return 4;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Psycholinguistic rumour analysis: features, KS comparison, random forests, SHAP"};
  app.require_subcommand(1);

  CommonFlags flags;
  using Stage = void (*)(const RunConfig&);
  const std::vector<std::tuple<const char*, const char*, Stage>> stages = {
      {"ingest", "Load and validate the corpus; write partitions.csv", cmd_ingest},
      {"featurize", "Extract per-tweet features into features.csv", cmd_featurize},
      {"compare", "KS significance matrices, means and emotion tables", cmd_compare},
      {"train", "Per-event source and reaction random forests; metrics.csv", cmd_train},
      {"explain", "SHAP summaries for every trained model", cmd_explain},
      {"report", "Render report.md and the CSV bundle", cmd_report},
      {"all", "Run every stage in order", cmd_all},
  };
  Stage chosen = nullptr;
  for (const auto& [name, help, fn] : stages) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, flags);
    cmd->callback([&chosen, fn = fn] { chosen = fn; });
  }

  std::string dic_in, dic_out, dic_name = "converted";
  auto* convert = app.add_subcommand("convert-dic", "Convert a LIWC-style .dic file to lexicon JSON");
  convert->add_option("input", dic_in, ".dic file")->required();
  convert->add_option("output", dic_out, "Lexicon JSON to write")->required();
  convert->add_option("--name", dic_name, "Lexicon name");

  std::string sentic_url, sentic_table, sentic_concepts;
  int sentic_timeout = 5000, sentic_retries = 2;
  auto* fetch = app.add_subcommand("fetch-sentic", "Fetch missing concepts into a local sentic CSV cache");
  fetch->add_option("--url", sentic_url, "Concept service base URL")->required();
  fetch->add_option("--table", sentic_table, "Sentic CSV to extend (created if missing)")->required();
  fetch->add_option("--concepts", sentic_concepts, "File with one concept per line")->required();
  fetch->add_option("--timeout-ms", sentic_timeout, "Per-request timeout");
  fetch->add_option("--retries", sentic_retries, "Retries per concept");

  CLI11_PARSE(app, argc, argv);

  try {
    if (convert->parsed()) {
      write_file(dic_out, convert_liwc_dic(read_file(dic_in), dic_name));
      Lexicon::load(dic_out);
      return 0;
    }
    if (fetch->parsed()) {
      auto table = fs::exists(sentic_table) ? SenticTable::load(sentic_table) : SenticTable{};
      const auto added = fetch_missing_concepts({sentic_url, sentic_timeout, sentic_retries},
                                                read_word_list(sentic_concepts), table);
      table.save(sentic_table);
      std::printf("added %zu concepts; table holds %zu\n", added, table.size());
      return 0;
    }
    chosen(resolve(flags));
    return 0;
  } catch (const Error& e) {
    nlohmann::json j{{"error", to_string(e.kind())}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    nlohmann::json j{{"error", "Internal"}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
    return 1;
  }
}
