#include "rumourlens/pipeline.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "rumourlens/classify.hpp"
#include "rumourlens/corpus.hpp"
#include "rumourlens/error.hpp"
#include "rumourlens/lexicon.hpp"
#include "rumourlens/report.hpp"
#include "rumourlens/senticnet.hpp"
#include "rumourlens/shap.hpp"
#include "rumourlens/stats.hpp"
#include "rumourlens/textprep.hpp"
#include "rumourlens/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rumourlens {

namespace {

constexpr std::string_view kManifest = "manifest.json";
constexpr std::string_view kCorpusFile = "corpus.jsonl";
constexpr std::string_view kFeaturesFile = "features.csv";

json read_manifest(const fs::path& dir) {
  const auto p = dir / kManifest;
  if (!fs::exists(p)) return json{{"stages", json::object()}};
  try {
    return json::parse(read_file(p));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, p.string() + ": " + e.what());
  }
}

void record_stage(const fs::path& dir, const std::string& stage, const std::vector<std::string>& artifacts) {
  auto manifest = read_manifest(dir);
  json files = json::object();
  for (const auto& a : artifacts) files[a] = fnv1a_hex(read_file(dir / a));
  manifest["stages"][stage] = json{{"artifacts", files}};
  write_file(dir / kManifest, manifest.dump(1) + "\n");
}

void require_stage(const fs::path& dir, const std::string& stage, const std::string& needed_by) {
  const auto manifest = read_manifest(dir);
  const auto& stages = manifest.at("stages");
  if (!stages.contains(stage))
    throw Error(ErrorKind::MissingArtifact,
                needed_by + " needs the " + stage + " stage; run `rumourlens " + stage + "` first");
  for (const auto& [name, hash] : stages.at(stage).at("artifacts").items())
    if (!fs::exists(dir / name))
      throw Error(ErrorKind::MissingArtifact, needed_by + " needs " + (dir / name).string());
}

void write_common(const RunConfig& config) {
  fs::create_directories(config.run_dir());
  write_file(config.run_dir() / "run_config.json", to_json(config));
}

std::vector<EventCorpus> load_corpus(const RunConfig& config) {
  auto format = config.dataset_format;
  if (format == DatasetFormat::Auto) format = fs::is_directory(config.dataset) ? DatasetFormat::Pheme : DatasetFormat::Jsonl;
  return format == DatasetFormat::Pheme ? load_pheme_tree(config.dataset) : load_jsonl(config.dataset);
}

AnalysisReport read_sidecar(const fs::path& dir, std::string_view stage) {
  return report_from_json(read_file(dir / (std::string(stage) + ".json")));
}

void write_sidecar(const fs::path& dir, std::string_view stage, const AnalysisReport& r) {
  write_file(dir / (std::string(stage) + ".json"), report_to_json(r));
}

FeatureMatrix read_features(const fs::path& dir) { return feature_matrix_from_csv(read_file(dir / kFeaturesFile)); }

std::vector<std::string> events_of(const FeatureMatrix& m) {
  std::set<std::string> s;
  for (const auto& r : m.rows) s.insert(r.event);
  return {s.begin(), s.end()};
}

std::vector<Role> roles_in_scope(Scope scope) {
  switch (scope) {
    case Scope::Sources: return {Role::Source};
    case Scope::Reactions: return {Role::Reaction};
    case Scope::Both: break;
  }
  return {Role::Source, Role::Reaction};
}

// [feature][row] for the rows with the given role and label.
std::vector<std::vector<std::optional<double>>> columns(const std::vector<FeatureRow>& rows, std::size_t width) {
  std::vector<std::vector<std::optional<double>>> cols(width);
  for (const auto& r : rows)
    for (std::size_t f = 0; f < width; ++f) cols[f].push_back(r.values[f]);
  return cols;
}

struct ModelData {
  std::vector<FeatureRow> rows;
  SplitIndices split;
  std::vector<FeatureRow> train_rows;
  std::vector<FeatureRow> test_rows;
};

ModelData model_data(const FeatureMatrix& m, const RunConfig& config, const std::string& event, Role role) {
  ModelData d;
  d.rows = select_rows(m, event, role);
  std::vector<Label> labels;
  for (const auto& r : d.rows) labels.push_back(r.label);
  d.split = split_train_test(labels, config.split_ratio, model_seed(config.seed, event, role));
  for (auto i : d.split.train) d.train_rows.push_back(d.rows[i]);
  for (auto i : d.split.test) d.test_rows.push_back(d.rows[i]);
  return d;
}

std::map<std::string, std::string> run_summary(const RunConfig& c) {
  auto kv = to_key_values(c);
  std::map<std::string, std::string> out;
  for (const char* k : {"alpha", "averaging", "cv_folds", "emotion_provider", "n_trees", "scope", "seed",
                        "shap_background", "split_ratio"})
    out[k] = kv.at(k);
  const auto lex = Lexicon::load(c.lexicon);
  out["lexicon"] = lex.name() + (lex.version().empty() ? "" : " " + lex.version());
  return out;
}

}  // namespace

std::unique_ptr<EmotionProvider> make_emotion_provider(const RunConfig& config) {
  switch (config.emotion_provider) {
    case EmotionProviderKind::None: return nullptr;
    case EmotionProviderKind::Fallback:
      return std::make_unique<LexiconEmotionProvider>(LexiconEmotionProvider::from_file(config.emotion_lexicon));
    case EmotionProviderKind::Remote: {
      RemoteEmotionOptions o;
      o.url = config.emotion_url;
      o.timeout_ms = config.emotion_timeout_ms;
      o.retries = config.emotion_retries;
      o.batch_size = config.emotion_batch_size;
      o.max_in_flight = config.emotion_max_in_flight;
      o.cassette = config.emotion_cassette;
      return std::make_unique<RemoteEmotionProvider>(std::move(o));
    }
  }
  return nullptr;
}

std::vector<FeatureRow> select_rows(const FeatureMatrix& matrix, std::string_view event, Role role) {
  std::vector<FeatureRow> out;
  for (const auto& r : matrix.rows)
    if (r.event == event && r.role == role) out.push_back(r);
  return out;
}

std::uint64_t model_seed(std::uint64_t seed, std::string_view event, Role role) {
  return derive_seed(seed, fnv1a(model_name(event, role)));
}

void cmd_ingest(const RunConfig& config) {
  config.validate();
  write_common(config);
  const auto dir = config.run_dir();
  auto corpora = load_corpus(config);
  AnalysisReport r;
  std::vector<EventCorpus> kept;
  for (auto& c : corpora) {
    validate(c);
    r.partitions.push_back(partition(c).counts);
    if (c.has_rumour_sources()) {
      kept.push_back(std::move(c));
    } else {
      warn("event " + c.event + " has no rumour sources; excluded from comparison and training");
      r.excluded_events.push_back(c.event);
    }
  }
  if (kept.empty()) throw Error(ErrorKind::TooFewSamples, "no event has rumour sources");
  write_jsonl(kept, dir / kCorpusFile);
  auto files = render(r, ReportFormat::CsvBundle, dir);
  write_sidecar(dir, "ingest", r);
  files.push_back(std::string(kCorpusFile));
  files.push_back("ingest.json");
  record_stage(dir, "ingest", files);
}

void cmd_featurize(const RunConfig& config) {
  config.validate();
  const auto dir = config.run_dir();
  require_stage(dir, "ingest", "featurize");
  write_common(config);
  const auto corpora = load_jsonl(dir / kCorpusFile);
  const auto lexicon = Lexicon::load(config.lexicon);
  const auto sentic = SenticTable::load(config.sentic);
  const auto easy = EasyWordList::from_file(config.easy_words);
  const auto stop = StopwordSet::from_file(config.stopwords);
  const auto lemmatizer = RuleLemmatizer::from_file(config.lemma_exceptions);
  auto emotions = make_emotion_provider(config);
  FeatureResources res{&lexicon, &sentic, &easy, &stop, &lemmatizer, emotions.get()};
  const auto matrix = extract_features(corpora, res, config.thread_count());
  write_file(dir / kFeaturesFile, to_csv(matrix));
  record_stage(dir, "featurize", {std::string(kFeaturesFile)});
}

namespace {

using PopulationRows = std::array<std::vector<const FeatureRow*>, 4>;

// Argmax table from the emotion.* columns; rows without emotions are left out.
std::optional<EmotionTable> emotions_for(const FeatureMatrix& m, const PopulationRows& rows) {
  const auto first = m.index_of("emotion." + std::string(kEmotionLabels[0]));
  if (!first) return std::nullopt;
  std::array<std::vector<EmotionDist>, 4> pops;
  for (std::size_t p = 0; p < 4; ++p)
    for (const auto* r : rows[p]) {
      if (!r->values[*first]) continue;
      EmotionDist d;
      for (std::size_t k = 0; k < kEmotionCount; ++k) d.scores[k] = r->values[*first + k].value_or(0);
      pops[p].push_back(d);
    }
  return emotion_table(pops);
}

}  // namespace

void cmd_compare(const RunConfig& config) {
  config.validate();
  const auto dir = config.run_dir();
  require_stage(dir, "featurize", "compare");
  write_common(config);
  const auto m = read_features(dir);
  const auto width = m.names.size();
  const auto events = events_of(m);

  AnalysisReport r;
  std::vector<PopulationValues> pops;
  PopulationRows all_pops;
  for (const auto& e : events) {
    PopulationValues pv{e, {}};
    PopulationRows ev_pops;
    for (const auto& row : m.rows) {
      if (row.event != e) continue;
      const std::size_t p = (row.role == Role::Source ? 0 : 2) + (row.label == Label::Rumour ? 0 : 1);
      ev_pops[p].push_back(&row);
      all_pops[p].push_back(&row);
    }
    for (std::size_t p = 0; p < 4; ++p) {
      std::vector<FeatureRow> rows;
      for (const auto* x : ev_pops[p]) rows.push_back(*x);
      pv.values[p] = columns(rows, width);
    }
    if (auto t = emotions_for(m, ev_pops)) r.emotions.push_back({e, *t});
    pops.push_back(std::move(pv));
  }
  if (auto t = emotions_for(m, all_pops))
    r.emotions.push_back({std::string(kAggregatedEvent), *t});
  else
    r.skipped["emotions"] = "no emotion provider";

  for (auto role : {Role::Source, Role::Reaction}) {
    const bool in_scope = config.scope == Scope::Both || (config.scope == Scope::Sources) == (role == Role::Source);
    const auto key = role == Role::Source ? "significance_sources" : "significance_reactions";
    if (!in_scope) {
      r.skipped[key] = "outside scope " + std::string(to_string(config.scope));
      continue;
    }
    std::vector<EventSamples> samples;
    const std::size_t base = role == Role::Source ? 0 : 2;
    for (const auto& pv : pops) samples.push_back(EventSamples{pv.event, pv.values[base], pv.values[base + 1]});
    auto matrix = significance_matrix(m.names, std::move(samples),
                                      role == Role::Source ? PopulationPair::Sources : PopulationPair::Reactions,
                                      config.alpha, config.thread_count());
    (role == Role::Source ? r.sources : r.reactions) = std::move(matrix);
  }
  r.means = mean_report(m.names, pops);

  auto files = render(r, ReportFormat::CsvBundle, dir);
  write_sidecar(dir, "compare", r);
  files.push_back("compare.json");
  record_stage(dir, "compare", files);
}

void cmd_train(const RunConfig& config) {
  config.validate();
  const auto dir = config.run_dir();
  require_stage(dir, "featurize", "train");
  write_common(config);
  const auto m = read_features(dir);
  AnalysisReport r;
  std::vector<std::string> files;
  fs::create_directories(dir / "models");
  for (const auto& event : events_of(m)) {
    for (auto role : roles_in_scope(config.scope)) {
      ModelResult result;
      result.event = event;
      result.role = role;
      const auto name = model_name(event, role);
      const auto seed = model_seed(config.seed, event, role);
      try {
        const auto d = model_data(m, config, event, role);
        result.n_train = d.train_rows.size();
        result.n_test = d.test_rows.size();
        std::vector<Metrics> folds;
        try {
          const auto cv = cross_validate(m.names, d.train_rows, config.cv_folds, config.forest, config.averaging,
                                         derive_seed(seed, 1), config.thread_count());
          folds = cv.folds;
          result.cv_folds = cv.folds.size();
          result.cv_mean_accuracy = cv.mean_accuracy;
          result.cv_std_accuracy = cv.std_accuracy;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::TooFewSamples) throw;
          warn(name + ": cross-validation skipped: " + e.what());
        }
        const auto imputer = Imputer::fit(d.train_rows, m.names.size());
        const auto train = oversample(imputer.transform(m.names, d.train_rows), derive_seed(seed, 2));
        auto model = fit_forest(train, config.forest, derive_seed(seed, 3), config.thread_count());
        model.medians = imputer.medians;
        model.fold_scores = folds;
        result.test = evaluate(model, imputer.transform(m.names, d.test_rows), config.averaging);
        const auto file = "models/" + name + ".json";
        write_file(dir / file, model.to_json());
        files.push_back(file);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::TooFewSamples && e.kind() != ErrorKind::SingleClass) throw;
        result.skip_reason = e.what();
        warn(name + ": skipped: " + result.skip_reason);
      }
      r.models.push_back(std::move(result));
    }
  }
  auto written = render(r, ReportFormat::CsvBundle, dir);
  write_sidecar(dir, "train", r);
  written.push_back("train.json");
  written.insert(written.end(), files.begin(), files.end());
  record_stage(dir, "train", written);
}

void cmd_explain(const RunConfig& config) {
  config.validate();
  const auto dir = config.run_dir();
  require_stage(dir, "train", "explain");
  write_common(config);
  const auto m = read_features(dir);
  const auto trained = read_sidecar(dir, "train");
  AnalysisReport r;
  std::map<std::string, std::pair<std::string, json>> per_event;  // csv, json
  for (const auto& mr : trained.models) {
    if (!mr.test) continue;
    const auto name = model_name(mr.event, mr.role);
    const auto model = RandomForest::from_json(read_file(dir / "models" / (name + ".json")));
    if (model.feature_names != m.names)
      throw Error(ErrorKind::FeatureMismatch, name + " was trained on a different feature schema");
    const auto d = model_data(m, config, mr.event, mr.role);
    const Imputer imputer{model.medians};
    const auto instances = imputer.transform(m.names, d.test_rows);
    const auto background = select_background(imputer.transform(m.names, d.train_rows), config.shap_background,
                                              derive_seed(model_seed(config.seed, mr.event, mr.role), 4));
    const auto summary = shap_summary(model, instances, background, config.thread_count());

    ModelShap ms{mr.event, mr.role, instances.size(), 0, 0, summary.ranking};
    for (const auto& e : summary.explanations) {
      ms.base_value = e.base_value;
      ms.max_additivity_gap = std::max(ms.max_additivity_gap, e.additivity_gap());
    }
    r.shap.push_back(ms);

    auto& [csv, js] = per_event[mr.event];
    const auto points = shap_points_csv(summary, name);
    csv += csv.empty() ? points : points.substr(points.find('\n') + 1);
    js["event"] = mr.event;
    js["models"].push_back(json::parse(shap_ranking_json(summary, name)));
  }
  if (r.shap.empty()) r.skipped["explanations"] = "no trained models";
  std::vector<std::string> files;
  for (const auto& [event, out] : per_event) {
    write_file(dir / ("shap_" + event + ".csv"), out.first);
    write_file(dir / ("shap_" + event + ".json"), out.second.dump(1) + "\n");
    files.push_back("shap_" + event + ".csv");
    files.push_back("shap_" + event + ".json");
  }
  write_sidecar(dir, "explain", r);
  files.push_back("explain.json");
  record_stage(dir, "explain", files);
}

void cmd_report(const RunConfig& config) {
  config.validate();
  const auto dir = config.run_dir();
  require_stage(dir, "ingest", "report");
  write_common(config);
  const auto manifest = read_manifest(dir);
  AnalysisReport r;
  r.run = run_summary(config);
  for (const auto* stage : {"ingest", "compare", "train", "explain"}) {
    if (manifest.at("stages").contains(stage)) {
      r.merge(read_sidecar(dir, stage));
      continue;
    }
    const std::string reason = std::string(stage) + " stage not run";
    if (std::string_view(stage) == "compare")
      for (const auto* s : {"significance_sources", "significance_reactions", "means", "emotions"})
        r.skipped.emplace(s, reason);
    if (std::string_view(stage) == "train") r.skipped.emplace("classification", reason);
    if (std::string_view(stage) == "explain") r.skipped.emplace("explanations", reason);
  }
  auto files = render(r, ReportFormat::CsvBundle, dir);
  const auto md = render(r, ReportFormat::Markdown, dir);
  files.insert(files.end(), md.begin(), md.end());
  record_stage(dir, "report", files);
}

void cmd_all(const RunConfig& config) {
  cmd_ingest(config);
  cmd_featurize(config);
  cmd_compare(config);
  cmd_train(config);
  cmd_explain(config);
  cmd_report(config);
}

}  // namespace rumourlens
