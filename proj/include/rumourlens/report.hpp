#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rumourlens/classify.hpp"
#include "rumourlens/corpus.hpp"
#include "rumourlens/emotions.hpp"
#include "rumourlens/shap.hpp"
#include "rumourlens/stats.hpp"

namespace rumourlens {

struct ModelResult {
  std::string event;
  Role role = Role::Source;
  std::optional<Metrics> test;  // absent when the model was skipped
  std::optional<double> cv_mean_accuracy;
  std::optional<double> cv_std_accuracy;
  std::size_t cv_folds = 0;
  std::size_t n_train = 0;  // before oversampling
  std::size_t n_test = 0;
  std::string skip_reason;
};

struct ModelShap {
  std::string event;
  Role role = Role::Source;
  std::size_t instances = 0;
  double base_value = 0;
  double max_additivity_gap = 0;
  std::vector<ShapRank> ranking;
};

struct EventEmotions {
  std::string event;
  EmotionTable table;
};

// Section names used in `skipped`: partitions, significance_sources,
// significance_reactions, means, emotions, classification, explanations.
struct AnalysisReport {
  std::map<std::string, std::string> run;  // settings echoed in the header
  std::vector<PartitionCounts> partitions;
  std::vector<std::string> excluded_events;
  std::optional<SignificanceMatrix> sources;
  std::optional<SignificanceMatrix> reactions;
  std::vector<MeanRow> means;
  std::vector<EventEmotions> emotions;
  std::vector<ModelResult> models;
  std::vector<ModelShap> shap;
  std::map<std::string, std::string> skipped;

  // Copies every non-empty section of `other` into this report.
  void merge(const AnalysisReport& other);
};

std::string report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(std::string_view text);

inline constexpr std::string_view kPartitionsCsvHeader = "event,nr_src,r_src,nr_re,r_re,total";
inline constexpr std::string_view kEmotionsCsvHeader =
    "event,population,n,anger,disgust,fear,joy,neutral,sadness,surprise";

// Per-event rows plus an "aggregated" total row.
std::string partitions_csv(const std::vector<PartitionCounts>& partitions);
// Per-event cells only, or the aggregated column only.
std::string ks_csv(const std::vector<const SignificanceMatrix*>& matrices, bool aggregated);
std::string emotions_csv(const std::vector<EventEmotions>& emotions);
// Rows Acc, Pr, Rec, F1; one column per model (<event>_src / <event>_re).
std::string metrics_csv(const std::vector<ModelResult>& models);

std::string render_markdown(const AnalysisReport& report);

enum class ReportFormat { CsvBundle, Markdown };

// Writes the tables (csv-bundle) or report.md (markdown) into dir and
// returns the file names written. Throws IoError.
std::vector<std::string> render(const AnalysisReport& report, ReportFormat format, const std::filesystem::path& dir);

std::string model_name(std::string_view event, Role role);

}  // namespace rumourlens
