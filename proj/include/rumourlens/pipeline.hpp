#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rumourlens/config.hpp"
#include "rumourlens/emotions.hpp"
#include "rumourlens/features.hpp"

namespace rumourlens {

// Stages write into config.run_dir() and record their artifacts (with
// content hashes) in manifest.json. A stage whose prerequisite is missing
// from the manifest throws MissingArtifact.
void cmd_ingest(const RunConfig& config);
void cmd_featurize(const RunConfig& config);
void cmd_compare(const RunConfig& config);
void cmd_train(const RunConfig& config);
void cmd_explain(const RunConfig& config);
void cmd_report(const RunConfig& config);
void cmd_all(const RunConfig& config);

// Null for EmotionProviderKind::None.
std::unique_ptr<EmotionProvider> make_emotion_provider(const RunConfig& config);

// Rows of one event and role, in matrix order.
std::vector<FeatureRow> select_rows(const FeatureMatrix& matrix, std::string_view event, Role role);

// Seed of the model trained for (event, role).
std::uint64_t model_seed(std::uint64_t seed, std::string_view event, Role role);

}  // namespace rumourlens
