#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rumourlens {

enum class Role { Source, Reaction };
enum class Label { NonRumour = 0, Rumour = 1 };

std::string_view to_string(Role role);
std::string_view to_string(Label label);
Role parse_role(std::string_view s);
Label parse_label(std::string_view s);

struct Tweet {
  std::string id;
  std::string text;
  std::string event;
  Role role = Role::Source;
  Label label = Label::NonRumour;
  std::optional<std::string> parent_id;  // set iff role == Reaction
  std::optional<std::string> created_at;

  // Whitespace-only posts stay in the counts but yield all-absent features.
  bool empty_text() const;

  bool operator==(const Tweet&) const = default;
};

struct EventCorpus {
  std::string event;
  std::vector<Tweet> sources;    // sorted by id
  std::vector<Tweet> reactions;  // sorted by id
  std::string provenance;        // "pheme:<path>" or "jsonl:<path>"

  std::size_t size() const { return sources.size() + reactions.size(); }
  bool has_rumour_sources() const;

  // Content equality; provenance is ignored.
  bool same_content(const EventCorpus& other) const;
};

struct PartitionCounts {
  std::string event;
  std::size_t nr_src = 0;
  std::size_t r_src = 0;
  std::size_t nr_re = 0;
  std::size_t r_re = 0;

  std::size_t total() const { return nr_src + r_src + nr_re + r_re; }
  bool operator==(const PartitionCounts&) const = default;
};

struct Partition {
  std::vector<Tweet> r_src;
  std::vector<Tweet> nr_src;
  std::vector<Tweet> r_re;
  std::vector<Tweet> nr_re;
  PartitionCounts counts;
};

// Reads `<root>/<event>/{rumours,non-rumours}/<thread>/{source-tweets,reactions}/*.json`.
// Event names drop a trailing "-all-rnr-threads". Every reaction is attached
// to its thread's source tweet and inherits the thread label.
std::vector<EventCorpus> load_pheme_tree(const std::filesystem::path& root);

// One JSON object per line: id, text, event, role, label, parent_id
// (created_at optional). A reaction whose parent is another reaction is
// attached to that reaction's source.
std::vector<EventCorpus> load_jsonl(const std::filesystem::path& path);
void write_jsonl(const std::vector<EventCorpus>& corpora, const std::filesystem::path& path);

// Validates the EventCorpus invariants (parents resolve, labels propagated,
// ids unique). Throws Error on the first violation.
void validate(const EventCorpus& corpus);

// Re-applies label propagation from sources to reactions. Idempotent.
void propagate_labels(EventCorpus& corpus);

Partition partition(const EventCorpus& corpus);

// Concatenation of all given events under the event name "aggregated".
EventCorpus aggregate(const std::vector<EventCorpus>& corpora);

inline constexpr std::string_view kAggregatedEvent = "aggregated";

}  // namespace rumourlens
