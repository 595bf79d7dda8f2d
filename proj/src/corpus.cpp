#include "rumourlens/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rumourlens {

std::string_view to_string(Role role) { return role == Role::Source ? "source" : "reaction"; }

std::string_view to_string(Label label) {
  return label == Label::Rumour ? "rumour" : "non-rumour";
}

Role parse_role(std::string_view s) {
  const auto v = to_lower_ascii(trim(s));
  if (v == "source") return Role::Source;
  if (v == "reaction" || v == "reply") return Role::Reaction;
  throw Error(ErrorKind::ParseError, "unknown role '" + std::string(s) + "'");
}

Label parse_label(std::string_view s) {
  const auto v = to_lower_ascii(trim(s));
  if (v == "rumour" || v == "rumours") return Label::Rumour;
  if (v == "non-rumour" || v == "non-rumours" || v == "nonrumour" || v == "non_rumour")
    return Label::NonRumour;
  throw Error(ErrorKind::ParseError, "unknown label '" + std::string(s) + "'");
}

bool Tweet::empty_text() const { return is_blank(text); }

bool EventCorpus::has_rumour_sources() const {
  return std::any_of(sources.begin(), sources.end(),
                     [](const Tweet& t) { return t.label == Label::Rumour; });
}

bool EventCorpus::same_content(const EventCorpus& other) const {
  return event == other.event && sources == other.sources && reactions == other.reactions;
}

namespace {

bool by_id(const Tweet& a, const Tweet& b) { return a.id < b.id; }

void sort_corpus(EventCorpus& c) {
  std::sort(c.sources.begin(), c.sources.end(), by_id);
  std::sort(c.reactions.begin(), c.reactions.end(), by_id);
}

std::optional<std::string> id_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  if (it->is_number_unsigned()) return std::to_string(it->get<unsigned long long>());
  return std::nullopt;
}

std::optional<std::string> string_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool want_dirs) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.empty() || name.front() == '.') continue;
    if (want_dirs ? entry.is_directory() : (entry.is_regular_file() && entry.path().extension() == ".json"))
      out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Tweet read_tweet_file(const fs::path& file) {
  json obj;
  try {
    obj = json::parse(read_file(file));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, file.string() + ": " + e.what());
  }
  Tweet t;
  auto id = id_field(obj, "id_str");
  if (!id) id = id_field(obj, "id");
  if (!id) throw Error(ErrorKind::MissingField, file.string() + ": no id_str");
  auto text = string_field(obj, "text");
  if (!text) text = string_field(obj, "full_text");
  if (!text) throw Error(ErrorKind::MissingField, file.string() + ": no text");
  t.id = *id;
  t.text = *text;
  t.created_at = string_field(obj, "created_at");
  return t;
}

void check_unique(const EventCorpus& c) {
  std::set<std::string> seen;
  for (const auto* list : {&c.sources, &c.reactions}) {
    for (const auto& t : *list) {
      if (!seen.insert(t.id).second)
        throw Error(ErrorKind::DuplicateId, "duplicate tweet id " + t.id + " in event " + c.event);
    }
  }
}

std::string event_name_from_dir(const fs::path& dir) {
  std::string name = dir.filename().string();
  constexpr std::string_view suffix = "-all-rnr-threads";
  if (name.size() > suffix.size() && name.ends_with(suffix)) name.resize(name.size() - suffix.size());
  return name;
}

}  // namespace

std::vector<EventCorpus> load_pheme_tree(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(ErrorKind::IoError, "not a directory: " + root.string());
  std::vector<EventCorpus> out;
  for (const auto& event_dir : sorted_entries(root, true)) {
    EventCorpus corpus;
    corpus.event = event_name_from_dir(event_dir);
    corpus.provenance = "pheme:" + event_dir.string();
    for (const auto& [folder, label] :
         {std::pair{"rumours", Label::Rumour}, std::pair{"non-rumours", Label::NonRumour}}) {
      for (const auto& thread_dir : sorted_entries(event_dir / folder, true)) {
        std::vector<Tweet> sources;
        for (const auto& f : sorted_entries(thread_dir / "source-tweets", false)) {
          Tweet t = read_tweet_file(f);
          t.event = corpus.event;
          t.role = Role::Source;
          t.label = label;
          sources.push_back(std::move(t));
        }
        const auto reaction_files = sorted_entries(thread_dir / "reactions", false);
        if (sources.empty()) {
          if (!reaction_files.empty())
            throw Error(ErrorKind::OrphanReaction, "thread without source tweet: " + thread_dir.string());
          continue;
        }
        // The thread directory is named after its source tweet.
        const std::string thread_id = thread_dir.filename().string();
        auto root_it = std::find_if(sources.begin(), sources.end(),
                                    [&](const Tweet& t) { return t.id == thread_id; });
        const std::string parent = root_it != sources.end() ? root_it->id : sources.front().id;
        for (const auto& f : reaction_files) {
          Tweet t = read_tweet_file(f);
          t.event = corpus.event;
          t.role = Role::Reaction;
          t.label = label;
          t.parent_id = parent;
          corpus.reactions.push_back(std::move(t));
        }
        for (auto& s : sources) corpus.sources.push_back(std::move(s));
      }
    }
    sort_corpus(corpus);
    check_unique(corpus);
    out.push_back(std::move(corpus));
  }
  return out;
}

std::vector<EventCorpus> load_jsonl(const fs::path& path) {
  std::istringstream in(read_file(path));
  struct Raw {
    Tweet tweet;
    bool has_label = false;
    std::size_t line = 0;
  };
  std::map<std::string, std::vector<Raw>> by_event;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorKind::ParseError, where + ": " + e.what());
    }
    if (!obj.is_object()) throw Error(ErrorKind::ParseError, where + ": expected a JSON object");
    Raw raw;
    raw.line = line_no;
    auto id = id_field(obj, "id");
    auto text = string_field(obj, "text");
    auto event = string_field(obj, "event");
    auto role = string_field(obj, "role");
    if (!id) throw Error(ErrorKind::MissingField, where + ": no id");
    if (!text) throw Error(ErrorKind::MissingField, where + ": no text");
    if (!event) throw Error(ErrorKind::MissingField, where + ": no event");
    if (!role) throw Error(ErrorKind::MissingField, where + ": no role");
    raw.tweet.id = *id;
    raw.tweet.text = *text;
    raw.tweet.event = *event;
    try {
      raw.tweet.role = parse_role(*role);
      if (auto label = string_field(obj, "label")) {
        raw.tweet.label = parse_label(*label);
        raw.has_label = true;
      }
    } catch (const Error& e) {
      throw Error(ErrorKind::ParseError, where + ": " + e.what());
    }
    raw.tweet.parent_id = id_field(obj, "parent_id");
    raw.tweet.created_at = string_field(obj, "created_at");
    if (raw.tweet.role == Role::Source) {
      if (raw.tweet.parent_id)
        throw Error(ErrorKind::ParseError, where + ": source tweet must not carry parent_id");
      if (!raw.has_label) throw Error(ErrorKind::MissingField, where + ": source tweet has no label");
    } else if (!raw.tweet.parent_id) {
      throw Error(ErrorKind::OrphanReaction, where + ": reaction " + raw.tweet.id + " has no parent_id");
    }
    by_event[raw.tweet.event].push_back(std::move(raw));
  }

  std::vector<EventCorpus> out;
  for (auto& [event, raws] : by_event) {
    EventCorpus corpus;
    corpus.event = event;
    corpus.provenance = "jsonl:" + path.string();
    std::unordered_map<std::string, const Raw*> index;
    for (const auto& r : raws) {
      if (!index.emplace(r.tweet.id, &r).second)
        throw Error(ErrorKind::DuplicateId, "duplicate tweet id " + r.tweet.id + " in event " + event);
    }
    for (const auto& r : raws) {
      if (r.tweet.role == Role::Source) {
        corpus.sources.push_back(r.tweet);
        continue;
      }
      // Walk reply chains up to the thread's source.
      const Raw* cur = &r;
      std::set<std::string> visited;
      while (cur->tweet.role == Role::Reaction) {
        if (!visited.insert(cur->tweet.id).second)
          throw Error(ErrorKind::OrphanReaction, "reply cycle at tweet " + cur->tweet.id);
        auto it = index.find(*cur->tweet.parent_id);
        if (it == index.end())
          throw Error(ErrorKind::OrphanReaction,
                      path.string() + ":" + std::to_string(r.line) + ": parent " +
                          *cur->tweet.parent_id + " not found in event " + event);
        cur = it->second;
      }
      Tweet t = r.tweet;
      t.parent_id = cur->tweet.id;
      t.label = cur->tweet.label;
      corpus.reactions.push_back(std::move(t));
    }
    sort_corpus(corpus);
    out.push_back(std::move(corpus));
  }
  return out;
}

void write_jsonl(const std::vector<EventCorpus>& corpora, const fs::path& path) {
  std::string out;
  for (const auto& c : corpora) {
    for (const auto* list : {&c.sources, &c.reactions}) {
      for (const auto& t : *list) {
        json obj;
        obj["id"] = t.id;
        obj["text"] = t.text;
        obj["event"] = t.event;
        obj["role"] = std::string(to_string(t.role));
        obj["label"] = std::string(to_string(t.label));
        obj["parent_id"] = t.parent_id ? json(*t.parent_id) : json(nullptr);
        if (t.created_at) obj["created_at"] = *t.created_at;
        out += obj.dump();
        out += '\n';
      }
    }
  }
  write_file(path, out);
}

void validate(const EventCorpus& corpus) {
  check_unique(corpus);
  std::unordered_map<std::string, const Tweet*> sources;
  for (const auto& s : corpus.sources) {
    if (s.role != Role::Source || s.parent_id)
      throw Error(ErrorKind::ParseError, "malformed source tweet " + s.id);
    sources.emplace(s.id, &s);
  }
  for (const auto& r : corpus.reactions) {
    if (r.role != Role::Reaction || !r.parent_id)
      throw Error(ErrorKind::OrphanReaction, "reaction without parent: " + r.id);
    auto it = sources.find(*r.parent_id);
    if (it == sources.end())
      throw Error(ErrorKind::OrphanReaction, "reaction " + r.id + " points at unknown source " + *r.parent_id);
    if (it->second->label != r.label)
      throw Error(ErrorKind::ParseError, "reaction " + r.id + " label differs from its source");
  }
}

void propagate_labels(EventCorpus& corpus) {
  std::unordered_map<std::string, Label> labels;
  for (const auto& s : corpus.sources) labels.emplace(s.id, s.label);
  for (auto& r : corpus.reactions) {
    if (!r.parent_id) throw Error(ErrorKind::OrphanReaction, "reaction without parent: " + r.id);
    auto it = labels.find(*r.parent_id);
    if (it == labels.end())
      throw Error(ErrorKind::OrphanReaction, "reaction " + r.id + " points at unknown source " + *r.parent_id);
    r.label = it->second;
  }
}

Partition partition(const EventCorpus& corpus) {
  Partition p;
  for (const auto& t : corpus.sources) (t.label == Label::Rumour ? p.r_src : p.nr_src).push_back(t);
  for (const auto& t : corpus.reactions) (t.label == Label::Rumour ? p.r_re : p.nr_re).push_back(t);
  p.counts = {corpus.event, p.nr_src.size(), p.r_src.size(), p.nr_re.size(), p.r_re.size()};
  return p;
}

EventCorpus aggregate(const std::vector<EventCorpus>& corpora) {
  EventCorpus out;
  out.event = std::string(kAggregatedEvent);
  out.provenance = "aggregated";
  for (const auto& c : corpora) {
    out.sources.insert(out.sources.end(), c.sources.begin(), c.sources.end());
    out.reactions.insert(out.reactions.end(), c.reactions.begin(), c.reactions.end());
  }
  return out;
}

}  // namespace rumourlens
