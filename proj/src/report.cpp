#include "rumourlens/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

using nlohmann::json;

namespace rumourlens {

std::string model_name(std::string_view event, Role role) {
  return std::string(event) + (role == Role::Source ? "_src" : "_re");
}

void AnalysisReport::merge(const AnalysisReport& o) {
  for (const auto& [k, v] : o.run) run[k] = v;
  if (!o.partitions.empty()) partitions = o.partitions;
  if (!o.excluded_events.empty()) excluded_events = o.excluded_events;
  if (o.sources) sources = o.sources;
  if (o.reactions) reactions = o.reactions;
  if (!o.means.empty()) means = o.means;
  if (!o.emotions.empty()) emotions = o.emotions;
  if (!o.models.empty()) models = o.models;
  if (!o.shap.empty()) shap = o.shap;
  for (const auto& [k, v] : o.skipped) skipped[k] = v;
}

// ---------------------------------------------------------------------------
// json

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json matrix_json(const SignificanceMatrix& m) {
  json cells = json::array();
  for (const auto& c : m.cells) {
    json cell{{"feature", c.feature},
              {"event", c.event},
              {"mean_rumour", opt(c.mean_rumour)},
              {"mean_nonrumour", opt(c.mean_nonrumour)},
              {"significant", c.significant}};
    cell["ks"] = c.ks ? json{{"d", c.ks->d_stat}, {"p", c.ks->p_value}, {"n1", c.ks->n1}, {"n2", c.ks->n2}}
                      : json(nullptr);
    cells.push_back(cell);
  }
  return json{{"pair", to_string(m.pair)}, {"alpha", m.alpha}, {"features", m.features},
              {"events", m.events},         {"cells", cells}};
}

SignificanceMatrix matrix_from(const json& j) {
  SignificanceMatrix m;
  m.pair = j.at("pair").get<std::string>() == "sources" ? PopulationPair::Sources : PopulationPair::Reactions;
  m.alpha = j.at("alpha").get<double>();
  m.features = j.at("features").get<std::vector<std::string>>();
  m.events = j.at("events").get<std::vector<std::string>>();
  for (const auto& c : j.at("cells")) {
    SignificanceCell cell;
    cell.feature = c.at("feature").get<std::string>();
    cell.event = c.at("event").get<std::string>();
    cell.mean_rumour = opt_from(c.at("mean_rumour"));
    cell.mean_nonrumour = opt_from(c.at("mean_nonrumour"));
    cell.significant = c.at("significant").get<bool>();
    if (!c.at("ks").is_null()) {
      const auto& k = c.at("ks");
      cell.ks = KsResult{k.at("d").get<double>(), k.at("p").get<double>(), k.at("n1").get<std::size_t>(),
                         k.at("n2").get<std::size_t>()};
    }
    m.cells.push_back(std::move(cell));
  }
  if (m.cells.size() != m.features.size() * m.events.size())
    throw Error(ErrorKind::ParseError, "significance matrix is not a complete grid");
  return m;
}

json metrics_json(const Metrics& m) {
  return json{{"accuracy", m.accuracy},
              {"precision", m.precision},
              {"recall", m.recall},
              {"f1", m.f1},
              {"confusion", {{m.confusion.m[0][0], m.confusion.m[0][1]}, {m.confusion.m[1][0], m.confusion.m[1][1]}}}};
}

Metrics metrics_from(const json& j) {
  Metrics m;
  m.accuracy = j.at("accuracy").get<double>();
  m.precision = j.at("precision").get<double>();
  m.recall = j.at("recall").get<double>();
  m.f1 = j.at("f1").get<double>();
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t p = 0; p < 2; ++p) m.confusion.m[a][p] = j.at("confusion").at(a).at(p).get<std::size_t>();
  return m;
}

}  // namespace

std::string report_to_json(const AnalysisReport& r) {
  json j;
  j["run"] = r.run;
  j["partitions"] = json::array();
  for (const auto& p : r.partitions)
    j["partitions"].push_back(
        {{"event", p.event}, {"nr_src", p.nr_src}, {"r_src", p.r_src}, {"nr_re", p.nr_re}, {"r_re", p.r_re}});
  j["excluded_events"] = r.excluded_events;
  j["sources"] = r.sources ? matrix_json(*r.sources) : json(nullptr);
  j["reactions"] = r.reactions ? matrix_json(*r.reactions) : json(nullptr);
  j["means"] = json::array();
  for (const auto& m : r.means) {
    json pops = json::array();
    for (const auto& p : m.populations) pops.push_back({{"mean", opt(p.mean)}, {"n", p.n}, {"absent", p.absent}});
    j["means"].push_back({{"feature", m.feature}, {"event", m.event}, {"populations", pops}});
  }
  j["emotions"] = json::array();
  for (const auto& e : r.emotions) {
    json cols = json::array();
    for (std::size_t p = 0; p < 4; ++p)
      cols.push_back({{"n", e.table.n[p]},
                      {"percent", e.table.percent[p] ? json(*e.table.percent[p]) : json(nullptr)}});
    j["emotions"].push_back({{"event", e.event}, {"columns", cols}});
  }
  j["models"] = json::array();
  for (const auto& m : r.models) {
    j["models"].push_back({{"event", m.event},
                           {"role", to_string(m.role)},
                           {"test", m.test ? metrics_json(*m.test) : json(nullptr)},
                           {"cv_mean_accuracy", opt(m.cv_mean_accuracy)},
                           {"cv_std_accuracy", opt(m.cv_std_accuracy)},
                           {"cv_folds", m.cv_folds},
                           {"n_train", m.n_train},
                           {"n_test", m.n_test},
                           {"skip_reason", m.skip_reason}});
  }
  j["shap"] = json::array();
  for (const auto& s : r.shap) {
    json ranking = json::array();
    for (const auto& k : s.ranking)
      ranking.push_back(
          {{"feature", k.feature}, {"mean_abs_phi", k.mean_abs_phi}, {"rank", k.rank}, {"impact", k.impact}});
    j["shap"].push_back({{"event", s.event},
                         {"role", to_string(s.role)},
                         {"instances", s.instances},
                         {"base_value", s.base_value},
                         {"max_additivity_gap", s.max_additivity_gap},
                         {"ranking", ranking}});
  }
  j["skipped"] = r.skipped;
  return j.dump(1) + "\n";
}

AnalysisReport report_from_json(std::string_view text) {
  AnalysisReport r;
  try {
    const auto j = json::parse(text);
    r.run = j.at("run").get<std::map<std::string, std::string>>();
    for (const auto& p : j.at("partitions"))
      r.partitions.push_back(PartitionCounts{p.at("event").get<std::string>(), p.at("nr_src").get<std::size_t>(),
                                             p.at("r_src").get<std::size_t>(), p.at("nr_re").get<std::size_t>(),
                                             p.at("r_re").get<std::size_t>()});
    r.excluded_events = j.at("excluded_events").get<std::vector<std::string>>();
    if (!j.at("sources").is_null()) r.sources = matrix_from(j.at("sources"));
    if (!j.at("reactions").is_null()) r.reactions = matrix_from(j.at("reactions"));
    for (const auto& m : j.at("means")) {
      MeanRow row{m.at("feature").get<std::string>(), m.at("event").get<std::string>(), {}};
      for (std::size_t p = 0; p < 4; ++p) {
        const auto& pj = m.at("populations").at(p);
        row.populations[p] = MeanStat{opt_from(pj.at("mean")), pj.at("n").get<std::size_t>(),
                                      pj.at("absent").get<std::size_t>()};
      }
      r.means.push_back(std::move(row));
    }
    for (const auto& e : j.at("emotions")) {
      EventEmotions ee{e.at("event").get<std::string>(), {}};
      for (std::size_t p = 0; p < 4; ++p) {
        const auto& c = e.at("columns").at(p);
        ee.table.n[p] = c.at("n").get<std::size_t>();
        if (!c.at("percent").is_null())
          ee.table.percent[p] = c.at("percent").get<std::array<double, kEmotionCount>>();
      }
      r.emotions.push_back(std::move(ee));
    }
    for (const auto& m : j.at("models")) {
      ModelResult mr;
      mr.event = m.at("event").get<std::string>();
      mr.role = parse_role(m.at("role").get<std::string>());
      if (!m.at("test").is_null()) mr.test = metrics_from(m.at("test"));
      mr.cv_mean_accuracy = opt_from(m.at("cv_mean_accuracy"));
      mr.cv_std_accuracy = opt_from(m.at("cv_std_accuracy"));
      mr.cv_folds = m.at("cv_folds").get<std::size_t>();
      mr.n_train = m.at("n_train").get<std::size_t>();
      mr.n_test = m.at("n_test").get<std::size_t>();
      mr.skip_reason = m.at("skip_reason").get<std::string>();
      r.models.push_back(std::move(mr));
    }
    for (const auto& s : j.at("shap")) {
      ModelShap ms;
      ms.event = s.at("event").get<std::string>();
      ms.role = parse_role(s.at("role").get<std::string>());
      ms.instances = s.at("instances").get<std::size_t>();
      ms.base_value = s.at("base_value").get<double>();
      ms.max_additivity_gap = s.at("max_additivity_gap").get<double>();
      for (const auto& k : s.at("ranking"))
        ms.ranking.push_back(ShapRank{k.at("feature").get<std::string>(), k.at("mean_abs_phi").get<double>(),
                                      k.at("rank").get<std::size_t>(), k.at("impact").get<int>()});
      r.shap.push_back(std::move(ms));
    }
    r.skipped = j.at("skipped").get<std::map<std::string, std::string>>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("report JSON: ") + e.what());
  }
  return r;
}

// ---------------------------------------------------------------------------
// csv

std::string partitions_csv(const std::vector<PartitionCounts>& partitions) {
  std::string out(kPartitionsCsvHeader);
  out += '\n';
  PartitionCounts total{std::string(kAggregatedEvent)};
  for (const auto& p : partitions) {
    out += csv_row({p.event, std::to_string(p.nr_src), std::to_string(p.r_src), std::to_string(p.nr_re),
                    std::to_string(p.r_re), std::to_string(p.total())});
    total.nr_src += p.nr_src;
    total.r_src += p.r_src;
    total.nr_re += p.nr_re;
    total.r_re += p.r_re;
  }
  out += csv_row({total.event, std::to_string(total.nr_src), std::to_string(total.r_src),
                  std::to_string(total.nr_re), std::to_string(total.r_re), std::to_string(total.total())});
  return out;
}

std::string ks_csv(const std::vector<const SignificanceMatrix*>& matrices, bool aggregated) {
  std::vector<SignificanceMatrix> filtered;
  for (const auto* m : matrices) {
    SignificanceMatrix f = *m;
    f.cells.clear();
    for (const auto& c : m->cells)
      if ((c.event == kAggregatedEvent) == aggregated) f.cells.push_back(c);
    filtered.push_back(std::move(f));
  }
  std::vector<const SignificanceMatrix*> ptrs;
  for (const auto& f : filtered) ptrs.push_back(&f);
  return to_csv(ptrs);
}

std::string emotions_csv(const std::vector<EventEmotions>& emotions) {
  std::string out(kEmotionsCsvHeader);
  out += '\n';
  for (const auto& e : emotions)
    for (std::size_t p = 0; p < 4; ++p) {
      std::vector<std::string> row{e.event, std::string(kPopulationNames[p]), std::to_string(e.table.n[p])};
      for (std::size_t k = 0; k < kEmotionCount; ++k)
        row.push_back(e.table.percent[p] ? format_double((*e.table.percent[p])[k]) : "");
      out += csv_row(row);
    }
  return out;
}

std::string metrics_csv(const std::vector<ModelResult>& models) {
  std::vector<std::string> header{"metric"};
  for (const auto& m : models) header.push_back(model_name(m.event, m.role));
  std::string out = csv_row(header);
  const std::array<std::pair<const char*, double Metrics::*>, 4> rows = {
      {{"Acc", &Metrics::accuracy}, {"Pr", &Metrics::precision}, {"Rec", &Metrics::recall}, {"F1", &Metrics::f1}}};
  for (const auto& [name, field] : rows) {
    std::vector<std::string> row{name};
    for (const auto& m : models) row.push_back(m.test ? format_double((*m.test).*field) : "");
    out += csv_row(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// markdown

namespace {

std::string fixed(double v, int digits = 3) { return format_fixed(v, digits); }

std::string sig3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string opt_fixed(const std::optional<double>& v, int digits = 3) { return v ? fixed(*v, digits) : "n/a"; }

void skipped_line(std::string& out, const AnalysisReport& r, const std::string& section) {
  const auto it = r.skipped.find(section);
  out += "_skipped: " + (it == r.skipped.end() ? std::string("stage not run") : it->second) + "_\n\n";
}

void table_row(std::string& out, const std::vector<std::string>& cells) {
  out += "|";
  for (const auto& c : cells) out += " " + c + " |";
  out += "\n";
}

void table_head(std::string& out, const std::vector<std::string>& cells) {
  table_row(out, cells);
  out += "|";
  for (std::size_t i = 0; i < cells.size(); ++i) out += i == 0 ? " :-- |" : " --: |";
  out += "\n";
}

void significance_section(std::string& out, const SignificanceMatrix& m) {
  std::vector<std::string> head{"Feature"};
  head.insert(head.end(), m.events.begin(), m.events.end());
  table_head(out, head);
  for (std::size_t f = 0; f < m.features.size(); ++f) {
    std::vector<std::string> row{m.features[f]};
    for (std::size_t e = 0; e < m.events.size(); ++e) {
      const auto& c = m.at(f, e);
      row.push_back(c.ks ? sig3(c.ks->p_value) + (c.significant ? " ✓" : " ✗") : "n/a");
    }
    table_row(out, row);
  }
  std::size_t sig = 0, defined = 0;
  for (const auto& c : m.cells)
    if (c.ks) {
      ++defined;
      sig += c.significant ? 1 : 0;
    }
  out += "\n" + std::to_string(sig) + " of " + std::to_string(defined) + " defined cells significant.\n\n";
}

}  // namespace

std::string render_markdown(const AnalysisReport& r) {
  std::string out = "# Rumour analysis report\n\n";
  if (!r.run.empty()) {
    table_head(out, {"Setting", "Value"});
    for (const auto& [k, v] : r.run) table_row(out, {k, v.empty() ? "(none)" : v});
    out += "\n";
  }

  out += "## Data distribution\n\n";
  if (r.partitions.empty()) {
    skipped_line(out, r, "partitions");
  } else {
    table_head(out, {"Event", "NR src", "R src", "NR re", "R re", "Total"});
    PartitionCounts total{"**total**"};
    for (const auto& p : r.partitions) {
      table_row(out, {p.event, std::to_string(p.nr_src), std::to_string(p.r_src), std::to_string(p.nr_re),
                      std::to_string(p.r_re), std::to_string(p.total())});
      total.nr_src += p.nr_src;
      total.r_src += p.r_src;
      total.nr_re += p.nr_re;
      total.r_re += p.r_re;
    }
    table_row(out, {total.event, std::to_string(total.nr_src), std::to_string(total.r_src),
                    std::to_string(total.nr_re), std::to_string(total.r_re), std::to_string(total.total())});
    out += "\n";
    if (!r.excluded_events.empty()) {
      out += "Excluded from comparison and training (no rumour sources):";
      for (const auto& e : r.excluded_events) out += " " + e;
      out += "\n\n";
    }
  }

  const auto alpha = r.sources ? r.sources->alpha : r.reactions ? r.reactions->alpha : 0.05;
  out += "## Significance: rumour vs non-rumour sources\n\n";
  if (r.sources) {
    out += "KS p-values; ✓ marks p < " + format_double(alpha) + ".\n\n";
    significance_section(out, *r.sources);
  } else {
    skipped_line(out, r, "significance_sources");
  }
  out += "## Significance: rumour vs non-rumour reactions\n\n";
  if (r.reactions) {
    out += "KS p-values; ✓ marks p < " + format_double(alpha) + ".\n\n";
    significance_section(out, *r.reactions);
  } else {
    skipped_line(out, r, "significance_reactions");
  }

  out += "## Means (all events pooled)\n\n";
  if (r.means.empty()) {
    skipped_line(out, r, "means");
  } else {
    table_head(out, {"Feature", "R src", "NR src", "R re", "NR re"});
    for (const auto& m : r.means) {
      if (m.event != kAggregatedEvent) continue;
      table_row(out, {m.feature, opt_fixed(m.populations[0].mean), opt_fixed(m.populations[1].mean),
                      opt_fixed(m.populations[2].mean), opt_fixed(m.populations[3].mean)});
    }
    out += "\n";
  }

  out += "## Emotions (share of tweets by top emotion, %)\n\n";
  const auto agg = std::find_if(r.emotions.begin(), r.emotions.end(),
                                [](const auto& e) { return e.event == kAggregatedEvent; });
  if (agg == r.emotions.end()) {
    skipped_line(out, r, "emotions");
  } else {
    table_head(out, {"Emotion", "R src", "NR src", "R re", "NR re"});
    for (std::size_t k = 0; k < kEmotionCount; ++k) {
      std::vector<std::string> row{std::string(kEmotionLabels[k])};
      for (std::size_t p = 0; p < 4; ++p)
        row.push_back(agg->table.percent[p] ? fixed((*agg->table.percent[p])[k], 2) : "n/a");
      table_row(out, row);
    }
    std::vector<std::string> n_row{"n"};
    for (std::size_t p = 0; p < 4; ++p) n_row.push_back(std::to_string(agg->table.n[p]));
    table_row(out, n_row);
    out += "\n";
  }

  out += "## Classification (random forest, held-out test split)\n\n";
  if (r.models.empty()) {
    skipped_line(out, r, "classification");
  } else {
    std::vector<std::string> head{"Metric"};
    for (const auto& m : r.models) head.push_back(model_name(m.event, m.role));
    table_head(out, head);
    const std::array<std::pair<const char*, double Metrics::*>, 4> rows = {
        {{"Acc", &Metrics::accuracy}, {"Pr", &Metrics::precision}, {"Rec", &Metrics::recall}, {"F1", &Metrics::f1}}};
    for (const auto& [name, field] : rows) {
      std::vector<std::string> row{name};
      for (const auto& m : r.models) row.push_back(m.test ? fixed((*m.test).*field, 2) : "n/a");
      table_row(out, row);
    }
    out += "\n";
    for (const auto& m : r.models) {
      const auto name = model_name(m.event, m.role);
      if (!m.test) {
        out += "- " + name + ": skipped: " + m.skip_reason + "\n";
        continue;
      }
      out += "- " + name + ": train " + std::to_string(m.n_train) + ", test " + std::to_string(m.n_test);
      if (m.cv_mean_accuracy)
        out += ", " + std::to_string(m.cv_folds) + "-fold CV accuracy " + fixed(*m.cv_mean_accuracy) + " ± " +
               fixed(m.cv_std_accuracy.value_or(0));
      out += "\n";
    }
    out += "\n";
  }

  out += "## Feature attributions (mean |SHAP| on the rumour probability)\n\n";
  if (r.shap.empty()) {
    skipped_line(out, r, "explanations");
  } else {
    for (const auto& s : r.shap) {
      out += "### " + model_name(s.event, s.role) + "\n\n";
      out += std::to_string(s.instances) + " test instances, base value " + fixed(s.base_value, 4) + ".\n\n";
      table_head(out, {"Rank", "Feature", "Mean \\|phi\\|", "Impact"});
      for (const auto& k : s.ranking) {
        if (k.rank > 10) break;
        table_row(out, {std::to_string(k.rank), k.feature, fixed(k.mean_abs_phi, 4),
                        k.impact > 0 ? "+" : k.impact < 0 ? "−" : "·"});
      }
      out += "\n";
    }
  }
  return out;
}

std::vector<std::string> render(const AnalysisReport& r, ReportFormat format, const std::filesystem::path& dir) {
  std::vector<std::string> written;
  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back(name);
  };
  if (format == ReportFormat::Markdown) {
    emit("report.md", render_markdown(r));
    return written;
  }
  if (!r.partitions.empty()) emit("partitions.csv", partitions_csv(r.partitions));
  if (r.sources || r.reactions) {
    std::vector<const SignificanceMatrix*> both;
    if (r.sources) {
      emit("ks_sources.csv", ks_csv({&*r.sources}, false));
      both.push_back(&*r.sources);
    }
    if (r.reactions) {
      emit("ks_reactions.csv", ks_csv({&*r.reactions}, false));
      both.push_back(&*r.reactions);
    }
    emit("ks_aggregated.csv", ks_csv(both, true));
  }
  if (!r.means.empty()) emit("means.csv", to_csv(r.means));
  if (!r.emotions.empty()) emit("emotions.csv", emotions_csv(r.emotions));
  if (!r.models.empty()) emit("metrics.csv", metrics_csv(r.models));
  return written;
}

}  // namespace rumourlens
