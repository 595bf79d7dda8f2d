#include "rumourlens/stats.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "rumourlens/corpus.hpp"
#include "rumourlens/error.hpp"
#include "rumourlens/util.hpp"

namespace rumourlens {

namespace {

std::vector<double> sorted_checked(std::span<const double> xs, const char* which) {
  if (xs.empty()) throw Error(ErrorKind::EmptySample, std::string("sample ") + which + " is empty");
  std::vector<double> v(xs.begin(), xs.end());
  for (double x : v)
    if (!std::isfinite(x)) throw Error(ErrorKind::NonFiniteValue, std::string("sample ") + which + " has a non-finite value");
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> defined(const std::vector<std::optional<double>>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values)
    if (v) out.push_back(*v);
  return out;
}

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

double kolmogorov_tail(double lambda) {
  if (lambda <= 0) return 1.0;
  double sum = 0;
  for (int k = 1;; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-12) break;
  }
  const double p = 2.0 * sum;
  if (!(p > 0)) return DBL_MIN;
  return std::min(p, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  const auto x = sorted_checked(a, "a");
  const auto y = sorted_checked(b, "b");
  const double n1 = static_cast<double>(x.size());
  const double n2 = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  // Advance past every copy of the next distinct value before comparing.
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  KsResult r;
  r.d_stat = d;
  r.n1 = x.size();
  r.n2 = y.size();
  if (d == 0) {
    r.p_value = 1.0;
    return r;
  }
  const double ne = n1 * n2 / (n1 + n2);
  const double s = std::sqrt(ne);
  r.p_value = kolmogorov_tail((s + 0.12 + 0.11 / s) * d);
  return r;
}

std::string_view to_string(PopulationPair pair) {
  return pair == PopulationPair::Sources ? "sources" : "reactions";
}

SignificanceMatrix significance_matrix(const std::vector<std::string>& features, std::vector<EventSamples> events,
                                       PopulationPair pair, double alpha, unsigned threads) {
  std::sort(events.begin(), events.end(), [](const auto& l, const auto& r) { return l.event < r.event; });
  EventSamples pooled;
  pooled.event = std::string(kAggregatedEvent);
  pooled.rumour.resize(features.size());
  pooled.nonrumour.resize(features.size());
  for (const auto& e : events) {
    if (e.rumour.size() != features.size() || e.nonrumour.size() != features.size())
      throw Error(ErrorKind::FeatureMismatch, "event " + e.event + " has the wrong number of features");
    for (std::size_t f = 0; f < features.size(); ++f) {
      pooled.rumour[f].insert(pooled.rumour[f].end(), e.rumour[f].begin(), e.rumour[f].end());
      pooled.nonrumour[f].insert(pooled.nonrumour[f].end(), e.nonrumour[f].begin(), e.nonrumour[f].end());
    }
  }
  events.push_back(std::move(pooled));

  SignificanceMatrix m;
  m.pair = pair;
  m.alpha = alpha;
  m.features = features;
  for (const auto& e : events) m.events.push_back(e.event);
  m.cells.resize(features.size() * events.size());
  parallel_for(m.cells.size(), threads, [&](std::size_t idx) {
    const std::size_t f = idx / events.size();
    const auto& e = events[idx % events.size()];
    auto& cell = m.cells[idx];
    cell.feature = features[f];
    cell.event = e.event;
    const auto r = defined(e.rumour[f]);
    const auto nr = defined(e.nonrumour[f]);
    if (!r.empty()) cell.mean_rumour = mean(r);
    if (!nr.empty()) cell.mean_nonrumour = mean(nr);
    if (r.empty() || nr.empty()) return;
    cell.ks = ks_two_sample(r, nr);
    cell.significant = cell.ks->p_value < alpha;
  });
  return m;
}

namespace {

void append_rows(std::string& out, const SignificanceMatrix& m) {
  for (const auto& c : m.cells) {
    std::vector<std::string> row{c.feature, c.event, std::string(to_string(m.pair))};
    if (c.ks) {
      row.push_back(std::to_string(c.ks->n1));
      row.push_back(std::to_string(c.ks->n2));
      row.push_back(format_double(c.ks->d_stat));
      row.push_back(format_double(c.ks->p_value));
    } else {
      row.insert(row.end(), 4, std::string());
    }
    row.push_back(opt_field(c.mean_rumour));
    row.push_back(opt_field(c.mean_nonrumour));
    row.push_back(c.ks ? (c.significant ? "true" : "false") : "");
    out += csv_row(row);
  }
}

}  // namespace

std::string to_csv(const SignificanceMatrix& matrix) { return to_csv(std::vector<const SignificanceMatrix*>{&matrix}); }

std::string to_csv(const std::vector<const SignificanceMatrix*>& matrices) {
  std::string out(kSignificanceCsvHeader);
  out += '\n';
  for (const auto* m : matrices) append_rows(out, *m);
  return out;
}

MeanStat mean_of(const std::vector<std::optional<double>>& values) {
  MeanStat s;
  const auto xs = defined(values);
  s.n = xs.size();
  s.absent = values.size() - xs.size();
  if (!xs.empty()) s.mean = mean(xs);
  return s;
}

std::vector<MeanRow> mean_report(const std::vector<std::string>& features, const std::vector<PopulationValues>& events) {
  std::vector<const PopulationValues*> order;
  for (const auto& e : events) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](auto* l, auto* r) { return l->event < r->event; });

  std::array<std::vector<std::vector<std::optional<double>>>, 4> pooled;
  for (auto& p : pooled) p.resize(features.size());
  for (const auto* e : order)
    for (std::size_t p = 0; p < 4; ++p) {
      if (e->values[p].size() != features.size())
        throw Error(ErrorKind::FeatureMismatch, "event " + e->event + " has the wrong number of features");
      for (std::size_t f = 0; f < features.size(); ++f)
        pooled[p][f].insert(pooled[p][f].end(), e->values[p][f].begin(), e->values[p][f].end());
    }

  std::vector<MeanRow> rows;
  for (std::size_t f = 0; f < features.size(); ++f) {
    for (const auto* e : order) {
      MeanRow row{features[f], e->event, {}};
      for (std::size_t p = 0; p < 4; ++p) row.populations[p] = mean_of(e->values[p][f]);
      rows.push_back(std::move(row));
    }
    MeanRow agg{features[f], std::string(kAggregatedEvent), {}};
    for (std::size_t p = 0; p < 4; ++p) agg.populations[p] = mean_of(pooled[p][f]);
    rows.push_back(std::move(agg));
  }
  return rows;
}

std::string to_csv(const std::vector<MeanRow>& rows) {
  std::string out(kMeansCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    std::vector<std::string> fields{r.feature, r.event};
    for (const auto& p : r.populations) fields.push_back(opt_field(p.mean));
    for (const auto& p : r.populations) fields.push_back(std::to_string(p.n));
    for (const auto& p : r.populations) fields.push_back(std::to_string(p.absent));
    out += csv_row(fields);
  }
  return out;
}

}  // namespace rumourlens
