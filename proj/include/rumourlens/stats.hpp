#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rumourlens {

struct KsResult {
  double d_stat = 0;
  double p_value = 1;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

// Two-sample KS with the asymptotic Kolmogorov p-value.
// Throws EmptySample / NonFiniteValue.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Two-sided Kolmogorov tail probability P(K > lambda), clamped to (0, 1].
double kolmogorov_tail(double lambda);

enum class PopulationPair { Sources, Reactions };
std::string_view to_string(PopulationPair pair);

// Per-event samples for one population pair. Values are indexed
// [feature][row]; absent values are skipped.
struct EventSamples {
  std::string event;
  std::vector<std::vector<std::optional<double>>> rumour;
  std::vector<std::vector<std::optional<double>>> nonrumour;
};

struct SignificanceCell {
  std::string feature;
  std::string event;
  std::optional<KsResult> ks;  // absent when either side has no values
  std::optional<double> mean_rumour;
  std::optional<double> mean_nonrumour;
  bool significant = false;
};

struct SignificanceMatrix {
  PopulationPair pair = PopulationPair::Sources;
  double alpha = 0.05;
  std::vector<std::string> features;
  std::vector<std::string> events;  // sorted, then "aggregated"
  std::vector<SignificanceCell> cells;  // row-major: feature, then event

  const SignificanceCell& at(std::size_t feature, std::size_t event) const {
    return cells[feature * events.size() + event];
  }
};

SignificanceMatrix significance_matrix(const std::vector<std::string>& features, std::vector<EventSamples> events,
                                       PopulationPair pair, double alpha, unsigned threads = 1);

inline constexpr std::string_view kSignificanceCsvHeader =
    "feature,event,population_pair,n1,n2,d_stat,p_value,mean_rumour,mean_nonrumour,significant";
// Absent cells keep their row with empty statistics.
std::string to_csv(const SignificanceMatrix& matrix);
// Concatenation of several matrices under one header.
std::string to_csv(const std::vector<const SignificanceMatrix*>& matrices);

struct MeanStat {
  std::optional<double> mean;
  std::size_t n = 0;       // defined values
  std::size_t absent = 0;  // skipped values
};

MeanStat mean_of(const std::vector<std::optional<double>>& values);

// Means for r_src, nr_src, r_re, nr_re.
struct MeanRow {
  std::string feature;
  std::string event;
  std::array<MeanStat, 4> populations;
};

struct PopulationValues {
  std::string event;
  // [population][feature][row], population order r_src, nr_src, r_re, nr_re.
  std::array<std::vector<std::vector<std::optional<double>>>, 4> values;
};

std::vector<MeanRow> mean_report(const std::vector<std::string>& features, const std::vector<PopulationValues>& events);

inline constexpr std::string_view kMeansCsvHeader =
    "feature,event,mean_r_src,mean_nr_src,mean_r_re,mean_nr_re,n_r_src,n_nr_src,n_r_re,n_nr_re,"
    "absent_r_src,absent_nr_src,absent_r_re,absent_nr_re";
std::string to_csv(const std::vector<MeanRow>& rows);

}  // namespace rumourlens
