// Channel-by-channel evaluation of Betti curves, diagrams and Laplacian
// spectra over the critical values of a filtered complex, plus JSON and
// CSV reports.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mayer/mayer_chain.hpp"
#include "mayer/simplicial.hpp"
#include "mayer/spectral.hpp"

namespace mayer {

inline constexpr const char* kToolVersion = "0.3.1";

struct RunConfig {
  int order = 3;
  std::vector<int> stages;  // empty means 1 .. N-1
  std::vector<int> dims{0, 1};
  int max_dim = 3;
  double max_radius = kUnbounded;
  bool eigen = true;
  bool diagrams = true;
  bool keep_eigenvalues = false;
  /// Spectra at (r_i, r_{i+k}); 0 evaluates at (r, r).
  int persistence_step = 0;
  double zero_tolerance = kZeroTolerance;
  EigenMethod eigen_method = EigenMethod::Auto;
  EngineOptions engine;

  std::vector<int> resolved_stages() const;
  /// Throws std::invalid_argument on a bad combination.
  void validate() const;
};

struct SpectrumPoint {
  double a = 0.0;
  double b = 0.0;
  std::size_t order = 0;
  std::size_t zero_count = 0;
  std::optional<double> lambda1;
  double lambda_max = 0.0;
  double mean_positive = 0.0;
  std::size_t expected_zero = 0;
  std::vector<double> eigenvalues;  // only with keep_eigenvalues
};

struct ChannelReport {
  Channel channel;
  /// beta^{r_i, r_j} with j = min(i + step, m - 1).
  std::vector<std::size_t> betti;
  std::vector<SpectrumPoint> spectra;
  std::optional<PersistenceDiagram> diagram;

  /// Critical values where the harmonic count and the exact Betti number
  /// disagree.
  std::vector<std::size_t> cross_check_failures() const;
};

struct PipelineResult {
  RunConfig config;
  std::string input;
  std::vector<double> critical_values;
  std::vector<ChannelReport> channels;

  bool cross_check_ok() const;
};

/// Worker count from MAYER_THREADS, else the hardware concurrency.
unsigned thread_limit();

PipelineResult run_pipeline(const RunConfig& config, const FilteredComplex& k, const std::string& input_name);

std::string to_json(const PipelineResult& result);
/// One row per critical value: the value, then per channel the curves
/// betti [, zero_count, lambda1, lambda_max, mean_positive].
std::string to_csv(const PipelineResult& result);

}  // namespace mayer
