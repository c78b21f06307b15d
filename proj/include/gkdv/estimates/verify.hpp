#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkdv/estimates/counterexample.hpp"
#include "gkdv/estimates/estimate_spec.hpp"
#include "gkdv/estimates/lip_norm.hpp"

namespace gkdv {

struct RefinementEntry {
  std::string label;
  std::size_t points = 0;
  std::size_t time_samples = 0;
  double t_end = 0.0;
  std::size_t ensemble = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  bool all_finite = true;
};

struct RatioSample {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct EstimateReport {
  /// The spec with defaulted parameters filled in.
  EstimateSpec spec;
  std::string id;
  nlohmann::json params;
  std::size_t time_samples = 0;
  std::vector<RatioSample> samples;
  /// Empirical constant: the largest observed left/right ratio.
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  bool all_finite = true;
  /// Base run first, then the 2N / doubled-ensemble / doubled-interval runs.
  std::vector<RefinementEntry> refinement;
  double grid_drift = 0.0;
  double ensemble_drift = 0.0;
  /// max_ratio on [0, 2T] over max_ratio on [0, T] (inhomogeneous and chain-rule estimates).
  std::optional<double> interval_growth;
  /// max over samples of |ratio(10 u) - ratio(u)| / ratio(u).
  double homogeneity_defect = 0.0;
  std::optional<CounterexampleTable> table;
  std::optional<LipNormEstimate> lip_norm;
  double wall_seconds = 0.0;
};

/// Ensemble datum: random_band_limited on the base grid (band N/8, decay
/// 0.6 / 1.0 / 1.6 cycling with the index), multiplied by exp(-x^2 / (2 (L/8)^2)),
/// mean removed and normalised to unit L^2 norm.
SpectralField estimate_datum(const Grid1D& base, std::uint64_t seed, std::size_t index);

/// One ratio of the estimate (resolved parameters) for ensemble member `index`,
/// evaluated on a grid with the base half-length and `points` points and
/// `time_samples` intervals on [0, t_end]. Data are scaled by `amplitude`.
RatioSample evaluate_sample(const EstimateKind& resolved, const Grid1D& base, std::size_t points, double t_end,
                            std::size_t time_samples, std::uint64_t seed, std::size_t index,
                            double amplitude = 1.0);

/// Runs the ensemble, the refinement trace and the homogeneity check.
/// Throws std::invalid_argument when a hypothesis of the estimate fails.
EstimateReport verify(const EstimateSpec& spec);

/// JSON document {id, params, seed, N, L, M, T, ensemble, max_ratio, mean_ratio,
/// refinement, ...}. Wall time is left out so identical inputs give identical bytes.
nlohmann::json report_json(const EstimateReport& report);
/// Per-sample ratios (or the counterexample table) as CSV.
std::string report_csv(const EstimateReport& report);

}  // namespace gkdv
