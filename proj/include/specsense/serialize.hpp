#pragma once

#include <json.hpp>

#include "specsense/bench.hpp"
#include "specsense/edmodel.hpp"
#include "specsense/rss.hpp"
#include "specsense/types.hpp"

namespace specsense {

/// Mask as {"n": length, "mask": [[start, len], ...]} with runs of ones.
nlohmann::json mask_to_json(const ActivityMask& mask);
ActivityMask mask_from_json(const nlohmann::json& j);

/// Separation result document: mask runs, m_sec, e' curve (k = 2 upward),
/// degenerate flag.
nlohmann::json separation_result_to_json(const rss::SeparationResult& r);

/// Estimator output; non-finite snr_hat_db serializes as null.
nlohmann::json estimated_params_to_json(const edmodel::EstimatedParams& p);

/// Sweep configuration mirroring the SweepConfig field names. Unknown keys
/// are rejected. "n_grid" is accepted for timing runs and returned separately.
bench::SweepConfig sweep_config_from_json(const nlohmann::json& j);
std::vector<std::size_t> n_grid_from_json(const nlohmann::json& j);

}  // namespace specsense
