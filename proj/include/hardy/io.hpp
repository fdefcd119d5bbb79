#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "hardy/boundary_data.hpp"
#include "hardy/holo.hpp"
#include "hardy/mc_solver.hpp"
#include "hardy/metric.hpp"

namespace hardy {

using json = nlohmann::json;

cplx complex_from_json(const json& j, const std::string& what);
json complex_to_json(cplx z);

// {"outer": {"center": [re, im], "radius": r}, "holes": [...], "margin": m}
CircleDomain domain_from_json(const json& j);
json domain_to_json(const CircleDomain& domain);

// {"modes": N, "cutoff": M, "tol_in": t, "inversion": "direct" | "normal_equations",
//  "max_condition": c, "threads": n}; every key optional.
SolverConfig config_from_json(const json& j, SolverConfig base = {});
json config_to_json(const SolverConfig& config);

// {"components": [{"modes": {"k": [re, im], ...}} | {"samples": [[re, im], ...]}, ...]}
// Sample lists must have a power-of-two length.
BoundaryFunction data_from_json(const json& j, const CircleDomain& domain, int cutoff);
json data_to_json(const BoundaryFunction& f);

json holo_to_json(const HoloFunction& f);
HoloFunction holo_from_json(const json& j);

std::vector<cplx> grid_from_json(const json& j);
json metric_to_json(const std::vector<MetricSample>& samples);
std::string metric_to_csv(const std::vector<MetricSample>& samples);

json diagnostics_to_json(const SolverOperator& solver);
json report_to_json(const ResidualReport& report);
json matrix_to_json(const Matrix& m);

}  // namespace hardy
