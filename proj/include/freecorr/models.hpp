#pragma once

// Named inputs: series for the engine, K-function data for the reconstructor,
// closed-form catalog entries and sampleable ensembles where they exist.

#include <optional>
#include <string>
#include <vector>

#include "freecorr/measures.hpp"
#include "freecorr/momentengine.hpp"
#include "freecorr/rmtmc.hpp"

namespace freecorr {

struct Model {
  std::string name;
  Params params;  // with defaults filled in
  AsymptoticInput input;
  std::optional<KFunction> kfunction;  // first correction; switch mode for the limit
  std::string catalog_lln, catalog_correction;
  Params catalog_params;
  std::string functional;  // second-order functional, if any
  std::optional<EnsembleSpec> ensemble;
};

struct ModelInfo {
  std::string name;
  Side side = Side::hc;
  Params defaults;
  std::string description;
};

std::vector<ModelInfo> model_catalog();

// Series truncated for moments up to K and corrections up to the model's order.
Model build_model(const std::string& name, const Params& params, int K);

}  // namespace freecorr
