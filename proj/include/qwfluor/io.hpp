#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qwfluor/config.hpp"
#include "qwfluor/pipeline.hpp"

namespace qwf {

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const PhysParams& p);
nlohmann::json to_json(const MomentSet& m);
nlohmann::json to_json(const ObservableRow& r);
nlohmann::json to_json(const GridSpec& g);
nlohmann::json to_json(const ZeroCrossing& z);

/// One row per sweep point: observables plus the moments behind them.
void write_sweep_csv(const std::vector<ObservableRow>& rows, const std::vector<MomentSet>& moments,
                     const std::string& path);

/// Pretty-printed JSON with a trailing newline.
void write_json(const nlohmann::json& j, const std::string& path);

}  // namespace qwf
