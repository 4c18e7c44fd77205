#pragma once

#include <nlohmann/json.hpp>

#include "bluesky/classify.hpp"
#include "bluesky/experiments.hpp"
#include "bluesky/itinerary.hpp"
#include "bluesky/lyapunov.hpp"

namespace bluesky {

// Non-finite reals are written as the strings "inf", "-inf" and "nan".
nlohmann::json real_to_json(double v);

nlohmann::json to_json(const ConditionReport& r);
nlohmann::json to_json(const FixedPointResult& r);
nlohmann::json to_json(const InvariantCurve& c);  // summary, no grid values
nlohmann::json to_json(const ConeCertificate& c);
nlohmann::json to_json(const AnnulusDiagnostic& d);
nlohmann::json to_json(const LyapunovSpectrum& s);
nlohmann::json to_json(const ItineraryReport& r);
nlohmann::json to_json(const Classification& c);
nlohmann::json to_json(const ScalingFit& f);

}  // namespace bluesky
