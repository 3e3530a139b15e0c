#pragma once

#include "json.hpp"
#include "tmotif/core.hpp"
#include "tmotif/exact.hpp"
#include "tmotif/sampling.hpp"

namespace tmotif::report {

nlohmann::json histogram(const CountDurationHistogram& h);
nlohmann::json config(const SamplingConfig& cfg);
nlohmann::json estimate(const Estimate& e, const SamplingConfig& cfg);
nlohmann::json diagnosis(const Diagnosis& d, const SamplingConfig& cfg);
nlohmann::json graph_stats(const TemporalGraph& g);

}  // namespace tmotif::report
