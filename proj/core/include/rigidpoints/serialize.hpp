#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rigidpoints/geometry.hpp"

namespace rigidpoints {

// Sample provenance attached to serialized configurations.
struct SampleMeta {
  std::string model;  // "ginibre" | "gaf"
  int n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  double residual = 0.0;
};

// Wire format: {"r0": f64, "points": [[re, im], ...]} with an optional
// "meta" object. f64 values round-trip bit-exactly (shortest decimal
// encoding that parses back to the same bits).
std::string configuration_to_json(const PointConfiguration& config, double r0,
                                  const std::optional<SampleMeta>& meta = {});

struct ParsedConfiguration {
  PointConfiguration config;
  double r0 = 0.0;
  std::optional<SampleMeta> meta;
};

ParsedConfiguration configuration_from_json(const std::string& text);

}  // namespace rigidpoints
