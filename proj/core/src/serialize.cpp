#include "rigidpoints/serialize.hpp"

#include <json.hpp>

namespace rigidpoints {

using nlohmann::json;

std::string configuration_to_json(const PointConfiguration& config, double r0,
                                  const std::optional<SampleMeta>& meta) {
  json j;
  j["r0"] = r0;
  json pts = json::array();
  for (const Complex& z : config.points()) {
    pts.push_back(json::array({z.real(), z.imag()}));
  }
  j["points"] = std::move(pts);
  if (meta) {
    j["meta"] = {{"model", meta->model},
                 {"n", meta->n},
                 {"seed", meta->seed},
                 {"stream", meta->stream},
                 {"residual", meta->residual}};
  }
  return j.dump();
}

ParsedConfiguration configuration_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.contains("r0") || !j.contains("points")) {
    throw ConfigError("configuration json: missing r0 or points");
  }
  ParsedConfiguration out;
  out.r0 = j.at("r0").get<double>();
  std::vector<Complex> pts;
  for (const auto& p : j.at("points")) {
    if (!p.is_array() || p.size() != 2) {
      throw ConfigError("configuration json: point is not an [re, im] pair");
    }
    pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
  }
  out.config = PointConfiguration(std::move(pts));
  if (j.contains("meta")) {
    const auto& m = j.at("meta");
    SampleMeta meta;
    meta.model = m.at("model").get<std::string>();
    meta.n = m.at("n").get<int>();
    meta.seed = m.at("seed").get<std::uint64_t>();
    meta.stream = m.at("stream").get<std::uint64_t>();
    meta.residual = m.at("residual").get<double>();
    out.meta = meta;
  }
  return out;
}

}  // namespace rigidpoints
