#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "webrank/abelian.hpp"
#include "webrank/symmetry.hpp"

namespace webrank {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportFormat { Text, Json };

struct ReportEnvelope {
  std::string tool_version = kToolVersion;
  std::string subcommand;
  std::vector<std::string> arguments;
  CoefficientField mode;
  std::optional<std::uint64_t> seed;
  /// Present only when timings were requested.
  std::optional<double> elapsed_seconds;
  nlohmann::json payload = nlohmann::json::object();

  nlohmann::json to_json() const;
  static ReportEnvelope from_json(const nlohmann::json& j);
  friend bool operator==(const ReportEnvelope&, const ReportEnvelope&) = default;
};

/// Deterministic bytes: sorted keys, canonical rationals; text is a flat summary of the payload.
std::string emit_report(const ReportEnvelope& env, ReportFormat format);

nlohmann::json rank_payload(const RankReport& report);

nlohmann::json theorem1_payload(const Theorem1Report& report);

template <class F>
nlohmann::json spectrum_payload(const StructuredBasis<F>& basis, int rank);

}  // namespace webrank
