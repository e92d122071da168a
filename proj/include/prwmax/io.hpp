#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "json.hpp"
#include "prwmax/core_types.hpp"
#include "prwmax/limit_process.hpp"
#include "prwmax/statistics.hpp"

namespace prwmax {

// JSON has no infinities; they travel as the strings "inf" and "-inf".
nlohmann::json real_to_json(double x);
double real_from_json(const nlohmann::json& j);

/// Shortest round-trip decimal form ("inf", "-inf", "nan" for non-finite).
std::string format_real(double x);

void to_json(nlohmann::json& j, const Jump& jump);
void from_json(const nlohmann::json& j, Jump& jump);
void to_json(nlohmann::json& j, const MarkedPoint& p);
void from_json(const nlohmann::json& j, MarkedPoint& p);
void to_json(nlohmann::json& j, const TailLaw& tail);
void from_json(const nlohmann::json& j, TailLaw& tail);
void to_json(nlohmann::json& j, const KsReport& r);
void from_json(const nlohmann::json& j, KsReport& r);
void to_json(nlohmann::json& j, const LimitSample& s);

/// "time,mark" header plus one row per atom.
std::string point_measure_csv(const PointMeasure& nu);
/// Parses the output of point_measure_csv.
PointMeasure point_measure_from_csv(std::string_view text, double horizon,
                                    double truncation = 0.0);
/// "t,value": a row at t = 0 and one per jump.
std::string step_function_csv(const StepFunction& f);
/// "q,value".
std::string quantile_table_csv(std::span<const double> qs, std::span<const double> values);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace prwmax

template <>
struct nlohmann::adl_serializer<prwmax::StepFunction> {
  static void to_json(json& j, const prwmax::StepFunction& f);
  static prwmax::StepFunction from_json(const json& j);
};

template <>
struct nlohmann::adl_serializer<prwmax::PointMeasure> {
  static void to_json(json& j, const prwmax::PointMeasure& nu);
  static prwmax::PointMeasure from_json(const json& j);
};
