#include "prwmax/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace prwmax {

using nlohmann::json;

json real_to_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("expected a real number, got " + j.dump());
}

std::string format_real(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void to_json(json& j, const Jump& jump) {
  j = json{{"time", jump.time}, {"value", jump.value}};
}

void from_json(const json& j, Jump& jump) {
  jump.time = real_from_json(j.at("time"));
  jump.value = real_from_json(j.at("value"));
}

void to_json(json& j, const MarkedPoint& p) {
  j = json{{"time", p.time}, {"mark", real_to_json(p.mark)}};
}

void from_json(const json& j, MarkedPoint& p) {
  p.time = real_from_json(j.at("time"));
  p.mark = real_from_json(j.at("mark"));
}

void to_json(json& j, const TailLaw& tail) { j = json{{"c", tail.c}, {"a", tail.a}}; }

void from_json(const json& j, TailLaw& tail) {
  tail = TailLaw(j.at("c").get<double>(), j.at("a").get<double>());
}

void to_json(json& j, const KsReport& r) {
  j = json{{"statistic", r.statistic}, {"n1", r.n1}, {"n2", r.n2}, {"p_value", r.p_value}};
}

void from_json(const json& j, KsReport& r) {
  r.statistic = j.at("statistic").get<double>();
  r.n1 = j.at("n1").get<std::size_t>();
  r.n2 = j.at("n2").get<std::size_t>();
  r.p_value = j.at("p_value").get<double>();
}

void to_json(json& j, const LimitSample& s) {
  j = json{{"points", s.points},
           {"bm_values", s.bm_values},
           {"segment_maxima", s.segment_maxima},
           {"b_at_horizon", s.b_at_horizon},
           {"sup_b", s.sup_b},
           {"lower", real_to_json(s.lower)},
           {"upper", real_to_json(s.upper)},
           {"v", s.v},
           {"delta", s.delta}};
}

std::string point_measure_csv(const PointMeasure& nu) {
  std::string out = "time,mark\n";
  for (const MarkedPoint& p : nu.points()) {
    out += format_real(p.time) + ',' + format_real(p.mark) + '\n';
  }
  return out;
}

namespace {

double parse_real(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: " + std::string(s));
  }
  return x;
}

}  // namespace

PointMeasure point_measure_from_csv(std::string_view text, double horizon,
                                    double truncation) {
  std::vector<MarkedPoint> points;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad csv row: " + line);
    points.push_back({parse_real(std::string_view(line).substr(0, comma)),
                      parse_real(std::string_view(line).substr(comma + 1))});
  }
  return PointMeasure(std::move(points), horizon, truncation);
}

std::string step_function_csv(const StepFunction& f) {
  std::string out = "t,value\n0," + format_real(f.initial_value()) + '\n';
  for (const Jump& j : f.jumps()) {
    out += format_real(j.time) + ',' + format_real(j.value) + '\n';
  }
  return out;
}

std::string quantile_table_csv(std::span<const double> qs, std::span<const double> values) {
  if (qs.size() != values.size()) throw std::invalid_argument("quantile table size mismatch");
  std::string out = "q,value\n";
  for (std::size_t i = 0; i < qs.size(); ++i) {
    out += format_real(qs[i]) + ',' + format_real(values[i]) + '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

}  // namespace prwmax

void nlohmann::adl_serializer<prwmax::StepFunction>::to_json(json& j,
                                                             const prwmax::StepFunction& f) {
  j = json{{"initial_value", f.initial_value()},
           {"jumps", std::vector<prwmax::Jump>(f.jumps().begin(), f.jumps().end())},
           {"horizon", f.horizon()}};
}

prwmax::StepFunction nlohmann::adl_serializer<prwmax::StepFunction>::from_json(const json& j) {
  return prwmax::StepFunction(prwmax::real_from_json(j.at("initial_value")),
                              j.at("jumps").get<std::vector<prwmax::Jump>>(),
                              prwmax::real_from_json(j.at("horizon")));
}

void nlohmann::adl_serializer<prwmax::PointMeasure>::to_json(json& j,
                                                             const prwmax::PointMeasure& nu) {
  j = json{{"points", std::vector<prwmax::MarkedPoint>(nu.points().begin(), nu.points().end())},
           {"horizon", nu.horizon()},
           {"truncation", prwmax::real_to_json(nu.truncation())}};
}

prwmax::PointMeasure nlohmann::adl_serializer<prwmax::PointMeasure>::from_json(const json& j) {
  return prwmax::PointMeasure(j.at("points").get<std::vector<prwmax::MarkedPoint>>(),
                              prwmax::real_from_json(j.at("horizon")),
                              prwmax::real_from_json(j.at("truncation")));
}
