#include "loewner/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

namespace loewner {

namespace {

using nlohmann::json;

constexpr double kCounterexampleAngles[] = {3.180, 3.185, 3.189, 3.195, 3.203, 3.212, 3.224,
                              3.241, 3.268, 3.315, 3.536, 3.835, 2.770, 2.686,
                              2.600, 2.306, 3.000, 3.039, 3.062, 3.078};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<double> angles_from(const json& arr) {
  if (!arr.is_array()) throw std::invalid_argument("angles_rad must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw std::invalid_argument("angles_rad entries must be numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

StepDriver driver_from_object(const json& doc) {
  if (doc.contains("stages")) {
    const auto& stages = doc.at("stages");
    if (!stages.is_array() || stages.empty()) {
      throw std::invalid_argument("trace has no stages");
    }
    return StepDriver(angles_from(stages.back().at("angles_rad")));
  }
  if (!doc.contains("angles_rad")) throw std::invalid_argument("missing angles_rad");
  std::vector<double> angles = angles_from(doc.at("angles_rad"));
  if (doc.contains("m")) {
    const auto& m = doc.at("m");
    if (!m.is_number_integer() || m.get<long long>() != static_cast<long long>(angles.size())) {
      throw std::invalid_argument("m does not match the number of angles");
    }
  }
  return StepDriver(std::move(angles));
}

StepDriver parse_csv(std::string_view text) {
  std::vector<double> angles;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    // first field only; trailing commas are tolerated
    line = trim(line.substr(0, line.find(',')));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      if (angles.empty() && line_no == 1) continue;  // header
      throw std::invalid_argument("line " + std::to_string(line_no) + ": not a number");
    }
    angles.push_back(v);
  }
  return StepDriver(std::move(angles));
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

}  // namespace

StepDriver parse_angles(std::string_view text) {
  const std::string_view body = trim(text);
  if (body.empty()) throw std::invalid_argument("angle input is empty");
  if (body.front() == '{') {
    json doc;
    try {
      doc = json::parse(body);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("invalid angle JSON: ") + e.what());
    }
    try {
      return driver_from_object(doc);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("invalid angle JSON: ") + e.what());
    }
  }
  return parse_csv(body);
}

StepDriver read_angles(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_angles(buf.str());
}

std::string angles_to_json(const StepDriver& d) {
  json doc;
  doc["m"] = d.m();
  doc["angles_rad"] = std::vector<double>(d.angles().begin(), d.angles().end());
  return doc.dump(2) + "\n";
}

std::string angles_to_csv(const StepDriver& d) {
  std::string out;
  for (double a : d.angles()) out += format_double(a) + "\n";
  return out;
}

std::string trace_to_json(std::string_view functional, std::uint64_t seed,
                          const RefinementTrace& trace) {
  json doc;
  doc["functional"] = functional;
  doc["seed"] = seed;
  doc["stages"] = json::array();
  for (const auto& stage : trace.stages) {
    const auto& r = stage.result;
    doc["stages"].push_back({{"m", stage.m},
                             {"value", r.value},
                             {"angles_rad", std::vector<double>(r.driver.angles().begin(),
                                                                r.driver.angles().end())},
                             {"iterations", r.iterations},
                             {"converged", r.converged}});
  }
  return doc.dump(2) + "\n";
}

std::string trace_to_csv(const RefinementTrace& trace) {
  std::string out = "m,value,iterations,converged,angles_rad\n";
  for (const auto& stage : trace.stages) {
    const auto& r = stage.result;
    out += std::to_string(stage.m) + "," + format_double(r.value) + "," +
           std::to_string(r.iterations) + "," + (r.converged ? "true" : "false") + ",";
    for (std::size_t k = 0; k < r.driver.m(); ++k) {
      if (k > 0) out += ';';
      out += format_double(r.driver.angles()[k]);
    }
    out += "\n";
  }
  return out;
}

ParsedTrace parse_trace(std::string_view text) {
  try {
    const json doc = json::parse(text);
    ParsedTrace out;
    out.functional = doc.at("functional").get<std::string>();
    out.seed = doc.at("seed").get<std::uint64_t>();
    for (const auto& s : doc.at("stages")) {
      RefinementStage stage{s.at("m").get<std::size_t>(),
                            {StepDriver(angles_from(s.at("angles_rad"))), s.at("value").get<double>(),
                             s.at("iterations").get<int>(), s.at("converged").get<bool>()}};
      if (stage.m != stage.result.driver.m()) {
        throw std::invalid_argument("stage m does not match its angles");
      }
      out.trace.stages.push_back(std::move(stage));
    }
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("invalid trace JSON: ") + e.what());
  }
}

std::span<const double> table2_angles() { return kCounterexampleAngles; }

}  // namespace loewner
