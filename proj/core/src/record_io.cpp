#include "dmhd/record_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dmhd {
namespace {

using nlohmann::json;

json vec3(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 get_vec3(const json& j, const char* key) {
  const auto& arr = j.at(key);
  if (!arr.is_array() || arr.size() != 3) {
    throw std::runtime_error(std::string("record: ") + key + " must have three entries");
  }
  return {arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

std::string order_label(double s) {
  std::ostringstream os;
  os << s;
  std::string label = os.str();
  for (char& c : label) {
    if (c == '.') c = 'p';
  }
  return label;
}

}  // namespace

std::string to_ndjson_line(const DiagnosticsRecord& rec) {
  json j;
  j["t"] = rec.t;
  j["dt"] = rec.dt;
  j["orders"] = rec.orders;
  j["norm_a"] = rec.norm_a;
  j["norm_u"] = rec.norm_u;
  j["norm_b"] = rec.norm_b;
  j["total_energy"] = rec.total_energy;
  j["kinetic_dissipation"] = rec.kinetic_dissipation;
  j["energy_residual"] = rec.energy_residual;
  j["mean_a"] = rec.mean_a;
  j["mean_momentum"] = vec3(rec.mean_momentum);
  j["mean_b"] = vec3(rec.mean_b);
  j["div_b_norm"] = rec.div_b_norm;
  j["cross_density"] = rec.cross_density;
  j["cross_magnetic"] = rec.cross_magnetic;
  j["lyapunov_E"] = rec.lyapunov_E;
  return j.dump();
}

DiagnosticsRecord from_ndjson_line(const std::string& line) {
  const json j = json::parse(line);
  DiagnosticsRecord rec;
  rec.t = j.at("t").get<double>();
  rec.dt = j.at("dt").get<double>();
  rec.orders = j.at("orders").get<std::vector<double>>();
  rec.norm_a = j.at("norm_a").get<std::vector<double>>();
  rec.norm_u = j.at("norm_u").get<std::vector<double>>();
  rec.norm_b = j.at("norm_b").get<std::vector<double>>();
  if (rec.norm_a.size() != rec.orders.size() || rec.norm_u.size() != rec.orders.size() ||
      rec.norm_b.size() != rec.orders.size()) {
    throw std::runtime_error("record: norm arrays do not match orders");
  }
  rec.total_energy = j.at("total_energy").get<double>();
  rec.kinetic_dissipation = j.at("kinetic_dissipation").get<double>();
  rec.energy_residual = j.at("energy_residual").get<double>();
  rec.mean_a = j.at("mean_a").get<double>();
  rec.mean_momentum = get_vec3(j, "mean_momentum");
  rec.mean_b = get_vec3(j, "mean_b");
  rec.div_b_norm = j.at("div_b_norm").get<double>();
  rec.cross_density = j.at("cross_density").get<double>();
  rec.cross_magnetic = j.at("cross_magnetic").get<double>();
  rec.lyapunov_E = j.at("lyapunov_E").get<double>();
  return rec;
}

void write_ndjson(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  for (const auto& rec : records) out << to_ndjson_line(rec) << '\n';
}

std::vector<DiagnosticsRecord> read_ndjson(std::istream& in) {
  std::vector<DiagnosticsRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(from_ndjson_line(line));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<DiagnosticsRecord> read_ndjson(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_ndjson(in);
}

std::string csv_header(const std::vector<double>& orders) {
  std::ostringstream os;
  os << "t,dt";
  for (const char* name : {"norm_a", "norm_u", "norm_b"}) {
    for (double s : orders) os << ',' << name << "_s" << order_label(s);
  }
  os << ",total_energy,kinetic_dissipation,energy_residual,mean_a"
     << ",mean_momentum_x,mean_momentum_y,mean_momentum_z"
     << ",mean_b_x,mean_b_y,mean_b_z"
     << ",div_b_norm,cross_density,cross_magnetic,lyapunov_E";
  return os.str();
}

std::string csv_row(const DiagnosticsRecord& rec) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << rec.t << ',' << rec.dt;
  for (const auto* v : {&rec.norm_a, &rec.norm_u, &rec.norm_b}) {
    for (double x : *v) os << ',' << x;
  }
  os << ',' << rec.total_energy << ',' << rec.kinetic_dissipation << ',' << rec.energy_residual
     << ',' << rec.mean_a;
  for (double x : rec.mean_momentum) os << ',' << x;
  for (double x : rec.mean_b) os << ',' << x;
  os << ',' << rec.div_b_norm << ',' << rec.cross_density << ',' << rec.cross_magnetic << ','
     << rec.lyapunov_E;
  return os.str();
}

void write_csv(std::ostream& out, const std::vector<DiagnosticsRecord>& records) {
  if (records.empty()) return;
  out << csv_header(records.front().orders) << '\n';
  for (const auto& rec : records) out << csv_row(rec) << '\n';
}

}  // namespace dmhd
