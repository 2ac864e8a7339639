#include "capflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "capflow/errors.hpp"
#include "capflow/version.hpp"

namespace capflow {

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::separator() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_in_scope_.empty()) {
    if (!first_in_scope_.back()) out_ += ',';
    first_in_scope_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separator();
  out_ += '{';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separator();
  out_ += '[';
  first_in_scope_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_in_scope_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separator();
  out_ += '"';
  out_ += k;
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separator();
  if (std::isfinite(v)) {
    out_ += fmt17(v);
  } else {
    out_ += '"';
    out_ += fmt17(v);
    out_ += '"';
  }
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
  separator();
  out_ += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out_ += '\\';
    out_ += c;
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* s) { return value(std::string(s)); }

JsonWriter& JsonWriter::value(std::int64_t v) {
  separator();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) { return value(static_cast<std::int64_t>(v)); }

JsonWriter& JsonWriter::value(bool v) {
  separator();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::raw(const std::string& text) {
  separator();
  out_ += text;
  return *this;
}

void write_meta_fields(JsonWriter& w, const RunMeta& meta) {
  w.key("tool").value("capflow");
  w.key("version").value(kToolVersion);
  w.key("command").value(meta.command);
  w.key("flags").begin_object();
  for (const auto& [k, v] : meta.flags) w.key(k).value(v);
  w.end_object();
  w.key("seed").value(static_cast<std::int64_t>(meta.seed));
  w.key("partition_count").value(meta.partition_count);
}

namespace {

void write_atoms(JsonWriter& w, int d, const std::vector<double>& packed,
                 const std::vector<double>& masses) {
  w.key("d").value(d);
  w.key("atoms").begin_array();
  int n = static_cast<int>(masses.size());
  for (int i = 0; i < n; ++i) {
    w.begin_array();
    for (int c = 0; c < d; ++c) w.value(packed[static_cast<std::size_t>(i) * d + c]);
    w.end_array();
  }
  w.end_array();
  w.key("masses").begin_array();
  for (double m : masses) w.value(m);
  w.end_array();
}

}  // namespace

std::string cloud_to_json(const PointCloud& cloud, const RunMeta& meta) {
  JsonWriter w;
  w.begin_object();
  write_meta_fields(w, meta);
  write_atoms(w, cloud.d, cloud.points, cloud.weights);
  const SetSpec& s = cloud.provenance;
  w.key("provenance").begin_object();
  w.key("kind").value(set_kind_name(s.kind));
  w.key("generation").value(s.generation);
  w.key("ratio").value(s.ratio);
  w.key("n_samples").value(s.n_samples);
  w.key("graph_slope").value(s.graph_slope);
  w.key("graph_kink").value(s.graph_kink);
  w.key("transform").begin_object();
  w.key("scale").value(s.transform.scale);
  w.key("rotate").value(s.transform.rotate);
  w.key("translate").begin_array().value(s.transform.tx).value(s.transform.ty).end_array();
  w.end_object();
  w.end_object();
  w.end_object();
  return w.str();
}

std::string measure_to_json(const DiscreteMeasure& mu, const RunMeta& meta) {
  JsonWriter w;
  w.begin_object();
  write_meta_fields(w, meta);
  write_atoms(w, mu.dim(), mu.packed_coords(), mu.masses());
  w.end_object();
  return w.str();
}

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void parse_atoms(const nlohmann::json& j, int& d, std::vector<double>& packed,
                 std::vector<double>& masses) {
  if (!j.contains("d") || !j.contains("atoms") || !j.contains("masses")) {
    throw ValidationError("measure file needs d, atoms, masses");
  }
  d = j.at("d").get<int>();
  const auto& atoms = j.at("atoms");
  const auto& ms = j.at("masses");
  if (!atoms.is_array() || !ms.is_array() || atoms.size() != ms.size()) {
    throw ValidationError("atoms/masses must be arrays of equal length");
  }
  packed.clear();
  masses.clear();
  packed.reserve(atoms.size() * d);
  for (const auto& a : atoms) {
    if (!a.is_array() || static_cast<int>(a.size()) != d) {
      throw ValidationError("every atom needs d coordinates");
    }
    for (const auto& c : a) packed.push_back(c.get<double>());
  }
  for (const auto& m : ms) masses.push_back(m.get<double>());
}

}  // namespace

PointCloud read_cloud(const std::string& path) {
  nlohmann::json j = load_json(path);
  PointCloud cloud;
  parse_atoms(j, cloud.d, cloud.points, cloud.weights);
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    if (auto kind = parse_set_kind(p.value("kind", "custom"))) {
      cloud.provenance.kind = *kind;
    }
    cloud.provenance.generation = p.value("generation", 0);
    cloud.provenance.ratio = p.value("ratio", 0.25);
    cloud.provenance.n_samples = p.value("n_samples", 0);
  }
  // Validation (distinctness, nonnegativity) happens in the measure view.
  cloud.as_measure();
  return cloud;
}

DiscreteMeasure read_measure(const std::string& path) {
  nlohmann::json j = load_json(path);
  int d = 2;
  std::vector<double> packed, masses;
  parse_atoms(j, d, packed, masses);
  try {
    return DiscreteMeasure(d, std::move(packed), std::move(masses));
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << content;
}

}  // namespace capflow
