#pragma once

// File formats. Output JSON is emitted by a small ordered writer so that
// identical runs produce byte-identical files: fixed key order, floats
// printed with 17 significant digits, non-finite values as quoted strings.
// Parsing goes through nlohmann::json.

#include <cstdint>
#include <string>
#include <vector>

#include "capflow/measures.hpp"
#include "capflow/sets.hpp"

namespace capflow {

// %.17g with a stable exponent form; "inf"/"-inf"/"nan" become strings when
// embedded in JSON.
std::string fmt17(double v);

class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(const std::string& s);
  JsonWriter& value(const char* s);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& raw(const std::string& text);

  const std::string& str() const { return out_; }

 private:
  void separator();
  std::string out_;
  std::vector<bool> first_in_scope_;
  bool pending_key_ = false;
};

// Run metadata embedded in every CLI artifact.
struct RunMeta {
  std::string command;
  std::vector<std::pair<std::string, std::string>> flags;  // insertion order
  std::uint64_t seed = 0;
  int partition_count = 0;
};

void write_meta_fields(JsonWriter& w, const RunMeta& meta);

// Cloud/measure JSON: {"d": int, "atoms": [[...]], "masses": [...]} plus
// optional provenance and run metadata.
std::string cloud_to_json(const PointCloud& cloud, const RunMeta& meta);
std::string measure_to_json(const DiscreteMeasure& mu, const RunMeta& meta);

PointCloud read_cloud(const std::string& path);
DiscreteMeasure read_measure(const std::string& path);

void write_file(const std::string& path, const std::string& content);

}  // namespace capflow
