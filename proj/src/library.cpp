#include "moosize/library.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "moosize/text.hpp"

namespace moosize {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedArity: return "unsupported-arity";
    case ErrorKind::Parse: return "parse-error";
    case ErrorKind::DuplicateVariant: return "duplicate-variant";
    case ErrorKind::UnknownCell: return "unknown-cell";
    case ErrorKind::UnknownVariant: return "unknown-variant";
    case ErrorKind::UnmappedGate: return "unmapped-gate";
    case ErrorKind::InvalidChromosome: return "invalid-chromosome";
    case ErrorKind::InvalidConstraint: return "invalid-constraint";
    case ErrorKind::TimingNotMet: return "timing-not-met";
    case ErrorKind::InvalidReference: return "invalid-reference";
    case ErrorKind::Cycle: return "cycle";
    case ErrorKind::InvalidConfig: return "invalid-config";
    case ErrorKind::Io: return "io-error";
  }
  return "error";
}

std::vector<std::pair<std::string, double>> ScalingProfile::default_strength_ladder() {
  // The inverter ladder D0..D24; D0 is half a D1.
  std::vector<std::pair<std::string, double>> ladder;
  for (const char* label : {"D0", "D1", "D2", "D3", "D4", "D6", "D8", "D12", "D16", "D20", "D24"})
    ladder.emplace_back(label, strength_of_label(label));
  return ladder;
}

std::vector<std::pair<std::string, double>> ScalingProfile::default_multi_input_ladder() {
  // Multi-input cells come in at most a handful of strengths.
  std::vector<std::pair<std::string, double>> ladder;
  for (const char* label : {"D0", "D1", "D2", "D4", "D8"})
    ladder.emplace_back(label, strength_of_label(label));
  return ladder;
}

double strength_of_label(const std::string& label) {
  if (label.size() < 2 || label[0] != 'D')
    throw Error(ErrorKind::Parse, "bad strength label '" + label + "'");
  double k = parse_double(label.substr(1));
  return k == 0.0 ? 0.5 : k;
}

CellLibrary generate_synthetic_library(const ScalingProfile& profile,
                                       const std::set<FunctionKey>& required) {
  CellLibrary lib;
  lib.name = profile.name;
  lib.voltage = profile.voltage;
  lib.wire_cap_per_fanout = profile.wire_cap_per_fanout;
  for (const auto& [function_id, arity] : required) {
    if (arity < 1 || arity > 10)
      throw Error(ErrorKind::UnsupportedArity,
                  function_id + "/" + std::to_string(arity) + " (arity must be in [1, 10])");
    CellFunction fn;
    fn.function_id = function_id;
    fn.arity = arity;
    double a = std::pow(profile.arity_factor, arity - 1);
    const auto& ladder =
        arity == 1 ? profile.strength_labels : profile.multi_input_strength_labels;
    for (const auto& [label, s] : ladder) {
      CellVariant v;
      v.function_id = function_id;
      v.arity = arity;
      v.strength_label = label;
      v.strength = s;
      v.drive_resistance = profile.base_resistance * a / s;
      v.input_cap_per_pin = profile.base_input_cap * s;
      v.area = profile.base_area * s * a;
      v.leakage_power = profile.base_leakage * s * a;
      v.internal_energy = profile.base_internal_energy * s * a;
      v.intrinsic_delay = profile.base_intrinsic_delay * a;
      fn.variants.push_back(std::move(v));
    }
    lib.functions.emplace(FunctionKey{function_id, arity}, std::move(fn));
  }
  return lib;
}

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

double require_number(const nlohmann::json& obj, const char* field) {
  if (!obj.contains(field))
    throw Error(ErrorKind::Parse, std::string("missing field '") + field + "'");
  if (!obj[field].is_number())
    throw Error(ErrorKind::Parse, std::string("field '") + field + "' must be a number");
  return obj[field].get<double>();
}

std::string require_string(const nlohmann::json& obj, const char* field) {
  if (!obj.contains(field))
    throw Error(ErrorKind::Parse, std::string("missing field '") + field + "'");
  if (!obj[field].is_string())
    throw Error(ErrorKind::Parse, std::string("field '") + field + "' must be a string");
  return obj[field].get<std::string>();
}

void reject_unknown_fields(const nlohmann::json& obj, const std::set<std::string>& known,
                           const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!known.count(it.key()))
      throw Error(ErrorKind::Parse, "unknown field '" + it.key() + "' in " + where);
}

}  // namespace

CellLibrary load_library(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, "library document line " +
                                      std::to_string(line_of_offset(document, e.byte)) + ": " +
                                      e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::Parse, "library document must be an object");
  reject_unknown_fields(doc, {"name", "voltage", "wire_cap_per_fanout", "functions"}, "library");

  CellLibrary lib;
  lib.name = require_string(doc, "name");
  lib.voltage = require_number(doc, "voltage");
  lib.wire_cap_per_fanout = require_number(doc, "wire_cap_per_fanout");
  if (!doc.contains("functions") || !doc["functions"].is_array())
    throw Error(ErrorKind::Parse, "missing field 'functions' (array)");

  for (const auto& fn_doc : doc["functions"]) {
    reject_unknown_fields(fn_doc, {"function_id", "arity", "variants"}, "function");
    CellFunction fn;
    fn.function_id = require_string(fn_doc, "function_id");
    fn.arity = static_cast<int>(require_number(fn_doc, "arity"));
    if (!fn_doc.contains("variants") || !fn_doc["variants"].is_array() ||
        fn_doc["variants"].empty())
      throw Error(ErrorKind::Parse, "function " + fn.function_id + " needs a non-empty variants array");
    for (const auto& v_doc : fn_doc["variants"]) {
      reject_unknown_fields(v_doc,
                            {"strength_label", "strength", "input_cap_per_pin", "drive_resistance",
                             "intrinsic_delay", "area", "leakage_power", "internal_energy"},
                            "variant");
      CellVariant v;
      v.function_id = fn.function_id;
      v.arity = fn.arity;
      v.strength_label = require_string(v_doc, "strength_label");
      v.strength = require_number(v_doc, "strength");
      v.input_cap_per_pin = require_number(v_doc, "input_cap_per_pin");
      v.drive_resistance = require_number(v_doc, "drive_resistance");
      v.intrinsic_delay = require_number(v_doc, "intrinsic_delay");
      v.area = require_number(v_doc, "area");
      v.leakage_power = require_number(v_doc, "leakage_power");
      v.internal_energy = require_number(v_doc, "internal_energy");
      for (const auto& prev : fn.variants)
        if (prev.strength_label == v.strength_label)
          throw Error(ErrorKind::DuplicateVariant,
                      fn.function_id + "/" + std::to_string(fn.arity) + " " + v.strength_label);
      fn.variants.push_back(std::move(v));
    }
    std::stable_sort(fn.variants.begin(), fn.variants.end(),
                     [](const CellVariant& a, const CellVariant& b) { return a.strength < b.strength; });
    FunctionKey key{fn.function_id, fn.arity};
    if (lib.functions.count(key))
      throw Error(ErrorKind::DuplicateVariant,
                  "function " + fn.function_id + "/" + std::to_string(fn.arity) + " defined twice");
    lib.functions.emplace(key, std::move(fn));
  }
  return lib;
}

std::string serialize_library(const CellLibrary& lib) {
  nlohmann::ordered_json doc;
  doc["name"] = lib.name;
  doc["voltage"] = lib.voltage;
  doc["wire_cap_per_fanout"] = lib.wire_cap_per_fanout;
  doc["functions"] = nlohmann::ordered_json::array();
  for (const auto& [key, fn] : lib.functions) {
    nlohmann::ordered_json fn_doc;
    fn_doc["function_id"] = fn.function_id;
    fn_doc["arity"] = fn.arity;
    fn_doc["variants"] = nlohmann::ordered_json::array();
    for (const auto& v : fn.variants) {
      nlohmann::ordered_json v_doc;
      v_doc["strength_label"] = v.strength_label;
      v_doc["strength"] = v.strength;
      v_doc["input_cap_per_pin"] = v.input_cap_per_pin;
      v_doc["drive_resistance"] = v.drive_resistance;
      v_doc["intrinsic_delay"] = v.intrinsic_delay;
      v_doc["area"] = v.area;
      v_doc["leakage_power"] = v.leakage_power;
      v_doc["internal_energy"] = v.internal_energy;
      fn_doc["variants"].push_back(std::move(v_doc));
    }
    doc["functions"].push_back(std::move(fn_doc));
  }
  return doc.dump(2) + "\n";
}

CellLibrary load_library_file(const std::string& path) {
  return load_library(read_file(path));
}

void save_library_file(const CellLibrary& lib, const std::string& path) {
  write_file(path, serialize_library(lib));
}

const std::vector<CellVariant>& variants_of(const CellLibrary& lib,
                                            const std::string& function_id, int arity) {
  auto it = lib.functions.find({function_id, arity});
  if (it == lib.functions.end())
    throw Error(ErrorKind::UnknownCell, function_id + "/" + std::to_string(arity));
  return it->second.variants;
}

CellLibrary restrict_library(const CellLibrary& lib,
                             const std::map<FunctionKey, std::set<std::string>>& allow) {
  CellLibrary out;
  out.name = lib.name;
  out.voltage = lib.voltage;
  out.wire_cap_per_fanout = lib.wire_cap_per_fanout;
  for (const auto& [key, labels] : allow) {
    auto it = lib.functions.find(key);
    if (it == lib.functions.end())
      throw Error(ErrorKind::UnknownCell, key.first + "/" + std::to_string(key.second));
    CellFunction fn;
    fn.function_id = it->second.function_id;
    fn.arity = it->second.arity;
    for (const auto& label : labels) {
      bool found = false;
      for (const auto& v : it->second.variants)
        if (v.strength_label == label) {
          fn.variants.push_back(v);
          found = true;
          break;
        }
      if (!found)
        throw Error(ErrorKind::UnknownVariant,
                    key.first + "/" + std::to_string(key.second) + " " + label);
    }
    std::stable_sort(fn.variants.begin(), fn.variants.end(),
                     [](const CellVariant& a, const CellVariant& b) { return a.strength < b.strength; });
    out.functions.emplace(key, std::move(fn));
  }
  return out;
}

bool operator==(const CellVariant& a, const CellVariant& b) {
  return a.function_id == b.function_id && a.arity == b.arity &&
         a.strength_label == b.strength_label && a.strength == b.strength &&
         a.input_cap_per_pin == b.input_cap_per_pin && a.drive_resistance == b.drive_resistance &&
         a.intrinsic_delay == b.intrinsic_delay && a.area == b.area &&
         a.leakage_power == b.leakage_power && a.internal_energy == b.internal_energy;
}

bool operator==(const CellFunction& a, const CellFunction& b) {
  return a.function_id == b.function_id && a.arity == b.arity && a.variants == b.variants;
}

bool operator==(const CellLibrary& a, const CellLibrary& b) {
  return a.name == b.name && a.voltage == b.voltage &&
         a.wire_cap_per_fanout == b.wire_cap_per_fanout && a.functions == b.functions;
}

}  // namespace moosize
