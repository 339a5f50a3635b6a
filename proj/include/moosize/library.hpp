#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "moosize/error.hpp"

namespace moosize {

// One concrete cell: a logic function at a given drive strength.
// All electrical quantities are in SI units; area in um^2.
struct CellVariant {
  std::string function_id;
  int arity = 0;
  std::string strength_label;  // "D0", "D1", "D2", ...
  double strength = 0.0;       // relative drive: D0 -> 0.5, Dk -> k
  double input_cap_per_pin = 0.0;  // F
  double drive_resistance = 0.0;   // Ohm
  double intrinsic_delay = 0.0;    // s
  double area = 0.0;               // um^2
  double leakage_power = 0.0;      // W
  double internal_energy = 0.0;    // J per output toggle
};

// All drive-strength variants of one (function, arity), ascending strength.
struct CellFunction {
  std::string function_id;
  int arity = 0;
  std::vector<CellVariant> variants;
};

using FunctionKey = std::pair<std::string, int>;  // (function_id, arity)

struct CellLibrary {
  std::string name;
  double voltage = 0.0;             // V
  double wire_cap_per_fanout = 0.0; // F added per reader pin of a net
  std::map<FunctionKey, CellFunction> functions;

  bool has(const std::string& function_id, int arity) const {
    return functions.count({function_id, arity}) > 0;
  }
};

// Scaling recipe for synthetic libraries. Per variant of strength s and
// arity n, with a = arity_factor^(n-1):
//   drive_resistance = R0 * a / s     input_cap_per_pin = C0 * s
//   area             = A0 * s * a     leakage           = L0 * s * a
//   internal_energy  = E0 * s * a     intrinsic_delay   = d0 * a
struct ScalingProfile {
  double base_resistance = 4000.0;     // R0 [Ohm]
  double base_input_cap = 1.5e-15;     // C0 [F]
  double base_area = 1.5;              // A0 [um^2]
  double base_leakage = 5e-10;         // L0 [W]
  double base_internal_energy = 8e-16; // E0 [J]
  double base_intrinsic_delay = 1.5e-11; // d0 [s]
  double arity_factor = 1.25;
  double voltage = 1.2;                // V
  double wire_cap_per_fanout = 1.5e-15; // F
  std::string name = "synthetic";
  // (label, numeric strength) in strictly ascending strength order.
  // Single-input cells carry the full inverter ladder; multi-input cells
  // come in fewer strengths, as real libraries do.
  std::vector<std::pair<std::string, double>> strength_labels = default_strength_ladder();
  std::vector<std::pair<std::string, double>> multi_input_strength_labels =
      default_multi_input_ladder();

  static std::vector<std::pair<std::string, double>> default_strength_ladder();
  static std::vector<std::pair<std::string, double>> default_multi_input_ladder();
};

// Numeric strength for a "D<k>" label; D0 maps to 0.5.
double strength_of_label(const std::string& label);

CellLibrary generate_synthetic_library(const ScalingProfile& profile,
                                       const std::set<FunctionKey>& required);

// Library document (JSON) round trip. load rejects unknown fields and
// duplicate (function, arity, label) entries; parse errors carry a line number.
CellLibrary load_library(const std::string& document);
std::string serialize_library(const CellLibrary& lib);

CellLibrary load_library_file(const std::string& path);
void save_library_file(const CellLibrary& lib, const std::string& path);

// Ascending-strength variants of (function_id, arity); throws UnknownCell.
const std::vector<CellVariant>& variants_of(const CellLibrary& lib,
                                            const std::string& function_id, int arity);

// Keep only the allowed strength labels per function.
CellLibrary restrict_library(const CellLibrary& lib,
                             const std::map<FunctionKey, std::set<std::string>>& allow);

bool operator==(const CellVariant& a, const CellVariant& b);
bool operator==(const CellFunction& a, const CellFunction& b);
bool operator==(const CellLibrary& a, const CellLibrary& b);

}  // namespace moosize
