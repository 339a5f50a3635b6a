#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "moosize/error.hpp"
#include "moosize/library.hpp"

namespace moosize {

struct Gate {
  std::string instance_name;       // output net name doubles as instance name
  std::string function_id;         // NOT, BUF, AND, NAND, OR, NOR, XOR, XNOR
  std::vector<std::string> inputs; // net names
  std::string output;              // net name
  int line = 0;                    // source line in the .bench document
};

// A combinational netlist: DAG of gates over named nets.
struct Netlist {
  std::string name;
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;
  std::vector<Gate> gates;  // file order
};

struct Diagnostic {
  std::string kind;     // "unknown-function", "redefined-net", "undriven-net", "cycle"
  std::string message;
  int line = 0;
};

// Parse .bench text: INPUT(x), OUTPUT(y), y = FUNC(a, b, ...), '#' comments.
// BUFF normalises to BUF. Throws Error(Parse) carrying the first diagnostic;
// all diagnostics are reported in the message.
Netlist parse_bench(const std::string& document, const std::string& name = "");
Netlist parse_bench_file(const std::string& path);

// Structural checks: one driver per net, every gate input driven, acyclic.
// Empty result iff the netlist invariants hold.
std::vector<Diagnostic> validate(const Netlist& netlist);

// Kahn's method, ready set ordered by gate sequence position. Throws on cycles.
std::vector<std::size_t> topological_order(const Netlist& netlist);

// One gene per gate: index into variants_of(lib, gate.function, arity).
struct Chromosome {
  std::vector<int> genes;

  bool operator==(const Chromosome&) const = default;
};

struct MappedDesign {
  Netlist netlist;
  const CellLibrary* library = nullptr;
  std::vector<int> assignment;          // variant index per gate
  std::vector<std::size_t> topo_order;  // cached

  const CellVariant& variant_of_gate(std::size_t gate_index) const;
};

// Assign every gate the lowest-strength variant of its function.
// Throws Error(UnmappedGate) when the library lacks a (function, arity).
MappedDesign map_to_library(const Netlist& netlist, const CellLibrary& lib);

Chromosome extract_chromosome(const MappedDesign& design);

// Topology untouched; only the variant assignment changes.
// Throws Error(InvalidChromosome) on length mismatch or out-of-range genes.
MappedDesign apply_chromosome(const MappedDesign& design, const Chromosome& c);
void apply_chromosome_in_place(MappedDesign& design, const Chromosome& c);

// Checks length and gene ranges; throws Error(InvalidChromosome) naming the index.
void check_chromosome(const MappedDesign& design, const Chromosome& c);

// Plain-text assignment: one line per gate, "<instance> <function><arity> <label>".
std::string export_assignment(const MappedDesign& design);
// Reads an assignment back onto an existing design (gate set must match).
Chromosome parse_assignment(const MappedDesign& design, const std::string& text);

}  // namespace moosize
