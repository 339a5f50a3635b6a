#include "moosize/netlist.hpp"

#include <algorithm>
#include <cctype>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "moosize/text.hpp"

namespace moosize {

namespace {

const std::unordered_set<std::string> kFunctions = {"AND",  "NAND", "OR",  "NOR",
                                                    "XOR",  "XNOR", "NOT", "BUF"};

std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void throw_diagnostics(const std::vector<Diagnostic>& diags) {
  std::ostringstream msg;
  for (std::size_t i = 0; i < diags.size(); ++i) {
    if (i) msg << "; ";
    msg << diags[i].kind << " at line " << diags[i].line << ": " << diags[i].message;
  }
  ErrorKind kind = diags.front().kind == "cycle" ? ErrorKind::Cycle : ErrorKind::Parse;
  throw Error(kind, msg.str());
}

}  // namespace

Netlist parse_bench(const std::string& document, const std::string& name) {
  Netlist netlist;
  netlist.name = name;
  std::vector<Diagnostic> diags;
  std::unordered_map<std::string, int> defined_at;  // net -> line

  std::istringstream in(document);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto open = line.find('(');
    auto close = line.rfind(')');
    auto eq = line.find('=');

    if (eq == std::string::npos) {
      // INPUT(x) or OUTPUT(y)
      if (open == std::string::npos || close == std::string::npos || close < open) {
        diags.push_back({"unknown-function", "unrecognised line '" + line + "'", line_no});
        continue;
      }
      std::string head = upper(trim(line.substr(0, open)));
      std::string net = trim(line.substr(open + 1, close - open - 1));
      if (head == "INPUT") {
        if (defined_at.count(net)) {
          diags.push_back({"redefined-net", "net '" + net + "' already defined at line " +
                                                std::to_string(defined_at[net]),
                           line_no});
          continue;
        }
        defined_at[net] = line_no;
        netlist.primary_inputs.push_back(net);
      } else if (head == "OUTPUT") {
        netlist.primary_outputs.push_back(net);
      } else {
        diags.push_back({"unknown-function", "unexpected keyword '" + head + "'", line_no});
      }
      continue;
    }

    // y = FUNC(a, b, ...)
    if (open == std::string::npos || close == std::string::npos || close < open || open < eq) {
      diags.push_back({"unknown-function", "unrecognised line '" + line + "'", line_no});
      continue;
    }
    Gate gate;
    gate.output = trim(line.substr(0, eq));
    gate.function_id = upper(trim(line.substr(eq + 1, open - eq - 1)));
    if (gate.function_id == "BUFF") gate.function_id = "BUF";
    gate.line = line_no;
    if (!kFunctions.count(gate.function_id)) {
      diags.push_back({"unknown-function", "'" + gate.function_id + "'", line_no});
      continue;
    }
    for (const auto& tok : split(line.substr(open + 1, close - open - 1), ',')) {
      std::string net = trim(tok);
      if (net.empty()) {
        diags.push_back({"unknown-function", "empty operand in '" + line + "'", line_no});
        continue;
      }
      gate.inputs.push_back(net);
    }
    if (defined_at.count(gate.output)) {
      diags.push_back({"redefined-net", "net '" + gate.output + "' already defined at line " +
                                            std::to_string(defined_at[gate.output]),
                       line_no});
      continue;
    }
    defined_at[gate.output] = line_no;
    gate.instance_name = gate.output;
    netlist.gates.push_back(std::move(gate));
  }

  // Resolve references after the whole file is read; .bench allows forward use.
  for (const auto& gate : netlist.gates)
    for (const auto& net : gate.inputs)
      if (!defined_at.count(net))
        diags.push_back({"undriven-net", "gate '" + gate.output + "' reads undefined net '" +
                                             net + "'",
                         gate.line});
  for (const auto& po : netlist.primary_outputs)
    if (!defined_at.count(po))
      diags.push_back({"undriven-net", "output '" + po + "' is never driven", 0});

  if (diags.empty())
    for (auto& d : validate(netlist)) diags.push_back(d);

  if (!diags.empty()) throw_diagnostics(diags);
  return netlist;
}

Netlist parse_bench_file(const std::string& path) {
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_bench(read_file(path), stem);
}

std::vector<Diagnostic> validate(const Netlist& netlist) {
  std::vector<Diagnostic> diags;
  std::unordered_map<std::string, int> drivers;  // net -> defining line (PIs: 0)
  for (const auto& pi : netlist.primary_inputs) {
    if (drivers.count(pi))
      diags.push_back({"redefined-net", "input '" + pi + "' declared twice", 0});
    drivers[pi] = 0;
  }
  for (const auto& gate : netlist.gates) {
    if (drivers.count(gate.output))
      diags.push_back({"redefined-net", "net '" + gate.output + "' has two drivers", gate.line});
    drivers[gate.output] = gate.line;
  }
  for (const auto& gate : netlist.gates)
    for (const auto& net : gate.inputs)
      if (!drivers.count(net))
        diags.push_back({"undriven-net",
                         "gate '" + gate.output + "' reads undriven net '" + net + "'", gate.line});
  for (const auto& po : netlist.primary_outputs)
    if (!drivers.count(po))
      diags.push_back({"undriven-net", "output '" + po + "' is never driven", 0});

  // Cycle check via Kahn; anything left unprocessed sits on a cycle.
  std::unordered_map<std::string, std::size_t> gate_of_net;
  for (std::size_t i = 0; i < netlist.gates.size(); ++i)
    gate_of_net[netlist.gates[i].output] = i;
  std::vector<int> pending(netlist.gates.size(), 0);
  std::vector<std::vector<std::size_t>> fanout(netlist.gates.size());
  for (std::size_t i = 0; i < netlist.gates.size(); ++i)
    for (const auto& net : netlist.gates[i].inputs) {
      auto it = gate_of_net.find(net);
      if (it != gate_of_net.end()) {
        ++pending[i];
        fanout[it->second].push_back(i);
      }
    }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < pending.size(); ++i)
    if (pending[i] == 0) ready.push_back(i);
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t g = ready.back();
    ready.pop_back();
    ++done;
    for (std::size_t r : fanout[g])
      if (--pending[r] == 0) ready.push_back(r);
  }
  if (done != netlist.gates.size()) {
    std::string members;
    for (std::size_t i = 0; i < pending.size(); ++i)
      if (pending[i] > 0) {
        if (!members.empty()) members += ", ";
        members += netlist.gates[i].instance_name;
      }
    diags.push_back({"cycle", "gates on a cycle: " + members,
                     netlist.gates.empty() ? 0 : netlist.gates.front().line});
  }
  return diags;
}

std::vector<std::size_t> topological_order(const Netlist& netlist) {
  std::unordered_map<std::string, std::size_t> gate_of_net;
  for (std::size_t i = 0; i < netlist.gates.size(); ++i)
    gate_of_net[netlist.gates[i].output] = i;

  std::vector<int> pending(netlist.gates.size(), 0);
  std::vector<std::vector<std::size_t>> fanout(netlist.gates.size());
  for (std::size_t i = 0; i < netlist.gates.size(); ++i)
    for (const auto& net : netlist.gates[i].inputs) {
      auto it = gate_of_net.find(net);
      if (it != gate_of_net.end()) {
        ++pending[i];
        fanout[it->second].push_back(i);
      }
    }

  // Min-heap on gate index keeps the order stable and deterministic.
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < pending.size(); ++i)
    if (pending[i] == 0) ready.push(i);

  std::vector<std::size_t> order;
  order.reserve(netlist.gates.size());
  while (!ready.empty()) {
    std::size_t g = ready.top();
    ready.pop();
    order.push_back(g);
    for (std::size_t r : fanout[g])
      if (--pending[r] == 0) ready.push(r);
  }
  if (order.size() != netlist.gates.size())
    throw Error(ErrorKind::Cycle, "netlist contains a combinational cycle");
  return order;
}

const CellVariant& MappedDesign::variant_of_gate(std::size_t gate_index) const {
  const Gate& gate = netlist.gates[gate_index];
  return variants_of(*library, gate.function_id,
                     static_cast<int>(gate.inputs.size()))[assignment[gate_index]];
}

MappedDesign map_to_library(const Netlist& netlist, const CellLibrary& lib) {
  MappedDesign design;
  design.netlist = netlist;
  design.library = &lib;
  design.assignment.assign(netlist.gates.size(), 0);
  for (const auto& gate : netlist.gates) {
    int arity = static_cast<int>(gate.inputs.size());
    if (!lib.has(gate.function_id, arity))
      throw Error(ErrorKind::UnmappedGate, "gate '" + gate.instance_name + "' needs " +
                                               gate.function_id + "/" + std::to_string(arity));
  }
  design.topo_order = topological_order(netlist);
  return design;
}

Chromosome extract_chromosome(const MappedDesign& design) {
  return Chromosome{design.assignment};
}

void check_chromosome(const MappedDesign& design, const Chromosome& c) {
  if (c.genes.size() != design.netlist.gates.size())
    throw Error(ErrorKind::InvalidChromosome,
                "length " + std::to_string(c.genes.size()) + " but design has " +
                    std::to_string(design.netlist.gates.size()) + " gates");
  for (std::size_t i = 0; i < c.genes.size(); ++i) {
    const Gate& gate = design.netlist.gates[i];
    const auto& variants =
        variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()));
    if (c.genes[i] < 0 || c.genes[i] >= static_cast<int>(variants.size()))
      throw Error(ErrorKind::InvalidChromosome,
                  "gene " + std::to_string(i) + " = " + std::to_string(c.genes[i]) +
                      " out of range for " + gate.function_id + "/" +
                      std::to_string(gate.inputs.size()));
  }
}

MappedDesign apply_chromosome(const MappedDesign& design, const Chromosome& c) {
  MappedDesign out = design;
  apply_chromosome_in_place(out, c);
  return out;
}

void apply_chromosome_in_place(MappedDesign& design, const Chromosome& c) {
  check_chromosome(design, c);
  design.assignment = c.genes;
}

std::string export_assignment(const MappedDesign& design) {
  std::ostringstream out;
  for (std::size_t i = 0; i < design.netlist.gates.size(); ++i) {
    const Gate& gate = design.netlist.gates[i];
    out << gate.instance_name << ' ' << gate.function_id << gate.inputs.size() << ' '
        << design.variant_of_gate(i).strength_label << '\n';
  }
  return out.str();
}

Chromosome parse_assignment(const MappedDesign& design, const std::string& text) {
  std::unordered_map<std::string, std::string> label_of;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string instance, cell, label;
    if (!(fields >> instance >> cell >> label))
      throw Error(ErrorKind::Parse, "assignment line " + std::to_string(line_no) +
                                        ": expected '<instance> <cell> <label>'");
    label_of[instance] = label;
  }
  Chromosome c;
  c.genes.reserve(design.netlist.gates.size());
  for (std::size_t i = 0; i < design.netlist.gates.size(); ++i) {
    const Gate& gate = design.netlist.gates[i];
    auto it = label_of.find(gate.instance_name);
    if (it == label_of.end())
      throw Error(ErrorKind::Parse, "assignment misses gate '" + gate.instance_name + "'");
    const auto& variants =
        variants_of(*design.library, gate.function_id, static_cast<int>(gate.inputs.size()));
    int index = -1;
    for (std::size_t k = 0; k < variants.size(); ++k)
      if (variants[k].strength_label == it->second) index = static_cast<int>(k);
    if (index < 0)
      throw Error(ErrorKind::UnknownVariant,
                  gate.function_id + "/" + std::to_string(gate.inputs.size()) + " " + it->second);
    c.genes.push_back(index);
  }
  return c;
}

}  // namespace moosize
