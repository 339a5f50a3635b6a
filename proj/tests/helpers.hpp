#pragma once

#include <set>
#include <string>
#include <vector>

#include "moosize/evaluate.hpp"
#include "moosize/library.hpp"
#include "moosize/netlist.hpp"
#include "moosize/rng.hpp"

namespace moosize::test {

inline std::string bench_path(const std::string& name) {
  return std::string(MOOSIZE_BENCH_DIR) + "/" + name + ".bench";
}

inline CellLibrary full_library_for(const Netlist& netlist) {
  std::set<FunctionKey> required{{"NOT", 1}};
  for (const auto& gate : netlist.gates)
    required.insert({gate.function_id, static_cast<int>(gate.inputs.size())});
  return generate_synthetic_library(ScalingProfile{}, required);
}

inline TimingScenario scenario(double t_r = 4e-9, double t_c = 4e-9, double load = 0.0) {
  return scenario_for_required_time(t_r, t_c, load);
}

// Random combinational .bench text: n_pi inputs, n_gates gates with fanin
// <= 3, all sink nets exposed as outputs.
inline std::string random_bench(Rng& rng, int n_pi, int n_gates) {
  const char* funcs[] = {"AND", "NAND", "OR", "NOR", "XOR", "XNOR", "NOT", "BUFF"};
  std::string text;
  std::vector<std::string> nets;
  for (int i = 0; i < n_pi; ++i) {
    nets.push_back("i" + std::to_string(i));
    text += "INPUT(" + nets.back() + ")\n";
  }
  std::vector<std::string> gate_lines;
  std::set<std::string> read;
  for (int g = 0; g < n_gates; ++g) {
    std::string func = funcs[rng.uniform_int(8)];
    int arity = (func == std::string("NOT") || func == std::string("BUFF"))
                    ? 1
                    : 2 + static_cast<int>(rng.uniform_int(2));
    std::vector<std::string> ins;
    while (static_cast<int>(ins.size()) < arity) {
      const std::string& cand = nets[rng.uniform_int(nets.size())];
      bool dup = false;
      for (const auto& have : ins) dup |= have == cand;
      if (!dup) ins.push_back(cand);
      if (static_cast<int>(nets.size()) < arity) break;  // tiny net pool
    }
    if (static_cast<int>(ins.size()) < arity) continue;
    std::string out = "n" + std::to_string(gate_lines.size());
    std::string line = out + " = " + func + "(";
    for (std::size_t k = 0; k < ins.size(); ++k) {
      if (k) line += ", ";
      line += ins[k];
      read.insert(ins[k]);
    }
    gate_lines.push_back(line + ")");
    nets.push_back(out);
  }
  std::vector<std::string> outputs;
  for (int g = static_cast<int>(gate_lines.size()) - 1; g >= 0; --g) {
    std::string net = "n" + std::to_string(g);
    if (!read.count(net)) outputs.push_back(net);
  }
  if (outputs.empty() && !gate_lines.empty())
    outputs.push_back("n" + std::to_string(gate_lines.size() - 1));
  for (const auto& po : outputs) text += "OUTPUT(" + po + ")\n";
  for (const auto& line : gate_lines) text += line + "\n";
  return text;
}

}  // namespace moosize::test
