#include "moosize/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "moosize/text.hpp"

namespace moosize {

double required_time(double clock_period, double output_delay) {
  if (!(output_delay >= 0.0) || !(output_delay < clock_period))
    throw Error(ErrorKind::InvalidConstraint,
                "need 0 <= T_od < T_c, got T_od = " + format_double(output_delay) +
                    ", T_c = " + format_double(clock_period));
  return clock_period - output_delay;
}

TimingScenario scenario_for_required_time(double t_r, double clock_period, double output_load) {
  if (!(t_r > 0.0) || !(t_r <= clock_period))
    throw Error(ErrorKind::InvalidConstraint,
                "need 0 < T_r <= T_c, got T_r = " + format_double(t_r) +
                    ", T_c = " + format_double(clock_period));
  TimingScenario s;
  s.clock_period = clock_period;
  s.output_delay = clock_period - t_r;
  s.output_load = output_load;
  return s;
}

Evaluator::Evaluator(const MappedDesign& design, const TimingScenario& scenario)
    : design_(design), scenario_(scenario) {
  required_time(scenario.clock_period, scenario.output_delay);  // rejects T_r <= 0
  if (scenario.output_load < 0.0)
    throw Error(ErrorKind::InvalidConstraint, "output load must be >= 0");

  const Netlist& nl = design_.netlist;
  std::unordered_map<std::string, std::size_t> id_of;
  auto add_net = [&](const std::string& name, int driver) {
    id_of.emplace(name, net_names_.size());
    net_names_.push_back(name);
    driver_gate_.push_back(driver);
  };
  for (const auto& pi : nl.primary_inputs) add_net(pi, -1);
  for (std::size_t g = 0; g < nl.gates.size(); ++g) add_net(nl.gates[g].output, static_cast<int>(g));

  reader_pins_.resize(net_names_.size());
  gate_input_nets_.resize(nl.gates.size());
  gate_output_net_.resize(nl.gates.size());
  gate_variants_.resize(nl.gates.size());
  for (std::size_t g = 0; g < nl.gates.size(); ++g) {
    const Gate& gate = nl.gates[g];
    gate_variants_[g] =
        &variants_of(*design_.library, gate.function_id, static_cast<int>(gate.inputs.size()));
    gate_output_net_[g] = id_of.at(nl.gates[g].output);
    for (const auto& in : nl.gates[g].inputs) {
      std::size_t net = id_of.at(in);
      gate_input_nets_[g].push_back(net);
      reader_pins_[net].push_back(g);
    }
  }
  is_output_.assign(net_names_.size(), false);
  for (const auto& po : nl.primary_outputs) {
    std::size_t net = id_of.at(po);
    if (!is_output_[net]) {
      is_output_[net] = true;
      output_nets_.push_back(net);
    }
  }

  // Zero-delay static probabilities under input independence, p(PI) = 0.5.
  probability_.assign(net_names_.size(), 0.5);
  toggle_rate_.assign(net_names_.size(), 0.0);
  for (std::size_t g : design_.topo_order) {
    const Gate& gate = nl.gates[g];
    const auto& ins = gate_input_nets_[g];
    double p = 0.0;
    if (gate.function_id == "NOT") {
      p = 1.0 - probability_[ins[0]];
    } else if (gate.function_id == "BUF") {
      p = probability_[ins[0]];
    } else if (gate.function_id == "AND" || gate.function_id == "NAND") {
      double all_high = 1.0;
      for (std::size_t net : ins) all_high *= probability_[net];
      p = gate.function_id == "AND" ? all_high : 1.0 - all_high;
    } else if (gate.function_id == "OR" || gate.function_id == "NOR") {
      double all_low = 1.0;
      for (std::size_t net : ins) all_low *= 1.0 - probability_[net];
      p = gate.function_id == "OR" ? 1.0 - all_low : all_low;
    } else {  // XOR / XNOR: E[parity] from the product of (1 - 2p_i)
      double prod = 1.0;
      for (std::size_t net : ins) prod *= 1.0 - 2.0 * probability_[net];
      double odd = 0.5 * (1.0 - prod);
      p = gate.function_id == "XOR" ? odd : 1.0 - odd;
    }
    probability_[gate_output_net_[g]] = p;
  }
  for (std::size_t net = 0; net < net_names_.size(); ++net)
    toggle_rate_[net] = 2.0 * probability_[net] * (1.0 - probability_[net]);
}

std::size_t Evaluator::net_id(const std::string& net) const {
  for (std::size_t i = 0; i < net_names_.size(); ++i)
    if (net_names_[i] == net) return i;
  throw Error(ErrorKind::UnknownCell, "no net named '" + net + "'");
}

double Evaluator::net_load(const std::vector<int>& assignment, std::size_t net) const {
  const auto& readers = reader_pins_[net];
  double load = design_.library->wire_cap_per_fanout * static_cast<double>(readers.size());
  for (std::size_t g : readers)
    load += (*gate_variants_[g])[static_cast<std::size_t>(assignment[g])].input_cap_per_pin;
  if (is_output_[net]) load += scenario_.output_load;
  return load;
}

double gate_delay(const CellVariant& variant, double load) {
  return variant.intrinsic_delay + variant.drive_resistance * load;
}

TimingReport Evaluator::arrival_times(const std::vector<int>& assignment) const {
  TimingReport report;
  report.arrival.assign(net_names_.size(), 0.0);
  // Best predecessor net per gate; ties prefer the smaller driver index
  // (primary inputs count as -1) for a stable critical path.
  std::vector<std::size_t> pred_net(design_.netlist.gates.size(), 0);

  for (std::size_t g : design_.topo_order) {
    const CellVariant& variant = (*gate_variants_[g])[static_cast<std::size_t>(assignment[g])];

    double best_in = 0.0;
    std::size_t best_net = gate_input_nets_[g][0];
    bool first = true;
    for (std::size_t net : gate_input_nets_[g]) {
      double a = report.arrival[net];
      bool better = first || a > best_in ||
                    (a == best_in && driver_gate_[net] < driver_gate_[best_net]);
      if (better) {
        best_in = a;
        best_net = net;
      }
      first = false;
    }
    pred_net[g] = best_net;
    std::size_t out = gate_output_net_[g];
    report.arrival[out] = best_in + gate_delay(variant, net_load(assignment, out));
  }

  double worst = 0.0;
  int worst_net = -1;
  for (std::size_t net : output_nets_) {
    double a = report.arrival[net];
    if (worst_net < 0 || a > worst ||
        (a == worst && driver_gate_[net] < driver_gate_[static_cast<std::size_t>(worst_net)])) {
      worst = a;
      worst_net = static_cast<int>(net);
    }
  }
  report.worst_arrival = worst_net < 0 ? 0.0 : worst;
  report.wns = scenario_.required_time() - report.worst_arrival;

  if (worst_net >= 0) {
    std::size_t net = static_cast<std::size_t>(worst_net);
    while (driver_gate_[net] >= 0) {
      std::size_t g = static_cast<std::size_t>(driver_gate_[net]);
      report.critical_path.push_back(g);
      net = pred_net[g];
    }
    std::reverse(report.critical_path.begin(), report.critical_path.end());
  }
  return report;
}

PowerReport Evaluator::power(const std::vector<int>& assignment) const {
  const double v2 = design_.library->voltage * design_.library->voltage;
  const double f = scenario_.frequency();
  PowerReport report;
  for (std::size_t net = 0; net < net_names_.size(); ++net)
    report.switching += 0.5 * net_load(assignment, net) * v2 * f * toggle_rate_[net];
  for (std::size_t g = 0; g < design_.netlist.gates.size(); ++g) {
    const CellVariant& variant = (*gate_variants_[g])[static_cast<std::size_t>(assignment[g])];
    report.internal += variant.internal_energy * f * toggle_rate_[gate_output_net_[g]];
    report.leakage += variant.leakage_power;
  }
  report.total = report.switching + report.internal + report.leakage;
  return report;
}

double Evaluator::area(const std::vector<int>& assignment) const {
  double total = 0.0;
  for (std::size_t g = 0; g < design_.netlist.gates.size(); ++g)
    total += (*gate_variants_[g])[static_cast<std::size_t>(assignment[g])].area;
  return total;
}

EvalResult Evaluator::evaluate_assignment(const std::vector<int>& assignment) const {
  EvalResult r;
  TimingReport timing = arrival_times(assignment);
  r.power = power(assignment);
  r.objectives.delay = timing.worst_arrival;
  r.objectives.power = r.power.total;
  r.objectives.area = area(assignment);
  r.wns = timing.wns;
  r.timing_met = timing.wns >= 0.0;
  return r;
}

EvalResult Evaluator::evaluate(const Chromosome& c) const {
  check_chromosome(design_, c);
  return evaluate_assignment(c.genes);
}

double net_load(const MappedDesign& design, const std::string& net, const TimingScenario& scenario) {
  Evaluator eval(design, scenario);
  return eval.net_load(design.assignment, eval.net_id(net));
}

TimingReport compute_arrival_times(const MappedDesign& design, const TimingScenario& scenario) {
  return Evaluator(design, scenario).arrival_times(design.assignment);
}

std::pair<double, bool> worst_case_delay(const TimingReport& report, const TimingScenario& scenario) {
  double d_wc = scenario.required_time() - report.wns;
  return {d_wc, report.wns >= 0.0};
}

std::vector<std::pair<std::string, std::pair<double, double>>> propagate_probabilities(
    const MappedDesign& design) {
  Evaluator eval(design, TimingScenario{});
  std::vector<std::pair<std::string, std::pair<double, double>>> out;
  out.reserve(eval.net_count());
  for (std::size_t net = 0; net < eval.net_count(); ++net)
    out.emplace_back(eval.net_name(net),
                     std::make_pair(eval.probability(net), eval.toggle_rate(net)));
  return out;
}

PowerReport total_power(const MappedDesign& design, const TimingScenario& scenario) {
  return Evaluator(design, scenario).power(design.assignment);
}

double total_area(const MappedDesign& design) {
  return Evaluator(design, TimingScenario{}).area(design.assignment);
}

EvalResult evaluate_full(const MappedDesign& design, const Chromosome& c,
                         const TimingScenario& scenario) {
  return Evaluator(design, scenario).evaluate(c);
}

ObjectiveVector evaluate(const MappedDesign& design, const Chromosome& c,
                         const TimingScenario& scenario) {
  return evaluate_full(design, c, scenario).objectives;
}

std::string eval_csv_header() {
  return "id,D_wc,WNS,timing_met,switching,internal,leakage,P_total,A_gate";
}

std::string eval_csv_row(const std::string& id, const EvalResult& r) {
  std::string row = id;
  for (double v : {r.objectives.delay, r.wns}) row += "," + format_double(v);
  row += r.timing_met ? ",1" : ",0";
  for (double v : {r.power.switching, r.power.internal, r.power.leakage, r.power.total,
                   r.objectives.area})
    row += "," + format_double(v);
  return row;
}

}  // namespace moosize
