#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "moosize/netlist.hpp"

namespace moosize {

// Single-corner timing context. T_r = T_c - T_od, F = 1/T_c.
struct TimingScenario {
  double clock_period = 4e-9;  // T_c [s]
  double output_delay = 0.0;   // T_od [s]
  double output_load = 0.0;    // F, applied to every primary output

  double required_time() const { return clock_period - output_delay; }
  double frequency() const { return 1.0 / clock_period; }
};

// Throws Error(InvalidConstraint) unless 0 <= T_od < T_c.
double required_time(double clock_period, double output_delay);
TimingScenario scenario_for_required_time(double t_r, double clock_period, double output_load);

struct TimingReport {
  std::vector<double> arrival;        // per net, indexed by design net id
  double worst_arrival = 0.0;         // max over primary outputs
  double wns = 0.0;                   // T_r - worst_arrival
  std::vector<std::size_t> critical_path;  // gate indices, PI side first
};

struct PowerReport {
  double switching = 0.0;  // W
  double internal = 0.0;   // W
  double leakage = 0.0;    // W
  double total = 0.0;      // switching + internal + leakage, exact
};

struct ObjectiveVector {
  double delay = 0.0;  // D_wc [s]
  double power = 0.0;  // P_total [W]
  double area = 0.0;   // A_gate [um^2]

  bool operator==(const ObjectiveVector&) const = default;
  double operator[](std::size_t k) const { return k == 0 ? delay : k == 1 ? power : area; }
};

struct EvalResult {
  ObjectiveVector objectives;
  double wns = 0.0;
  bool timing_met = false;
  PowerReport power;
};

// Flattened, index-based view of a MappedDesign plus the assignment-independent
// activity estimate. Immutable after construction; safe to share across
// threads, with each evaluation supplying its own assignment.
class Evaluator {
public:
  Evaluator(const MappedDesign& design, const TimingScenario& scenario);

  EvalResult evaluate(const Chromosome& c) const;
  EvalResult evaluate_assignment(const std::vector<int>& assignment) const;

  const MappedDesign& design() const { return design_; }
  const TimingScenario& scenario() const { return scenario_; }

  std::size_t net_count() const { return net_names_.size(); }
  std::size_t net_id(const std::string& net) const;
  const std::string& net_name(std::size_t id) const { return net_names_[id]; }

  // Pin/wire/output load of a net under an assignment.
  double net_load(const std::vector<int>& assignment, std::size_t net) const;
  // Static probability and toggle rate per cycle, assignment-independent.
  double probability(std::size_t net) const { return probability_[net]; }
  double toggle_rate(std::size_t net) const { return toggle_rate_[net]; }

  TimingReport arrival_times(const std::vector<int>& assignment) const;
  PowerReport power(const std::vector<int>& assignment) const;
  double area(const std::vector<int>& assignment) const;

private:
  MappedDesign design_;
  TimingScenario scenario_;

  std::vector<std::string> net_names_;
  std::vector<int> driver_gate_;                  // -1 for primary inputs
  std::vector<std::vector<std::size_t>> reader_pins_;  // net -> gates reading it (one entry per pin)
  std::vector<bool> is_output_;
  std::vector<std::size_t> output_nets_;
  std::vector<std::vector<std::size_t>> gate_input_nets_;
  std::vector<std::size_t> gate_output_net_;
  std::vector<const std::vector<CellVariant>*> gate_variants_;
  std::vector<double> probability_;
  std::vector<double> toggle_rate_;
};

// Spec-level convenience wrappers over a one-shot Evaluator.
double net_load(const MappedDesign& design, const std::string& net, const TimingScenario& scenario);
double gate_delay(const CellVariant& variant, double load);
TimingReport compute_arrival_times(const MappedDesign& design, const TimingScenario& scenario);
// (D_wc, timing_met): D_wc = T_r - WNS = worst arrival; met iff WNS >= 0.
std::pair<double, bool> worst_case_delay(const TimingReport& report, const TimingScenario& scenario);
// net name -> (static probability, toggle rate per cycle)
std::vector<std::pair<std::string, std::pair<double, double>>> propagate_probabilities(
    const MappedDesign& design);
PowerReport total_power(const MappedDesign& design, const TimingScenario& scenario);
double total_area(const MappedDesign& design);
EvalResult evaluate_full(const MappedDesign& design, const Chromosome& c,
                         const TimingScenario& scenario);
ObjectiveVector evaluate(const MappedDesign& design, const Chromosome& c,
                         const TimingScenario& scenario);

// One CSV row per individual: id,D_wc,WNS,timing_met,switching,internal,leakage,P_total,A_gate
std::string eval_csv_header();
std::string eval_csv_row(const std::string& id, const EvalResult& r);

}  // namespace moosize
