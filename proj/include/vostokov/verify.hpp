#pragma once

// Named property suites.  Each suite draws from a seeded engine and returns
// a report listing every failed check with a printable counterexample.

#include <cstdint>
#include <string>
#include <vector>

#include "vostokov/pairing.hpp"

namespace vostokov {

struct Counterexample {
  std::string check;
  std::string config;  // "p,m,n"
  std::vector<std::string> inputs;
  std::string observed;
  std::string expected;
};

struct SuiteReport {
  std::string name;
  int trials = 0;
  long checks = 0;
  std::vector<Counterexample> failures;
  double seconds = 0;
  bool nonstabilized = false;  // some symbol failed to stabilize

  bool passed() const { return failures.empty() && checks > 0; }
};

// Every symbol evaluated by a suite, kept for the precision-doubling recheck.
class SymbolLog {
 public:
  struct Record {
    FieldSpecPtr spec;
    std::vector<LiftSource> sources;
    std::vector<std::string> inputs;
    SymbolExponent result;
  };
  void add(Record r) { records_.push_back(std::move(r)); }
  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

 private:
  std::vector<Record> records_;
};

struct SuiteOptions {
  int trials = 50;
  std::uint64_t seed = 1;
  SymbolLog* log = nullptr;  // symbols are recorded here when set
};

// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const SuiteOptions& opts);

// The doubled plan used by the stability recheck.
PrecisionPlan doubled(const PrecisionPlan& plan);
// Recomputes every logged symbol at doubled(confirmed plan).
SuiteReport recheck_stability(const SymbolLog& log);

}  // namespace vostokov
