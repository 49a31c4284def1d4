#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bop/branched.hpp"

namespace bop {

enum class Status { Pass, Fail, Info };

struct CheckResult {
  std::string id;
  std::string anchor;
  Status status = Status::Fail;
  std::string witness;
  double ms = 0;  // not serialized
};

struct SuiteReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CheckResult> checks;  // sorted by id
  double wall_ms = 0;
  bool passed() const;
  std::string text() const;
  std::string json() const;  // no timing, byte-stable
};

struct SuiteOptions {
  int order = 8;
  std::string mutate;  // check id or alias; empty for none
};

struct Outcome {
  Status status;
  std::string witness;
};

struct CheckSpec {
  std::string id;
  std::string anchor;
  std::function<Outcome(bool mutated)> run;
};

std::vector<CheckSpec> canon_checks(const SuiteOptions& o);
std::vector<CheckSpec> branch_checks(int n, const SuiteOptions& o);
std::vector<CheckSpec> pair_checks(const PairBD& p, const SuiteOptions& o);
std::vector<CheckSpec> roundtrip_checks(const Sl2Oper& m, const SuiteOptions& o);

// Throws Usage for an unknown mutation id.
SuiteReport run_suite(const std::string& name, std::vector<std::pair<std::string, std::string>> params,
                      const std::vector<CheckSpec>& checks, const SuiteOptions& o);

SuiteReport run_canon(const SuiteOptions& o);
SuiteReport run_branch(int n, const SuiteOptions& o);
SuiteReport run_pair_check(const PairBD& p, const std::string& source, const SuiteOptions& o);
SuiteReport run_roundtrip(const std::string& sigma, const SuiteOptions& o);

}  // namespace bop
