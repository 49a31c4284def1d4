// One line per acceptance criterion; exit status 0 only if all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bop/pairfile.hpp"
#include "bop/suite.hpp"

using namespace bop;

namespace {

const std::vector<std::string> kSigmas{"z", "z^2", "z^2+z^3", "z^3-3*z"};

std::map<std::string, SuiteReport> reports;

const SuiteReport& get(const std::string& key, const std::function<SuiteReport()>& run) {
  auto it = reports.find(key);
  if (it == reports.end()) it = reports.emplace(key, run()).first;
  return it->second;
}

const SuiteReport& canon() { return get("canon", [] { return run_canon({}); }); }
const SuiteReport& branch1() { return get("branch", [] { return run_branch(1, {}); }); }
const SuiteReport& rt(const std::string& s) { return get("rt " + s, [s] { return run_roundtrip(s, {}); }); }

const CheckResult* find(const SuiteReport& r, const std::string& id) {
  for (auto& c : r.checks)
    if (c.id == id) return &c;
  return nullptr;
}

// All listed ids present and not failing (informational counts as present); the
// witness of the first failure otherwise.
bool ids_pass(const SuiteReport& r, const std::vector<std::string>& ids, std::string& why) {
  for (auto& id : ids) {
    const CheckResult* c = find(r, id);
    if (!c) {
      why = r.suite + ": missing " + id;
      return false;
    }
    if (c->status == Status::Fail) {
      why = r.suite + ": " + id + ": " + c->witness;
      return false;
    }
  }
  return true;
}

bool roundtrip_ids(const std::vector<std::string>& ids, std::string& why) {
  for (auto& s : kSigmas)
    if (!ids_pass(rt(s), ids, why)) {
      why = "sigma=" + s + " " + why;
      return false;
    }
  return true;
}

struct Criterion {
  int n;
  std::string what;
  std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
  std::vector<Criterion> cs{
      {1, "psi_2 determinant 2, fiberwise injective",
       [](std::string& w) { return ids_pass(canon(), {"psi.det", "psi.injective"}, w); }},
      {2, "delta_0 splitting and kernel span(1, z, z^2)",
       [](std::string& w) { return ids_pass(canon(), {"delta0.splitting", "delta0.kernel"}, w); }},
      {3, "D_0: varpi, flat sections, oper conditions, sff = 1",
       [](std::string& w) {
         return ids_pass(canon(), {"d0.varpi", "d0.flat_sections", "d0.oper_conditions", "d0.sff"}, w);
       }},
      {4, "Killing matrix vs trace oracle, B_0 isotropy and flatness",
       [](std::string& w) {
         return ids_pass(canon(), {"killing.matrix", "b0.isotropy", "b0.flat", "b0.nondegenerate"}, w);
       }},
      {5, "Moebius equivariance for z+1, 2z, z/(1-z)",
       [](std::string& w) {
         return ids_pass(canon(), {"moebius.translate", "moebius.scale", "moebius.inversion"}, w);
       }},
      {6, "2-jet transition determinant 1 on 20 random charts",
       [](std::string& w) { return ids_pass(canon(), {"jets.det_transition"}, w); }},
      {7, "projective operator instances, F_D, conjunction",
       [](std::string& w) {
         return ids_pass(canon(), {"projective.instances", "fd.identity", "varpi.conjunction", "det.trivial"}, w);
       }},
      {8, "branched model n=1: residue {-2,-1,0} and eigenspaces",
       [](std::string& w) {
         return ids_pass(branch1(), {"branch.residue", "branch.eigenspace_m2", "branch.eigenspace_m1"}, w);
       }},
      {9, "twisted sff of the built pair = 1, inclusion with image",
       [](std::string& w) { return roundtrip_ids({"rt.sff"}, w); }},
      {10, "B_J covariantly constant, isotropy and orthogonality",
       [](std::string& w) { return roundtrip_ids({"rt.form", "rt.pair_conditions"}, w); }},
      {11, "spectra {-2,-1,0} -> {-1,0,0} -> {0,0,0}, regular, round trip",
       [](std::string& w) {
         return roundtrip_ids({"rt.spectra", "rt.roundtrip"}, w) && ids_pass(branch1(), {"branch.hecke"}, w);
       }},
      {12, "phi = 0 on built pairs, shipped perturbed pair is a non-oper",
       [](std::string& w) {
         if (!roundtrip_ids({"rt.criterion", "rt.perturbed", "rt.monodromy"}, w)) return false;
         PairBD q = load_pair(BOP_DATA_DIR "/perturbed_z2.pair");
         if (!pair_conditions(q).all()) return w = "shipped pair violates a condition", false;
         Scalar a = phi_obstruction(q, 0, PhiMethod::Ledger).value;
         Scalar b = phi_obstruction(q, 0, PhiMethod::Residue).value;
         if (a.is_zero() || a != b) return w = "shipped pair phi " + a.str() + " / " + b.str(), false;
         if (oper_criterion(q).is_branched_oper || monodromy_trivial(q))
           return w = "shipped pair accepted as oper", false;
         PairBD built = parse_pair(write_pair(build_pair(build_sl2_model(Poly::z() * Poly::z()))));
         if (!oper_criterion(built).is_branched_oper) return w = "emitted z^2 pair rejected", false;
         w = "shipped pair phi = " + a.str() + " by both methods";
         return true;
       }},
      {13, "every suite check fails under its own mutation",
       [](std::string& w) {
         std::vector<std::pair<std::string, std::function<SuiteReport(const SuiteOptions&)>>> suites{
             {"canon", [](const SuiteOptions& o) { return run_canon(o); }},
             {"branch", [](const SuiteOptions& o) { return run_branch(1, o); }}};
         for (auto& s : kSigmas)
           suites.push_back({"roundtrip " + s, [s](const SuiteOptions& o) { return run_roundtrip(s, o); }});
         PairBD built = build_pair(build_sl2_model(Poly::z() * Poly::z()));
         PairBD shipped = load_pair(BOP_DATA_DIR "/perturbed_z2.pair");
         suites.push_back({"pair built", [built](const SuiteOptions& o) { return run_pair_check(built, "built", o); }});
         suites.push_back(
             {"pair shipped", [shipped](const SuiteOptions& o) { return run_pair_check(shipped, "shipped", o); }});
         int mutated = 0;
         for (auto& [name, run] : suites) {
           SuiteReport base = run({});
           for (auto& c : base.checks) {
             if (c.status == Status::Info) continue;
             SuiteOptions o;
             o.mutate = c.id;
             SuiteReport r = run(o);
             for (auto& d : r.checks)
               if ((d.status == Status::Fail) != (d.id == c.id))
                 return w = name + " mutate " + c.id + ": " + d.id + " " + (d.status == Status::Fail ? "failed" : "passed"),
                        false;
             ++mutated;
           }
         }
         w = std::to_string(mutated) + " mutations caught";
         return true;
       }},
  };

  auto t0 = std::chrono::steady_clock::now();
  int failed = 0;
  for (auto& c : cs) {
    std::string why;
    bool ok = false;
    try {
      ok = c.run(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    failed += !ok;
    std::printf("criterion %d: %s  %s%s%s\n", c.n, ok ? "PASS" : "FAIL", c.what.c_str(), why.empty() ? "" : "  -- ",
                why.c_str());
  }
  const CheckResult* slow = nullptr;
  for (auto& [k, r] : reports)
    for (auto& c : r.checks)
      if (!slow || c.ms > slow->ms) slow = &c;
  if (slow) std::printf("slowest check: %s %.1f ms\n", slow->id.c_str(), slow->ms);
  if (slow && slow->ms > 1000) ++failed;
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed in %.2f s\n", int(cs.size()) - failed, cs.size(), s);
  return failed ? 1 : 0;
}
