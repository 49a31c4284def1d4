// Command line front end over the C interface.
#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "bop.h"

namespace {

int finish(bop_status s, bop_report* r, bool json) {
  if (s != BOP_OK) {
    std::fprintf(stderr, "error: %s\n", bop_last_error());
    return 2;
  }
  std::fputs(json ? bop_report_json(r) : bop_report_text(r), stdout);
  int code = bop_report_passed(r) ? 0 : 1;
  bop_report_free(r);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification suites for branched SO(3) opers"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  int order = 8;
  std::string mutate;
  app.add_flag("--json", json, "machine-readable report");
  app.add_option("--order", order, "series truncation order")->check(CLI::Range(4, 64));
  app.add_option("--mutate", mutate, "fault-inject the named check");

  auto* canon = app.add_subcommand("canon", "unbranched suite");
  int n = 1;
  auto* branch = app.add_subcommand("branch", "branched model at order n");
  branch->add_option("--n", n, "branching order")->required();
  std::string path;
  auto* pair = app.add_subcommand("pair-check", "check a pair file");
  pair->add_option("path", path, "pair file")->required();
  std::string sigma, emit;
  auto* rt = app.add_subcommand("roundtrip", "model, pair, criterion and reconstruction for a developing map");
  rt->add_option("--sigma", sigma, "polynomial developing map")->required();
  rt->add_option("--emit", emit, "write the built pair here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bop_options o{order, mutate.empty() ? nullptr : mutate.c_str()};
  bop_report* r = nullptr;
  bop_status s = BOP_ERR_USAGE;
  if (*canon) s = bop_run_canon(&o, &r);
  if (*branch) s = bop_run_branch(n, &o, &r);
  if (*pair) s = bop_run_pair_check(path.c_str(), &o, &r);
  if (*rt) s = bop_run_roundtrip(sigma.c_str(), emit.empty() ? nullptr : emit.c_str(), &o, &r);
  return finish(s, r, json);
}
