#include "bop.h"

#include <fstream>
#include <memory>

#include "bop/pairfile.hpp"
#include "bop/suite.hpp"

struct bop_report {
  bop::SuiteReport r;
  std::string text, json;
};

struct bop_pair {
  bop::PairBD p;
  std::string text;
};

namespace {

thread_local std::string last_error, last_kind;

bop_status record(bop_status s, const std::string& kind, const std::string& msg) {
  last_kind = kind;
  last_error = msg;
  return s;
}

template <class F>
bop_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    last_kind.clear();
    return BOP_OK;
  } catch (const bop::Error& e) {
    bop_status s = e.kind() == bop::ErrKind::Usage   ? BOP_ERR_USAGE
                   : e.kind() == bop::ErrKind::Parse ? BOP_ERR_PARSE
                                                     : BOP_ERR_INPUT;
    return record(s, bop::kind_name(e.kind()), e.what());
  } catch (const std::exception& e) {
    return record(BOP_ERR_INTERNAL, "Internal", e.what());
  } catch (...) {
    return record(BOP_ERR_INTERNAL, "Internal", "unknown exception");
  }
}

bop::SuiteOptions opts(const bop_options* o) {
  bop::SuiteOptions s;
  if (o && o->order) {
    if (o->order < 4 || o->order > 64) bop::fail(bop::ErrKind::Usage, "order must be in 4..64");
    s.order = o->order;
  }
  if (o && o->mutate) s.mutate = o->mutate;
  return s;
}

bop_report* wrap(bop::SuiteReport r) {
  auto* w = new bop_report{std::move(r), {}, {}};
  w->text = w->r.text();
  w->json = w->r.json();
  return w;
}

bool null_args(const void* a, const void* b) {
  if (a && b) return false;
  record(BOP_ERR_USAGE, "Usage", "null argument");
  return true;
}

}  // namespace

extern "C" {

const char* bop_last_error(void) { return last_error.c_str(); }
const char* bop_last_error_kind(void) { return last_kind.c_str(); }

bop_status bop_run_canon(const bop_options* opt, bop_report** out) {
  if (null_args(out, out)) return BOP_ERR_USAGE;
  return guard([&] { *out = wrap(bop::run_canon(opts(opt))); });
}

bop_status bop_run_branch(int n, const bop_options* opt, bop_report** out) {
  if (null_args(out, out)) return BOP_ERR_USAGE;
  return guard([&] { *out = wrap(bop::run_branch(n, opts(opt))); });
}

bop_status bop_run_pair_check(const char* path, const bop_options* opt, bop_report** out) {
  if (null_args(path, out)) return BOP_ERR_USAGE;
  return guard([&] {
    auto o = opts(opt);
    *out = wrap(bop::run_pair_check(bop::load_pair(path), path, o));
  });
}

bop_status bop_run_roundtrip(const char* sigma, const char* emit_path, const bop_options* opt, bop_report** out) {
  if (null_args(sigma, out)) return BOP_ERR_USAGE;
  return guard([&] {
    auto o = opts(opt);
    auto r = bop::run_roundtrip(sigma, o);
    if (emit_path) {
      bop::PairBD p = bop::build_pair(bop::build_sl2_model(bop::parse_ratfunc(sigma).num()));
      p.frames = bop::eigenframes(p);
      std::ofstream f(emit_path, std::ios::binary);
      if (!f) bop::fail(bop::ErrKind::Usage, std::string("cannot write ") + emit_path);
      f << bop::write_pair(p);
    }
    *out = wrap(std::move(r));
  });
}

int bop_report_passed(const bop_report* r) { return r && r->r.passed(); }
const char* bop_report_text(const bop_report* r) { return r ? r->text.c_str() : ""; }
const char* bop_report_json(const bop_report* r) { return r ? r->json.c_str() : ""; }
size_t bop_report_count(const bop_report* r) { return r ? r->r.checks.size() : 0; }

bop_status bop_report_check(const bop_report* r, size_t i, const char** id, const char** anchor,
                            bop_check_status* status, const char** witness) {
  if (!r || i >= r->r.checks.size()) return record(BOP_ERR_USAGE, "Usage", "check index out of range");
  const auto& c = r->r.checks[i];
  if (id) *id = c.id.c_str();
  if (anchor) *anchor = c.anchor.c_str();
  if (witness) *witness = c.witness.c_str();
  if (status)
    *status = c.status == bop::Status::Pass ? BOP_CHECK_PASS : c.status == bop::Status::Fail ? BOP_CHECK_FAIL : BOP_CHECK_INFO;
  return BOP_OK;
}

void bop_report_free(bop_report* r) { delete r; }

bop_status bop_pair_from_sigma(const char* sigma, const char* perturb, bop_pair** out) {
  if (null_args(sigma, out)) return BOP_ERR_USAGE;
  return guard([&] {
    bop::RatFunc s = bop::parse_ratfunc(sigma);
    if (!s.is_poly()) bop::fail(bop::ErrKind::Usage, "sigma must be a polynomial");
    bop::Sl2Oper m = bop::build_sl2_model(s.num());
    bop::Scalar c = perturb ? bop::parse_scalar(perturb) : bop::Scalar(0);
    bop::PairBD p = c.is_zero() ? bop::build_pair(m) : bop::perturbed_pair(m, c);
    p.frames = bop::eigenframes(p);
    auto* w = new bop_pair{std::move(p), {}};
    w->text = bop::write_pair(w->p);
    *out = w;
  });
}

bop_status bop_pair_load(const char* path, bop_pair** out) {
  if (null_args(path, out)) return BOP_ERR_USAGE;
  return guard([&] {
    auto* w = new bop_pair{bop::load_pair(path), {}};
    w->text = bop::write_pair(w->p);
    *out = w;
  });
}

const char* bop_pair_text(const bop_pair* p) { return p ? p->text.c_str() : ""; }

int bop_pair_is_oper(const bop_pair* p) {
  if (!p) return 0;
  try {
    return bop::oper_criterion(p->p).is_branched_oper;
  } catch (const std::exception&) {
    return 0;
  }
}

void bop_pair_free(bop_pair* p) { delete p; }

}  // extern "C"
