#include "gradlab/gradlab.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "core/error.hpp"
#include "core/runner.hpp"
#include "core/scenario.hpp"
#include "core/selftest.hpp"

struct gradlab_scenario {
  gradlab::Scenario s;
};

struct gradlab_report {
  gradlab::CaseResult result;
};

struct gradlab_elliptic {
  gradlab::EllipticSolution sol;
};

struct gradlab_trajectory {
  gradlab::ParabolicTrajectory traj;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0;

gradlab_status status_of(gradlab::ErrorKind kind) {
  using gradlab::ErrorKind;
  switch (kind) {
    case ErrorKind::InvalidArgument: return GRADLAB_E_INVALID_ARGUMENT;
    case ErrorKind::Domain: return GRADLAB_E_DOMAIN;
    case ErrorKind::Hypothesis: return GRADLAB_E_HYPOTHESIS;
    case ErrorKind::Config: return GRADLAB_E_CONFIG;
    case ErrorKind::Solver: return GRADLAB_E_SOLVER;
    case ErrorKind::Io: return GRADLAB_E_IO;
  }
  return GRADLAB_E_INTERNAL;
}

gradlab_status fail(gradlab_status st, const std::string& msg) {
  last_error = msg;
  return st;
}

template <class F>
gradlab_status guard(F&& body) {
  last_error.clear();
  last_line = 0;
  try {
    return body();
  } catch (const gradlab::ConfigError& e) {
    last_line = e.line();
    return fail(GRADLAB_E_CONFIG, e.what());
  } catch (const gradlab::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(GRADLAB_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(GRADLAB_E_INTERNAL, e.what());
  } catch (...) {
    return fail(GRADLAB_E_INTERNAL, "unknown error");
  }
}

gradlab_status copy_out(const std::string& text, char* buf, size_t cap, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buf || cap < text.size() + 1) return fail(GRADLAB_E_BUFFER_TOO_SMALL, "buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return GRADLAB_OK;
}

void copy_field(const gradlab::ScalarField& f, double* r, double* u, size_t cap) {
  const size_t count = std::min(cap, f.size());
  for (size_t i = 0; i < count; ++i) {
    if (r) r[i] = f.grid().node(i);
    if (u) u[i] = f[i];
  }
}

}  // namespace

extern "C" {

const char* gradlab_version(void) { return "0.1.0"; }

const char* gradlab_last_error(void) { return last_error.c_str(); }

int gradlab_last_error_line(void) { return last_line; }

gradlab_status gradlab_scenario_parse(const char* text, gradlab_scenario** out) {
  return guard([&] {
    if (!text || !out) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    *out = new gradlab_scenario{gradlab::parse_config(text)};
    return GRADLAB_OK;
  });
}

gradlab_status gradlab_scenario_load(const char* path, gradlab_scenario** out) {
  return guard([&] {
    if (!path || !out) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    *out = new gradlab_scenario{gradlab::load_config(path)};
    return GRADLAB_OK;
  });
}

gradlab_status gradlab_scenario_clone(const gradlab_scenario* s, gradlab_scenario** out) {
  return guard([&] {
    if (!s || !out) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    *out = new gradlab_scenario{s->s};
    return GRADLAB_OK;
  });
}

gradlab_status gradlab_scenario_set(gradlab_scenario* s, const char* key, const char* value) {
  return guard([&] {
    if (!s || !key || !value) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    gradlab::set_config_value(s->s, key, value);
    return GRADLAB_OK;
  });
}

gradlab_status gradlab_scenario_serialize(const gradlab_scenario* s, char* buf, size_t cap, size_t* needed) {
  return guard([&] {
    if (!s) return fail(GRADLAB_E_INVALID_ARGUMENT, "null scenario");
    return copy_out(gradlab::serialize_config(s->s), buf, cap, needed);
  });
}

gradlab_status gradlab_scenario_equal(const gradlab_scenario* x, const gradlab_scenario* y, int* equal) {
  return guard([&] {
    if (!x || !y || !equal) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    *equal = x->s == y->s ? 1 : 0;
    return GRADLAB_OK;
  });
}

void gradlab_scenario_destroy(gradlab_scenario* s) { delete s; }

gradlab_status gradlab_run_case(const gradlab_scenario* s, unsigned flags, gradlab_report** out) {
  return guard([&] {
    if (!s || !out) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    gradlab::RunOptions opts;
    opts.timing = (flags & GRADLAB_FLAG_TIMING) != 0;
    *out = new gradlab_report{gradlab::run_case(s->s, opts)};
    return GRADLAB_OK;
  });
}

gradlab_status gradlab_run_sweep(const gradlab_scenario* s, const char* const* params, size_t count, unsigned flags,
                                 gradlab_report** out) {
  return guard([&] {
    if (!s || !out || (count > 0 && !params)) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    std::vector<gradlab::SweepParam> ps;
    for (size_t i = 0; i < count; ++i) {
      if (!params[i]) return fail(GRADLAB_E_INVALID_ARGUMENT, "null sweep parameter");
      ps.push_back(gradlab::parse_sweep_param(params[i]));
    }
    gradlab::RunOptions opts;
    opts.timing = (flags & GRADLAB_FLAG_TIMING) != 0;
    *out = new gradlab_report{gradlab::run_sweep(gradlab::expand_sweep(s->s, ps), opts)};
    return GRADLAB_OK;
  });
}

gradlab_status gradlab_selftest(gradlab_report** out) {
  return guard([&] {
    if (!out) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    gradlab::CaseResult r;
    r.rows = gradlab::run_selftest();
    *out = new gradlab_report{std::move(r)};
    return GRADLAB_OK;
  });
}

size_t gradlab_report_size(const gradlab_report* r) { return r ? r->result.rows.size() : 0; }

gradlab_status gradlab_report_row(const gradlab_report* r, size_t i, gradlab_row* row) {
  if (!r || !row) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
  if (i >= r->result.rows.size()) return fail(GRADLAB_E_INVALID_ARGUMENT, "row index out of range");
  const auto& c = r->result.rows[i];
  *row = gradlab_row{c.case_id.c_str(), c.check.c_str(), c.n, c.R, c.K, c.C1, c.C2, c.B, c.A, c.M,
                     c.lhs_max, c.rhs, c.margin, c.tolerance, c.pass ? 1 : 0, c.gating ? 1 : 0, c.grid, c.tau,
                     c.runtime_ms, c.note.c_str()};
  return GRADLAB_OK;
}

size_t gradlab_report_diagnostic_count(const gradlab_report* r, size_t i) {
  return r && i < r->result.rows.size() ? r->result.rows[i].diagnostics.size() : 0;
}

gradlab_status gradlab_report_diagnostic(const gradlab_report* r, size_t i, size_t j, const char** name,
                                         double* value) {
  if (!r || !name || !value) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
  if (i >= r->result.rows.size() || j >= r->result.rows[i].diagnostics.size()) {
    return fail(GRADLAB_E_INVALID_ARGUMENT, "diagnostic index out of range");
  }
  const auto& d = r->result.rows[i].diagnostics[j];
  *name = d.first.c_str();
  *value = d.second;
  return GRADLAB_OK;
}

int gradlab_report_all_passed(const gradlab_report* r) { return r && r->result.all_passed() ? 1 : 0; }

int gradlab_report_solver_failed(const gradlab_report* r) { return r && r->result.solver_failed ? 1 : 0; }

gradlab_status gradlab_report_csv(const gradlab_report* r, char* buf, size_t cap, size_t* needed) {
  return guard([&] {
    if (!r) return fail(GRADLAB_E_INVALID_ARGUMENT, "null report");
    return copy_out(gradlab::to_csv(r->result.rows), buf, cap, needed);
  });
}

gradlab_status gradlab_report_write_csv(const gradlab_report* r, const char* path) {
  return guard([&] {
    if (!r || !path) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    std::ofstream out(path, std::ios::binary);
    if (!out) return fail(GRADLAB_E_IO, std::string("cannot open '") + path + "' for writing");
    out << gradlab::to_csv(r->result.rows);
    out.close();
    if (!out) return fail(GRADLAB_E_IO, std::string("write to '") + path + "' failed");
    return GRADLAB_OK;
  });
}

void gradlab_report_destroy(gradlab_report* r) { delete r; }

gradlab_status gradlab_solve_elliptic(const gradlab_scenario* s, gradlab_elliptic** out) {
  return guard([&] {
    if (!s || !out) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    *out = new gradlab_elliptic{gradlab::solve_elliptic(s->s)};
    return GRADLAB_OK;
  });
}

size_t gradlab_elliptic_size(const gradlab_elliptic* e) { return e ? e->sol.u.size() : 0; }

gradlab_status gradlab_elliptic_values(const gradlab_elliptic* e, double* r, double* u, size_t cap) {
  if (!e) return fail(GRADLAB_E_INVALID_ARGUMENT, "null solution");
  copy_field(e->sol.u, r, u, cap);
  return GRADLAB_OK;
}

double gradlab_elliptic_residual(const gradlab_elliptic* e) { return e ? e->sol.residual : 0.0; }

int gradlab_elliptic_iterations(const gradlab_elliptic* e) { return e ? e->sol.iterations : 0; }

void gradlab_elliptic_destroy(gradlab_elliptic* e) { delete e; }

gradlab_status gradlab_solve_parabolic(const gradlab_scenario* s, gradlab_trajectory** out) {
  return guard([&] {
    if (!s || !out) return fail(GRADLAB_E_INVALID_ARGUMENT, "null argument");
    *out = new gradlab_trajectory{gradlab::solve_parabolic(s->s)};
    return GRADLAB_OK;
  });
}

size_t gradlab_trajectory_snapshots(const gradlab_trajectory* t) { return t ? t->traj.snapshots.size() : 0; }

size_t gradlab_trajectory_nodes(const gradlab_trajectory* t) {
  return t && !t->traj.snapshots.empty() ? t->traj.snapshots.front().size() : 0;
}

double gradlab_trajectory_time(const gradlab_trajectory* t, size_t m) { return t ? t->traj.time(m) : 0.0; }

gradlab_status gradlab_trajectory_values(const gradlab_trajectory* t, size_t m, double* r, double* u, size_t cap) {
  if (!t) return fail(GRADLAB_E_INVALID_ARGUMENT, "null trajectory");
  if (m >= t->traj.snapshots.size()) return fail(GRADLAB_E_INVALID_ARGUMENT, "snapshot index out of range");
  copy_field(t->traj.snapshots[m], r, u, cap);
  return GRADLAB_OK;
}

void gradlab_trajectory_destroy(gradlab_trajectory* t) { delete t; }

}  // extern "C"
