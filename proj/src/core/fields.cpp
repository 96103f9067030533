#include "core/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/error.hpp"

namespace gradlab {

std::string family_name(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::Constant: return "constant";
    case ProfileFamily::Tanh: return "tanh";
    case ProfileFamily::Gaussian: return "gaussian";
  }
  return "unknown";
}

double Modulation::value(double t) const { return 1.0 + eps * std::sin(omega * t); }
double Modulation::rate(double t) const { return eps * omega * std::cos(omega * t); }

CoefficientProfile CoefficientProfile::constant(double c) {
  CoefficientProfile p;
  p.family = ProfileFamily::Constant;
  p.base = c;
  return p;
}

CoefficientProfile CoefficientProfile::tanh_bump(double base, double amp, double c0, double w0) {
  CoefficientProfile p{ProfileFamily::Tanh, base, amp, c0, w0, {}};
  p.validate();
  return p;
}

CoefficientProfile CoefficientProfile::gaussian_bump(double base, double amp, double c0, double w0) {
  CoefficientProfile p{ProfileFamily::Gaussian, base, amp, c0, w0, {}};
  p.validate();
  return p;
}

void CoefficientProfile::validate() const {
  for (double x : {base, amp, c0, w0, modulation.eps, modulation.omega}) {
    require(std::isfinite(x), ErrorKind::InvalidArgument, "profile parameters must be finite");
  }
  if (family != ProfileFamily::Constant) {
    require(w0 > 0.0, ErrorKind::InvalidArgument, "profile width w0 must be > 0");
  }
}

CoefficientProfile CoefficientProfile::with_amp(double new_amp) const {
  CoefficientProfile p = *this;
  p.amp = new_amp;
  return p;
}

double CoefficientProfile::shape(double x) const {
  switch (family) {
    case ProfileFamily::Constant: return 0.0;
    case ProfileFamily::Tanh: return std::tanh(x);
    case ProfileFamily::Gaussian: return std::exp(-x * x);
  }
  return 0.0;
}

// derivatives with respect to x; callers divide by w0, w0^2
double CoefficientProfile::shape_d1(double x) const {
  switch (family) {
    case ProfileFamily::Constant: return 0.0;
    case ProfileFamily::Tanh: {
      const double g = std::tanh(x);
      return 1.0 - g * g;
    }
    case ProfileFamily::Gaussian: return -2.0 * x * std::exp(-x * x);
  }
  return 0.0;
}

double CoefficientProfile::shape_d2(double x) const {
  switch (family) {
    case ProfileFamily::Constant: return 0.0;
    case ProfileFamily::Tanh: {
      const double g = std::tanh(x);
      return -2.0 * g * (1.0 - g * g);
    }
    case ProfileFamily::Gaussian: return (4.0 * x * x - 2.0) * std::exp(-x * x);
  }
  return 0.0;
}

double CoefficientProfile::value(double r, double t) const {
  if (family == ProfileFamily::Constant) return base;
  return base + amp * modulation.value(t) * shape((r - c0) / w0);
}

double CoefficientProfile::d1(double r, double t) const {
  if (family == ProfileFamily::Constant) return 0.0;
  return amp * modulation.value(t) * shape_d1((r - c0) / w0) / w0;
}

double CoefficientProfile::d2(double r, double t) const {
  if (family == ProfileFamily::Constant) return 0.0;
  return amp * modulation.value(t) * shape_d2((r - c0) / w0) / (w0 * w0);
}

double CoefficientProfile::dt(double r, double t) const {
  if (family == ProfileFamily::Constant) return 0.0;
  return amp * modulation.rate(t) * shape((r - c0) / w0);
}

double CoefficientProfile::laplacian(const ModelManifold& manifold, double r, double t) const {
  if (family == ProfileFamily::Constant) return 0.0;
  return radial_laplacian(manifold, r, d1(r, t), d2(r, t));
}

ScalarField sample(const CoefficientProfile& profile, const RadialGrid& grid, double t) {
  return ScalarField::from_function(grid, [&](double r) { return profile.value(r, t); });
}

ScalarField sample_gradient_sq(const CoefficientProfile& profile, const RadialGrid& grid, double t) {
  return ScalarField::from_function(grid, [&](double r) {
    const double d = profile.d1(r, t);
    return d * d;
  });
}

ScalarField sample_laplacian(const CoefficientProfile& profile, const ModelManifold& manifold,
                             const RadialGrid& grid, double t) {
  return ScalarField::from_function(grid, [&](double r) { return profile.laplacian(manifold, r, t); });
}

double plus_part(std::span<const double> g) {
  require(!g.empty(), ErrorKind::InvalidArgument, "plus_part over an empty region");
  double m = 0.0;
  for (double x : g) m = std::max(m, x);
  return m;
}

double plus_part(double g) { return std::max(g, 0.0); }

TimeWindow coefficient_window(const CoefficientProfile& a, const CoefficientProfile& b, double T) {
  if (!a.time_dependent() && !b.time_dependent()) return {0.0, 0.0, 1};
  double span = std::max(T, 0.0);
  for (const auto* p : {&a, &b}) {
    if (p->time_dependent() && p->modulation.omega != 0.0) span = std::max(span, 2.0 * M_PI / std::abs(p->modulation.omega));
  }
  return {0.0, span, 513};
}

std::vector<double> window_times(const TimeWindow& window) {
  require(window.samples >= 1, ErrorKind::InvalidArgument, "time window needs at least one sample");
  std::vector<double> t(window.samples);
  if (window.samples == 1) {
    t[0] = window.t0;
    return t;
  }
  for (int j = 0; j < window.samples; ++j) {
    t[j] = window.t0 + (window.t1 - window.t0) * j / (window.samples - 1);
  }
  return t;
}

namespace {

// sup, inf and max neighbour jump of a nodes x times table
struct Extent {
  double sup = -std::numeric_limits<double>::infinity();
  double inf = std::numeric_limits<double>::infinity();
  double jump = 0.0;

  void add_table(const std::vector<double>& v, std::size_t nodes) {
    const std::size_t times = v.size() / nodes;
    for (std::size_t j = 0; j < times; ++j) {
      for (std::size_t i = 0; i < nodes; ++i) {
        const double x = v[j * nodes + i];
        sup = std::max(sup, x);
        inf = std::min(inf, x);
        if (i > 0) jump = std::max(jump, std::abs(x - v[j * nodes + i - 1]));
        if (j > 0) jump = std::max(jump, std::abs(x - v[(j - 1) * nodes + i]));
      }
    }
  }
};

Extent extent(const std::vector<double>& v, std::size_t nodes) {
  Extent e;
  e.add_table(v, nodes);
  return e;
}

}  // namespace

CoefficientBounds coefficient_bounds(const CoefficientProfile& profile, const ModelManifold& manifold,
                                     const RadialGrid& grid, const TimeWindow& window) {
  profile.validate();
  check_same_grid(ScalarField::constant(grid, 0.0), manifold);
  const auto times = profile.time_dependent() ? window_times(window) : std::vector<double>{window.t0};
  const std::size_t nodes = grid.size();
  std::vector<double> v, g2, lap, vt;
  v.reserve(nodes * times.size());
  g2.reserve(v.capacity());
  lap.reserve(v.capacity());
  vt.reserve(v.capacity());
  for (double t : times) {
    for (std::size_t i = 0; i < nodes; ++i) {
      const double r = grid.node(i);
      v.push_back(profile.value(r, t));
      const double d = profile.d1(r, t);
      g2.push_back(d * d);
      lap.push_back(profile.laplacian(manifold, r, t));
      vt.push_back(profile.dt(r, t));
    }
  }
  const Extent ev = extent(v, nodes), eg = extent(g2, nodes), el = extent(lap, nodes), et = extent(vt, nodes);
  CoefficientBounds b;
  b.sup = ev.sup + ev.jump;
  b.inf = ev.inf - ev.jump;
  b.sup_abs = std::max(std::abs(ev.sup), std::abs(ev.inf)) + ev.jump;
  b.sup_grad_sq = eg.sup + eg.jump;
  b.inf_lap = el.inf - el.jump;
  b.sup_lap = el.sup + el.jump;
  b.sup_abs_lap = std::max(std::abs(el.sup), std::abs(el.inf)) + el.jump;
  b.sup_abs_dt = std::max(std::abs(et.sup), std::abs(et.inf)) + et.jump;
  return b;
}

CoefficientSamples sample_coefficients(const CoefficientProfile& a, const CoefficientProfile& b,
                                       const ModelManifold& manifold, const RadialGrid& grid,
                                       const TimeWindow& window) {
  a.validate();
  b.validate();
  const bool timed = a.time_dependent() || b.time_dependent();
  const auto times = timed ? window_times(window) : std::vector<double>{window.t0};
  CoefficientSamples s;
  s.nodes = grid.size();
  for (std::size_t i = 0; i < s.nodes; ++i) s.r.push_back(grid.node(i));
  s.t = times;
  for (double t : times) {
    for (std::size_t i = 0; i < s.nodes; ++i) {
      const double r = s.r[i];
      s.a.push_back(a.value(r, t));
      s.b.push_back(b.value(r, t));
      const double da = a.d1(r, t), db = b.d1(r, t);
      s.grad_a_sq.push_back(da * da);
      s.grad_b_sq.push_back(db * db);
      s.lap_a.push_back(a.laplacian(manifold, r, t));
      s.lap_b.push_back(b.laplacian(manifold, r, t));
      s.a_t.push_back(a.dt(r, t));
    }
  }
  return s;
}

CoefficientSamples restrict_samples(const CoefficientSamples& s, double radius) {
  std::size_t keep = 0;
  while (keep < s.nodes && s.r[keep] <= radius * (1.0 + 1e-12)) ++keep;
  require(keep > 0, ErrorKind::InvalidArgument, "restriction leaves no nodes");
  CoefficientSamples out;
  out.nodes = keep;
  out.r.assign(s.r.begin(), s.r.begin() + keep);
  out.t = s.t;
  auto cut = [&](const std::vector<double>& src, std::vector<double>& dst) {
    for (std::size_t j = 0; j < s.t.size(); ++j) {
      dst.insert(dst.end(), src.begin() + j * s.nodes, src.begin() + j * s.nodes + keep);
    }
  };
  cut(s.a, out.a);
  cut(s.b, out.b);
  cut(s.grad_a_sq, out.grad_a_sq);
  cut(s.grad_b_sq, out.grad_b_sq);
  cut(s.lap_a, out.lap_a);
  cut(s.lap_b, out.lap_b);
  cut(s.a_t, out.a_t);
  return out;
}

}  // namespace gradlab
