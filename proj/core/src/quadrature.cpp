// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include "udw/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <queue>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "udw/thread_pool.hpp"

namespace udw::quad {
namespace {

constexpr std::size_t kNodes = 15;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Per-panel error floor relative to the panel's absolute integral.
constexpr double kRoundoff = 50.0 * kEps;
constexpr double kFloorSlack = 1.01;

// Nodes on [-1, 1] with Kronrod weights and the embedded 7-point Gauss
// weights (zero on Kronrod-only nodes).
struct GK15 {
  std::array<double, kNodes> t{};
  std::array<double, kNodes> wk{};
  std::array<double, kNodes> wg{};

  GK15() {
    using boost::math::quadrature::gauss;
    using boost::math::quadrature::gauss_kronrod;
    const auto& ka = gauss_kronrod<double, 15>::abscissa();
    const auto& kw = gauss_kronrod<double, 15>::weights();
    const auto& ga = gauss<double, 7>::abscissa();
    const auto& gw = gauss<double, 7>::weights();
    auto gauss_weight = [&](double x) {
      for (std::size_t i = 0; i < ga.size(); ++i) {
        if (std::abs(ga[i] - x) < 1e-14) return gw[i];
      }
      return 0.0;
    };
    // ka is ascending from 0; lay out -ka[7..1], 0, ka[1..7].
    std::size_t idx = 0;
    for (std::size_t i = ka.size() - 1; i >= 1; --i, ++idx) {
      t[idx] = -ka[i];
      wk[idx] = kw[i];
      wg[idx] = gauss_weight(ka[i]);
    }
    for (std::size_t i = 0; i < ka.size(); ++i, ++idx) {
      t[idx] = ka[i];
      wk[idx] = kw[i];
      wg[idx] = gauss_weight(ka[i]);
    }
  }
};

const GK15& rule() {
  static const GK15 r;
  return r;
}

// QUADPACK-style scaling of the raw |K - G| difference, one real component.
double scaled_error(double raw, double resabs, double resasc) {
  double err = raw;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > std::numeric_limits<double>::min() / kRoundoff) {
    err = std::max(kRoundoff * resabs, err);
  }
  return err;
}

struct Panel {
  double lo = 0.0;
  double hi = 0.0;
  Complex value{};
  double error = 0.0;
  double resabs = 0.0;
};

Panel eval_panel(const Integrand1D& f, double lo, double hi) {
  const auto& r = rule();
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  std::array<Complex, kNodes> fv;
  for (std::size_t i = 0; i < kNodes; ++i) fv[i] = f(c + h * r.t[i]);

  Complex k{}, g{};
  double abs_re = 0.0, abs_im = 0.0;
  for (std::size_t i = 0; i < kNodes; ++i) {
    k += r.wk[i] * fv[i];
    g += r.wg[i] * fv[i];
    abs_re += r.wk[i] * std::abs(fv[i].real());
    abs_im += r.wk[i] * std::abs(fv[i].imag());
  }
  const Complex mean = 0.5 * k;
  double asc_re = 0.0, asc_im = 0.0;
  for (std::size_t i = 0; i < kNodes; ++i) {
    asc_re += r.wk[i] * std::abs(fv[i].real() - mean.real());
    asc_im += r.wk[i] * std::abs(fv[i].imag() - mean.imag());
  }
  const double ah = std::abs(h);
  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.value = h * k;
  p.resabs = ah * (abs_re + abs_im);
  p.error = scaled_error(ah * std::abs(k.real() - g.real()), ah * abs_re, ah * asc_re) +
            scaled_error(ah * std::abs(k.imag() - g.imag()), ah * abs_im, ah * asc_im);
  return p;
}

std::vector<std::pair<double, double>> initial_intervals(std::span<const double> bps,
                                                         const QuadratureSpec& spec) {
  if (bps.size() < 2) throw std::invalid_argument("need at least two breakpoints");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i + 1 < bps.size(); ++i) {
    const double lo = bps[i];
    const double hi = bps[i + 1];
    if (!(hi > lo)) throw std::invalid_argument("breakpoints must be strictly increasing");
    std::size_t n = 1;
    if (spec.phase_hint) {
      const double rate = std::abs(spec.phase_hint(lo, hi));
      if (std::isfinite(rate) && rate > 0.0) {
        const double width = std::numbers::pi / (4.0 * rate);
        n = static_cast<std::size_t>(std::ceil((hi - lo) / width));
        n = std::max<std::size_t>(n, 1);
      }
    }
    for (std::size_t j = 0; j < n; ++j) {
      const double a = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n);
      const double b = j + 1 == n ? hi : lo + (hi - lo) * static_cast<double>(j + 1) / static_cast<double>(n);
      out.emplace_back(a, b);
    }
  }
  return out;
}

struct Adaptive1D {
  std::vector<Panel> panels;
  IntegrationResult result;
};

Adaptive1D run_1d(const Integrand1D& f, std::span<const double> bps,
                  const QuadratureSpec& spec) {
  spec.validate();
  Adaptive1D out;
  auto& panels = out.panels;
  for (auto [lo, hi] : initial_intervals(bps, spec)) panels.push_back(eval_panel(f, lo, hi));
  std::size_t evals = panels.size() * kNodes;

  auto cmp = [&](std::size_t a, std::size_t b) {
    if (panels[a].error != panels[b].error) return panels[a].error < panels[b].error;
    return a > b;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> heap(cmp);
  Complex total{};
  double total_err = 0.0, total_abs = 0.0;
  for (std::size_t i = 0; i < panels.size(); ++i) {
    heap.push(i);
    total += panels[i].value;
    total_err += panels[i].error;
    total_abs += panels[i].resabs;
  }

  auto target = [&] {
    return std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
  };
  // Once every panel sits at its roundoff floor, bisection cannot help.
  auto refinable = [&] { return total_err > kFloorSlack * kRoundoff * total_abs; };
  bool converged = total_err <= target();
  while (!converged && refinable() && panels.size() < spec.max_panels && !heap.empty()) {
    const std::size_t worst = heap.top();
    heap.pop();
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.lo + p.hi);
    if (!(mid > p.lo && mid < p.hi)) {
      // Cannot bisect further in floating point; leave this panel alone.
      continue;
    }
    Panel left = eval_panel(f, p.lo, mid);
    Panel right = eval_panel(f, mid, p.hi);
    evals += 2 * kNodes;
    total += left.value + right.value - p.value;
    total_err += left.error + right.error - p.error;
    total_abs += left.resabs + right.resabs - p.resabs;
    panels[worst] = left;
    panels.push_back(right);
    heap.push(worst);
    heap.push(panels.size() - 1);
    converged = total_err <= target();
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel& a, const Panel& b) { return a.lo < b.lo; });
  Complex sum{};
  double err = 0.0;
  const Panel* worst = nullptr;
  for (const auto& p : panels) {
    sum += p.value;
    err += p.error;
    if (worst == nullptr || p.error > worst->error) worst = &p;
  }
  auto& r = out.result;
  r.value = sum;
  r.error_estimate = err;
  r.evaluations = evals;
  r.panels = panels.size();
  r.converged =
      err <= std::max(spec.rel_tol * std::abs(sum), spec.abs_tol);
  if (worst != nullptr) r.worst_panel = {worst->lo, worst->hi, worst->error};
  return out;
}

// ---------------------------------------------------------------------------
// 2-D

enum class RegionKind { Full, Diagonal, Upper };

struct Region {
  double x0, x1, y0, y1;
  RegionKind kind;
  Complex value{};
  double error = 0.0;
  double resabs = 0.0;

  double weight() const { return kind == RegionKind::Upper ? 2.0 : 1.0; }
};

void eval_region(const TensorIntegrand& f, Region& reg) {
  const auto& r = rule();
  std::array<double, kNodes> xs, ys;
  const double cx = 0.5 * (reg.x0 + reg.x1), hx = 0.5 * (reg.x1 - reg.x0);
  const double cy = 0.5 * (reg.y0 + reg.y1), hy = 0.5 * (reg.y1 - reg.y0);
  for (std::size_t i = 0; i < kNodes; ++i) {
    xs[i] = cx + hx * r.t[i];
    ys[i] = cy + hy * r.t[i];
  }
  std::array<Complex, kNodes * kNodes> fv;
  f(xs, ys, fv);

  Complex k{}, g{};
  double abs_re = 0.0, abs_im = 0.0;
  for (std::size_t i = 0; i < kNodes; ++i) {
    for (std::size_t j = 0; j < kNodes; ++j) {
      const Complex v = fv[i * kNodes + j];
      const double wk = r.wk[i] * r.wk[j];
      k += wk * v;
      g += (r.wg[i] * r.wg[j]) * v;
      abs_re += wk * std::abs(v.real());
      abs_im += wk * std::abs(v.imag());
    }
  }
  const Complex mean = 0.25 * k;
  double asc_re = 0.0, asc_im = 0.0;
  for (std::size_t i = 0; i < kNodes; ++i) {
    for (std::size_t j = 0; j < kNodes; ++j) {
      const Complex v = fv[i * kNodes + j];
      const double wk = r.wk[i] * r.wk[j];
      asc_re += wk * std::abs(v.real() - mean.real());
      asc_im += wk * std::abs(v.imag() - mean.imag());
    }
  }
  const double area = std::abs(hx * hy);
  reg.value = (hx * hy) * k;
  reg.resabs = area * (abs_re + abs_im);
  reg.error =
      scaled_error(area * std::abs(k.real() - g.real()), area * abs_re, area * asc_re) +
      scaled_error(area * std::abs(k.imag() - g.imag()), area * abs_im, area * asc_im);
}

std::vector<Region> split(const Region& r) {
  const double xm = 0.5 * (r.x0 + r.x1);
  const double ym = 0.5 * (r.y0 + r.y1);
  if (r.kind == RegionKind::Diagonal) {
    return {Region{r.x0, xm, r.y0, ym, RegionKind::Diagonal},
            Region{r.x0, xm, ym, r.y1, RegionKind::Upper},
            Region{xm, r.x1, ym, r.y1, RegionKind::Diagonal}};
  }
  return {Region{r.x0, xm, r.y0, ym, r.kind}, Region{r.x0, xm, ym, r.y1, r.kind},
          Region{xm, r.x1, r.y0, ym, r.kind}, Region{xm, r.x1, ym, r.y1, r.kind}};
}

struct Totals {
  Complex value{};
  double error = 0.0;
  double resabs = 0.0;
};

Totals sum_regions(const std::vector<Region>& regions, Symmetry symmetry) {
  Totals t;
  if (symmetry == Symmetry::Hermitian) {
    double re = 0.0;
    for (const auto& r : regions) {
      re += r.kind == RegionKind::Upper ? 2.0 * r.value.real() : r.value.real();
      t.error += r.weight() * r.error;
      t.resabs += r.weight() * r.resabs;
    }
    t.value = Complex(re, 0.0);
  } else {
    for (const auto& r : regions) {
      t.value += r.value;
      t.error += r.error;
      t.resabs += r.resabs;
    }
  }
  return t;
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be > 0");
  }
  if (max_panels < 4) throw std::invalid_argument("max_panels must be >= 4");
}

PhaseHint constant_phase_rate(double rate) {
  return [rate](double, double) { return rate; };
}

TensorIntegrand pointwise(Integrand2D f) {
  return [f = std::move(f)](std::span<const double> xs, std::span<const double> ys,
                            std::span<Complex> out) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) out[i * ys.size() + j] = f(xs[i], ys[j]);
    }
  };
}

IntegrationResult integrate_1d(const Integrand1D& f, double a, double b,
                               const QuadratureSpec& spec) {
  if (!(b > a)) throw std::invalid_argument("integrate_1d requires a < b");
  const std::array<double, 2> bps{a, b};
  return run_1d(f, bps, spec).result;
}

IntegrationResult integrate_1d(const Integrand1D& f, std::span<const double> breakpoints,
                               const QuadratureSpec& spec) {
  return run_1d(f, breakpoints, spec).result;
}

Rule adaptive_rule_1d(const Integrand1D& f, std::span<const double> breakpoints,
                      const QuadratureSpec& spec, IntegrationResult* result) {
  auto run = run_1d(f, breakpoints, spec);
  const auto& r = rule();
  Rule out;
  out.nodes.reserve(run.panels.size() * kNodes);
  out.weights.reserve(run.panels.size() * kNodes);
  for (const auto& p : run.panels) {
    const double c = 0.5 * (p.lo + p.hi);
    const double h = 0.5 * (p.hi - p.lo);
    for (std::size_t i = 0; i < kNodes; ++i) {
      out.nodes.push_back(c + h * r.t[i]);
      out.weights.push_back(h * r.wk[i]);
    }
  }
  if (result != nullptr) *result = run.result;
  return out;
}

IntegrationResult integrate_2d(const TensorIntegrand& f, double lo, double hi,
                               const QuadratureSpec& spec, Symmetry symmetry,
                               ThreadPool* pool) {
  spec.validate();
  if (!(hi > lo)) throw std::invalid_argument("integrate_2d requires lo < hi");

  std::size_t n = 1;
  if (spec.phase_hint) {
    const double rate = std::abs(spec.phase_hint(lo, hi));
    if (std::isfinite(rate) && rate > 0.0) {
      n = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil((hi - lo) * 4.0 * rate / std::numbers::pi)));
    }
  }
  auto edge = [&](std::size_t i) {
    return i == n ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  };
  std::vector<Region> regions;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (symmetry == Symmetry::Hermitian) {
        if (j < i) continue;
        regions.push_back(Region{edge(i), edge(i + 1), edge(j), edge(j + 1),
                                 i == j ? RegionKind::Diagonal : RegionKind::Upper});
      } else {
        regions.push_back(Region{edge(i), edge(i + 1), edge(j), edge(j + 1), RegionKind::Full});
      }
    }
  }
  for_each_index(pool, regions.size(), [&](std::size_t i) { eval_region(f, regions[i]); });
  std::size_t evals = regions.size() * kNodes * kNodes;

  auto target = [&](const Totals& t) {
    return std::max(spec.rel_tol * std::abs(t.value), spec.abs_tol);
  };
  Totals totals = sum_regions(regions, symmetry);
  while (totals.error > target(totals) &&
         totals.error > kFloorSlack * kRoundoff * totals.resabs &&
         regions.size() < spec.max_panels) {
    std::vector<std::size_t> order(regions.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return regions[a].weight() * regions[a].error > regions[b].weight() * regions[b].error;
    });
    std::vector<char> chosen(regions.size(), 0);
    double acc = 0.0;
    std::size_t budget = spec.max_panels - regions.size();
    for (std::size_t idx : order) {
      const std::size_t growth = regions[idx].kind == RegionKind::Diagonal ? 2 : 3;
      if (growth > budget) break;
      chosen[idx] = 1;
      budget -= growth;
      acc += regions[idx].weight() * regions[idx].error;
      if (acc >= 0.5 * totals.error) break;
    }
    std::vector<Region> next;
    next.reserve(regions.size() * 2);
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < regions.size(); ++i) {
      if (!chosen[i]) {
        next.push_back(regions[i]);
        continue;
      }
      for (auto& child : split(regions[i])) {
        fresh.push_back(next.size());
        next.push_back(child);
      }
    }
    if (fresh.empty()) break;
    for_each_index(pool, fresh.size(), [&](std::size_t i) { eval_region(f, next[fresh[i]]); });
    evals += fresh.size() * kNodes * kNodes;
    regions = std::move(next);
    totals = sum_regions(regions, symmetry);
  }

  IntegrationResult r;
  r.value = totals.value;
  r.error_estimate = totals.error;
  r.evaluations = evals;
  r.panels = regions.size();
  r.converged = totals.error <= target(totals);
  const Region* worst = nullptr;
  for (const auto& reg : regions) {
    if (worst == nullptr || reg.weight() * reg.error > worst->weight() * worst->error) {
      worst = &reg;
    }
  }
  if (worst != nullptr) r.worst_panel = {worst->x0, worst->x1, worst->weight() * worst->error};
  return r;
}

IntegrationResult integrate_2d(const Integrand2D& f, double lo, double hi,
                               const QuadratureSpec& spec, Symmetry symmetry,
                               ThreadPool* pool) {
  return integrate_2d(pointwise(f), lo, hi, spec, symmetry, pool);
}

Complex oracle_riemann(const Integrand1D& f, std::size_t n, double a, double b) {
  if (n < 2) throw std::invalid_argument("oracle_riemann needs grid_n >= 2");
  const double h = (b - a) / static_cast<double>(n);
  Complex sum{};
  for (std::size_t i = 0; i < n; ++i) sum += f(a + (static_cast<double>(i) + 0.5) * h);
  return sum * h;
}

Complex oracle_riemann(const Integrand2D& f, std::size_t n, double lo, double hi) {
  if (n < 2) throw std::invalid_argument("oracle_riemann needs grid_n >= 2");
  const double h = (hi - lo) / static_cast<double>(n);
  Complex sum{};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (static_cast<double>(i) + 0.5) * h;
    Complex row{};
    for (std::size_t j = 0; j < n; ++j) row += f(x, lo + (static_cast<double>(j) + 0.5) * h);
    sum += row;
  }
  return sum * h * h;
}

}  // namespace udw::quad
