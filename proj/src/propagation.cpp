#include "kntorus/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "kntorus/quadrature.hpp"

namespace kntorus {

namespace {

double segment_distance(cplx p, cplx a, cplx b) {
  const cplx d = b - a;
  const double len2 = std::norm(d);
  double s = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return std::abs(p - (a + s * d));
}

// Smallest distance from the segment [a, b] to any lattice image of the poles.
double path_clearance(const PropagationDifferential& omega, cplx a, cplx b) {
  const cplx tau = omega.config().tau;
  double best = std::numeric_limits<double>::infinity();
  for (const cplx pole : omega.poles()) {
    for (int m = -3; m <= 3; ++m)
      for (int n = -3; n <= 3; ++n) best = std::min(best, segment_distance(pole + double(m) + double(n) * tau, a, b));
  }
  return best;
}

}  // namespace

PunctureSet puncture_set(const TorusConfig& cfg) { return PropagationDifferential(cfg).punctures(); }

PropagationDifferential::PropagationDifferential(const TorusConfig& cfg) : wp_(cfg) {
  cfg.validate();
  const cplx q = cfg.offset();
  punctures_.p_in = cplx{0.0, 0.0};
  punctures_.q_out_1 = reduce_to_fundamental(0.5 + q, cfg.tau);
  punctures_.q_out_2 = reduce_to_fundamental(0.5 - q, cfg.tau);
  if (cfg.two_point) {
    punctures_.p_q = wp_.half_periods().e1;
    punctures_.dp_q = cplx{0.0, 0.0};
  } else {
    const WpPair v = wp_(0.5 + q);
    punctures_.p_q = v.value;
    punctures_.dp_q = v.derivative;
  }
  const cplx ref = 0.25 * (1.0 + cfg.tau);
  time_offset_ = -0.5 * std::log(std::abs(wp_(ref).value - punctures_.p_q));
}

std::vector<cplx> PropagationDifferential::poles() const {
  if (config().two_point) return {punctures_.p_in, punctures_.q_out_1};
  return {punctures_.p_in, punctures_.q_out_1, punctures_.q_out_2};
}

std::vector<double> PropagationDifferential::pole_residues() const {
  if (config().two_point) return {1.0, -1.0};
  return {1.0, -0.5, -0.5};
}

double PropagationDifferential::puncture_distance(cplx z) const {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx p : poles()) best = std::min(best, lattice_distance(z - p, config().tau));
  return best;
}

void PropagationDifferential::require_regular(cplx z) const {
  if (puncture_distance(z) < config().exclusion_radius)
    throw PoleProximity("point lies within the exclusion radius of a puncture");
}

cplx PropagationDifferential::omega_hat(cplx z) const {
  require_regular(z);
  const WpPair v = wp_(z);
  return -0.5 * v.derivative / (v.value - punctures_.p_q);
}

cplx PropagationDifferential::omega_hat_derivative(cplx z) const {
  require_regular(z);
  const WpPair v = wp_(z);
  const cplx y = v.value - punctures_.p_q;
  const cplx wpp = wp_.second_derivative_from_value(v.value);
  return -0.5 * (wpp * y - v.derivative * v.derivative) / (y * y);
}

double PropagationDifferential::time(cplx z) const {
  require_regular(z);
  return -0.5 * std::log(std::abs(wp_(z).value - punctures_.p_q)) - time_offset_;
}

cplx omega_hat(cplx z, const TorusConfig& cfg) { return PropagationDifferential(cfg).omega_hat(z); }

cplx residue_at(cplx center, double radius, const TorusConfig& cfg, int nodes) {
  const PropagationDifferential omega(cfg);
  const cplx tau = cfg.tau;
  const double clearance = cfg.exclusion_radius;
  int enclosed = 0;
  for (const cplx pole : omega.poles()) {
    const cplx base = center + reduce_to_fundamental(pole - center, tau);
    for (int m = -2; m <= 2; ++m) {
      for (int n = -2; n <= 2; ++n) {
        const double d = std::abs(base + double(m) + double(n) * tau - center);
        if (std::abs(d - radius) <= clearance) throw BadContour("a pole lies on the integration circle");
        if (d < radius) ++enclosed;
      }
    }
  }
  if (enclosed != 1) throw BadContour("integration circle must enclose exactly one pole");
  return circle_residue([&](cplx z) { return omega.omega_hat(z); }, center, radius, nodes);
}

PeriodParts period_real_parts(const TorusConfig& cfg, double offset, int min_nodes) {
  const PropagationDifferential omega(cfg);
  const auto integrand = [&](cplx z) { return omega.omega_hat(z); };

  const auto node_count = [&](cplx start, cplx step) {
    const double d = path_clearance(omega, start, start + step);
    if (d <= cfg.exclusion_radius) throw PoleOnPath("period cycle passes within the exclusion radius of a pole");
    // trapezoid error decays like exp(-2 pi N d / |step|); ask for e^-40
    const double needed = 40.0 * std::abs(step) / (2.0 * std::numbers::pi * d);
    return std::max(min_nodes, static_cast<int>(std::min(needed, double(1 << 22))) + 1);
  };

  PeriodParts out;
  out.offset = offset;
  const cplx a_start = offset * cfg.tau;
  const cplx a_step{1.0, 0.0};
  const cplx b_start{offset, 0.0};
  const cplx b_step = cfg.tau;
  out.nodes_a = node_count(a_start, a_step);
  out.nodes_b = node_count(b_start, b_step);
  const cplx pa = cycle_integral(integrand, a_start, a_step, out.nodes_a);
  const cplx pb = cycle_integral(integrand, b_start, b_step, out.nodes_b);
  out.re_a = pa.real();
  out.im_a = pa.imag();
  out.re_b = pb.real();
  out.im_b = pb.imag();
  return out;
}

double time_coordinate(cplx z, const TorusConfig& cfg) { return PropagationDifferential(cfg).time(z); }

double separation_time(const TorusConfig& cfg) {
  const PropagationDifferential omega(cfg);
  const HalfPeriodValues& h = omega.wp().half_periods();
  const cplx p = omega.punctures().p_q;
  const double scale = std::abs(h.e1) + std::abs(h.e2) + std::abs(h.e3) + std::abs(p);
  const cplx num = h.e3 - p;
  const cplx den = h.e2 - p;
  if (std::abs(den) <= 1e-14 * scale || std::abs(num) <= 1e-14 * scale)
    throw DegenerateModuli("wp(1/2 + q) coincides with a half-period value");
  return 0.5 * std::log(std::abs(num / den));
}

Moduli mu_modulus(const TorusConfig& cfg) {
  const HalfPeriodValues h = half_period_values(cfg);
  const cplx den = h.e3 - h.e1;
  if (std::abs(den) == 0.0) throw DegenerateModuli("e3 equals e1");
  Moduli m;
  m.mu = (h.e2 - h.e1) / den;
  m.abs_mu = std::abs(m.mu);
  m.separation_time_two_point = -0.5 * std::log(m.abs_mu);
  return m;
}

LevelLineSample level_line_samples(const TorusConfig& cfg, double u, int resolution, Exec exec) {
  if (resolution < 16) throw ConfigError("level-line resolution must be at least 16");
  const PropagationDifferential omega(cfg);
  const int n = resolution;
  const cplx tau = cfg.tau;
  const auto node = [&](int row, int col) {
    return cplx{-0.5 + (col + 0.5) / n, 0.0} + (-0.5 + (row + 0.5) / n) * tau;
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto level = [&](cplx z) {
    if (omega.puncture_distance(z) < cfg.exclusion_radius) return nan;
    return omega.time(z) - u;
  };

  // Bisection on [za, zb] where level changes sign. Returns false if the edge
  // wanders into a puncture exclusion disk.
  const auto bisect = [&](cplx za, double fa, cplx zb, cplx& root) {
    for (int it = 0; it < 200; ++it) {
      const cplx zm = 0.5 * (za + zb);
      const double fm = level(zm);
      if (std::isnan(fm)) return false;
      if (std::abs(fm) <= cfg.tol || std::abs(zb - za) < 1e-15) {
        root = zm;
        return std::abs(fm) <= cfg.tol;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        za = zm;
        fa = fm;
      } else {
        zb = zm;
      }
    }
    return false;
  };

  std::vector<double> values(static_cast<std::size_t>(n) * n);
  std::vector<std::vector<cplx>> rows(n);

  const auto fill_row = [&](int row) {
    for (int col = 0; col < n; ++col) values[static_cast<std::size_t>(row) * n + col] = level(node(row, col));
  };
  const auto scan_row = [&](int row) {
    std::vector<cplx>& out = rows[row];
    const auto edge = [&](int r0, int c0, int r1, int c1) {
      const double fa = values[static_cast<std::size_t>(r0) * n + c0];
      const double fb = values[static_cast<std::size_t>(r1) * n + c1];
      if (std::isnan(fa) || std::isnan(fb)) return;
      const cplx za = node(r0, c0);
      if (fa == 0.0) {
        out.push_back(za);
        return;
      }
      if ((fa < 0.0) == (fb < 0.0)) return;
      cplx root;
      if (bisect(za, fa, node(r1, c1), root)) out.push_back(reduce_to_fundamental(root, tau));
    };
    for (int col = 0; col < n; ++col) {
      if (col + 1 < n) edge(row, col, row, col + 1);
      if (row + 1 < n) edge(row, col, row + 1, col);
    }
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (int row = 0; row < n; ++row) fill_row(row);
#pragma omp parallel for schedule(dynamic)
    for (int row = 0; row < n; ++row) scan_row(row);
  } else {
    for (int row = 0; row < n; ++row) fill_row(row);
    for (int row = 0; row < n; ++row) scan_row(row);
  }

  LevelLineSample sample;
  sample.u = u;
  for (auto& r : rows) sample.points.insert(sample.points.end(), r.begin(), r.end());
  return sample;
}

}  // namespace kntorus
