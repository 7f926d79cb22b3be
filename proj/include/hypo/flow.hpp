#pragma once
// Evolution of a closed structure under
//   d/dt w1 = -d alpha,  d/dt (w2 ^ alpha) = -d w3,  d/dt (w3 ^ alpha) = d w2
// over diagonal coframe ansaetze: each index carries a product of group
// scalings s_g(t) with integer exponents.  Matching coefficients monomial
// by monomial gives a linear system for the s_g', solved least squares so
// that an ansatz not closed under the flow shows up as a residual instead
// of a wrong answer.  Trajectories advance with classical 4th order steps.

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <set>
#include <vector>

#include <hypo/su3.hpp>

namespace hypo {

struct DiagonalAnsatz {
  LieAlgebra<double> algebra;
  SU2Structure<double> base;
  std::vector<std::vector<int>> exponents;  // [coframe index - 1][group]
  int groups() const { return exponents.empty() ? 0 : int(exponents[0].size()); }
};

namespace detail {

// per-index scale factors sigma_i = prod_g s_g^(n_ig)
inline Vec<double> index_scales(const DiagonalAnsatz& a, const Vec<double>& s) {
  Vec<double> sigma(a.exponents.size(), 1.0);
  for (std::size_t i = 0; i < a.exponents.size(); ++i)
    for (int g = 0; g < a.groups(); ++g)
      sigma[i] *= std::pow(s[g], a.exponents[i][g]);
  return sigma;
}

// total exponent of group g over the indices of a monomial
inline std::vector<int> mono_exponents(const DiagonalAnsatz& a, Monomial m) {
  std::vector<int> n(a.groups(), 0);
  for (int i : mono_indices(m))
    for (int g = 0; g < a.groups(); ++g) n[g] += a.exponents[i - 1][g];
  return n;
}

inline Form<double> scale_form(const DiagonalAnsatz& a, const Vec<double>& s,
                               const Form<double>& base) {
  Form<double> r(base.dim(), base.degree());
  for (auto& [m, c] : base.terms()) {
    double factor = 1.0;
    auto n = mono_exponents(a, m);
    for (int g = 0; g < a.groups(); ++g) factor *= std::pow(s[g], n[g]);
    r.add_term(m, c * factor);
  }
  return r;
}

// time derivative of the scaled form, given the s_g'
inline Form<double> scale_form_dt(const DiagonalAnsatz& a, const Vec<double>& s,
                                  const Vec<double>& sdot, const Form<double>& base) {
  Form<double> r(base.dim(), base.degree());
  for (auto& [m, c] : base.terms()) {
    double factor = 1.0, rate = 0.0;
    auto n = mono_exponents(a, m);
    for (int g = 0; g < a.groups(); ++g) {
      factor *= std::pow(s[g], n[g]);
      rate += n[g] * sdot[g] / s[g];
    }
    r.add_term(m, c * factor * rate);
  }
  return r;
}

}  // namespace detail

// the deformed structure at scaling state s
inline SU2Structure<double> at_state(const DiagonalAnsatz& a, const Vec<double>& s) {
  return {detail::scale_form(a, s, a.base.alpha), detail::scale_form(a, s, a.base.omega1),
          detail::scale_form(a, s, a.base.omega2), detail::scale_form(a, s, a.base.omega3)};
}

struct FlowDerivative {
  Vec<double> sdot;
  double residual = 0.0;  // sup norm of unmatched coefficients
};

inline FlowDerivative flow_rhs(const DiagonalAnsatz& a, const Vec<double>& s) {
  for (double v : s)
    if (!(v > 0)) throw MathError("scaling state must stay positive");
  auto cur = at_state(a, s);
  // lhs carries d/dt of a scaled base form, rhs the matching differential
  const Form<double> lhs[3] = {a.base.omega1, wedge(a.base.omega2, a.base.alpha),
                               wedge(a.base.omega3, a.base.alpha)};
  const Form<double> rhs[3] = {-a.algebra.d(cur.alpha), -a.algebra.d(cur.omega3),
                               a.algebra.d(cur.omega2)};

  std::vector<Vec<double>> rows;
  std::vector<double> b;
  for (int e = 0; e < 3; ++e) {
    std::set<Monomial> monos;
    for (auto& [m, c] : lhs[e].terms()) monos.insert(m);
    for (auto& [m, c] : rhs[e].terms()) monos.insert(m);
    for (Monomial m : monos) {
      Vec<double> row(a.groups(), 0.0);
      double c = lhs[e].coeff(mono_indices(m));
      if (c != 0.0) {
        auto n = detail::mono_exponents(a, m);
        double factor = 1.0;
        for (int g = 0; g < a.groups(); ++g) factor *= std::pow(s[g], n[g]);
        for (int g = 0; g < a.groups(); ++g) row[g] = c * factor * n[g] / s[g];
      }
      rows.push_back(row);
      b.push_back(rhs[e].coeff(mono_indices(m)));
    }
  }

  Eigen::MatrixXd A(rows.size(), a.groups());
  Eigen::VectorXd rv(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rv(i) = b[i];
    for (int g = 0; g < a.groups(); ++g) A(i, g) = rows[i][g];
  }
  Eigen::VectorXd x = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rv);

  FlowDerivative d;
  d.sdot = Vec<double>(a.groups());
  for (int g = 0; g < a.groups(); ++g) d.sdot[g] = x(g);
  Eigen::VectorXd gap = A * x - rv;
  for (int i = 0; i < gap.size(); ++i) d.residual = std::max(d.residual, std::fabs(gap(i)));
  return d;
}

// s'' = dF(s)[s'] for the autonomous rhs, by a directional centered difference
inline Vec<double> flow_second_derivative(const DiagonalAnsatz& a, const Vec<double>& s) {
  Vec<double> d = flow_rhs(a, s).sdot;
  const double eps = 1e-6;
  Vec<double> up = s, dn = s;
  for (std::size_t i = 0; i < s.size(); ++i) {
    up[i] += eps * d[i];
    dn[i] -= eps * d[i];
  }
  Vec<double> fu = flow_rhs(a, up).sdot, fd = flow_rhs(a, dn).sdot;
  Vec<double> r(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) r[i] = (fu[i] - fd[i]) / (2 * eps);
  return r;
}

struct FlowState {
  double t = 0.0;
  Vec<double> s;
  Vec<double> sdot;
  double residual = 0.0;
};

struct FlowTrajectory {
  std::vector<FlowState> states;
  double hypo_residual = 0.0;  // worst closedness residual over accepted states
};

inline FlowTrajectory integrate(const DiagonalAnsatz& a, Vec<double> s, double t0,
                                double t1, int steps) {
  if (steps < 1) throw MathError("need at least one step");
  double h = (t1 - t0) / steps;
  FlowTrajectory traj;
  auto push = [&](double t, const Vec<double>& state) {
    auto d = flow_rhs(a, state);
    auto cur = at_state(a, state);
    auto v = validate(cur);
    if (!v.ok) throw MathError("scaled structure left the valid set: " + v.reason);
    auto rep = hypo_report(a.algebra, cur);
    double worst =
        std::max({rep.residual_dw1, rep.residual_daw2, rep.residual_daw3});
    traj.hypo_residual = std::max(traj.hypo_residual, worst);
    traj.states.push_back({t, state, d.sdot, d.residual});
    return d;
  };
  push(t0, s);
  for (int step = 0; step < steps; ++step) {
    double t = t0 + step * h;
    auto add = [&](const Vec<double>& base, const Vec<double>& k, double w) {
      Vec<double> r = base;
      for (std::size_t i = 0; i < r.size(); ++i) r[i] += w * k[i];
      return r;
    };
    Vec<double> k1 = flow_rhs(a, s).sdot;
    Vec<double> k2 = flow_rhs(a, add(s, k1, h / 2)).sdot;
    Vec<double> k3 = flow_rhs(a, add(s, k2, h / 2)).sdot;
    Vec<double> k4 = flow_rhs(a, add(s, k3, h)).sdot;
    for (std::size_t i = 0; i < s.size(); ++i)
      s[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    push(t0 + (step + 1) * h, s);
  }
  return traj;
}

// g = (p t + q)^(1/4) with the companion scaling f = c g^2; solves the
// flow on the stretched ansatz when c p = -2.
struct PowerLawSolution {
  double p, q, c;
  PowerLawSolution(double p_, double q_, double c_) : p(p_), q(q_), c(c_) {
    if (p == 0) throw MathError("power law needs p != 0");
  }
  Vec<double> state(double t) const {
    double g = std::pow(p * t + q, 0.25);
    return {c * g * g, g};
  }
  Vec<double> state_dot(double t) const {
    double g = std::pow(p * t + q, 0.25);
    double gdot = 0.25 * p * std::pow(g, -3.0);
    return {2 * c * g * gdot, gdot};
  }
  Vec<double> state_ddot(double t) const {
    double g = std::pow(p * t + q, 0.25);
    double gdot = 0.25 * p * std::pow(g, -3.0);
    double gddot = -0.75 * p * std::pow(g, -4.0) * gdot;
    return {2 * c * (gdot * gdot + g * gddot), gddot};
  }
};

// g = (1 + sin u)^(1/2), h = (1 - sin u)^(1/2) against t = u/2 + sin(2u)/4;
// conserves g^2 + h^2 = 2.
struct SineSolution {
  static double t_of_u(double u) { return 0.5 * u + 0.25 * std::sin(2 * u); }
  static double u_of_t(double t) {
    double u = t;
    for (int it = 0; it < 80; ++it) {
      double c = std::cos(u);
      double step = (t_of_u(u) - t) / std::max(c * c, 1e-14);
      u -= step;
      if (std::fabs(step) < 1e-15) break;
    }
    return u;
  }
  Vec<double> state_u(double u) const {
    return {std::sqrt(1 + std::sin(u)), std::sqrt(1 - std::sin(u))};
  }
  Vec<double> state(double t) const { return state_u(u_of_t(t)); }
  Vec<double> state_dot(double t) const {
    auto s = state(t);
    return {1 / (2 * s[0] * s[0] * s[1]), -1 / (2 * s[0] * s[1] * s[1])};
  }
  Vec<double> state_ddot(double t) const {
    auto s = state(t);
    auto sd = state_dot(t);
    double g = s[0], h = s[1], gd = sd[0], hd = sd[1];
    double D = 2 * g * g * h, H = 2 * g * h * h;
    double Dd = 4 * g * gd * h + 2 * g * g * hd;
    double Hd = 2 * gd * h * h + 4 * g * h * hd;
    return {-Dd / (D * D), Hd / (H * H)};
  }
};

// the two workhorse ansaetze on (0,0,0,12,13)
inline DiagonalAnsatz power_law_ansatz() {
  auto g = parse_salamon("(0,0,0,12,13)").to_numeric();
  auto s = parse_su2<Rational>(5, "1", "35+24", "32+45", "34+52").to_numeric();
  return {g, s, {{1, 0}, {0, 1}, {0, 1}, {0, -1}, {0, -1}}};
}

inline DiagonalAnsatz sine_ansatz() {
  auto g = parse_salamon("(0,0,0,12,13)").to_numeric();
  auto s = parse_su2<Rational>(5, "1", "35-24", "-32+45", "34-52").to_numeric();
  return {g, s, {{1, 1}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}}};
}

// 6-dimensional data the curvature machinery consumes: the five scale
// factors and their time derivatives at a sample time.
struct CoframePoint {
  double t = 0.0;
  Vec<double> sigma;
  Vec<double> sigma_dot;
};

inline CoframePoint coframe_point(const DiagonalAnsatz& a, double t, const Vec<double>& s,
                                  const Vec<double>& sdot) {
  CoframePoint p;
  p.t = t;
  p.sigma = detail::index_scales(a, s);
  p.sigma_dot = Vec<double>(p.sigma.size(), 0.0);
  for (std::size_t i = 0; i < p.sigma.size(); ++i) {
    double rate = 0.0;
    for (int g = 0; g < a.groups(); ++g) rate += a.exponents[i][g] * sdot[g] / s[g];
    p.sigma_dot[i] = p.sigma[i] * rate;
  }
  return p;
}

inline std::vector<CoframePoint> coframe_family(const DiagonalAnsatz& a,
                                                const FlowTrajectory& traj) {
  std::vector<CoframePoint> fam;
  for (auto& st : traj.states) fam.push_back(coframe_point(a, st.t, st.s, st.sdot));
  return fam;
}

// extend the algebra by a closed generator playing dt
inline LieAlgebra<double> cylinder_algebra(const LieAlgebra<double>& g) {
  LieAlgebra<double> c;
  c.dim = g.dim + 1;
  for (auto& f : g.de) c.de.push_back(detail::widen(f, c.dim));
  c.de.push_back(Form<double>(c.dim, 2));
  return c;
}

struct LiftResiduals {
  double dw = 0.0, dpsi_plus = 0.0, dpsi_minus = 0.0;
  double sup() const { return std::max({dw, dpsi_plus, dpsi_minus}); }
};

// closedness of the lifted structure on the cylinder, using
// d(phi) = d_M(phi) + dt ^ (d/dt phi)
inline LiftResiduals lift_residuals(const DiagonalAnsatz& a, const Vec<double>& s,
                                    const Vec<double>& sdot) {
  auto g6 = cylinder_algebra(a.algebra);
  auto n = su3_lift(at_state(a, s));
  int d6 = g6.dim;
  Form<double> e6 = Form<double>::generator(d6, d6);
  auto rate = [&](const Form<double>& base) {
    return wedge(e6, detail::widen(detail::scale_form_dt(a, s, sdot, base), d6));
  };
  LiftResiduals r;
  r.dw = sup_coeff(g6.d(n.omega) + rate(a.base.omega1));
  r.dpsi_plus = sup_coeff(g6.d(n.psi_plus) + rate(wedge(a.base.omega2, a.base.alpha)));
  r.dpsi_minus = sup_coeff(g6.d(n.psi_minus) + rate(wedge(a.base.omega3, a.base.alpha)));
  return r;
}

// one row per grid point: t, the scalings, the matching residual
inline std::string export_trajectory(const FlowTrajectory& traj) {
  std::string out;
  char buf[64];
  for (auto& st : traj.states) {
    std::snprintf(buf, sizeof buf, "%.17g", st.t);
    out += buf;
    for (double v : st.s) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, " %.17g", st.residual);
    out += buf;
    out += '\n';
  }
  return out;
}

}  // namespace hypo
