#include "geomlab/zoo.hpp"

#include <cmath>
#include <stdexcept>

namespace geomlab {
namespace zoo {

namespace {

std::vector<std::string> coord_names(int m) {
  std::vector<std::string> out;
  for (int i = 0; i < m; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

std::vector<std::string> param_names(const std::map<std::string, double>& params) {
  std::vector<std::string> out;
  for (const auto& [k, v] : params) out.push_back(k);
  return out;
}

std::string squared_norm(int m) {
  std::string q = "(";
  for (int i = 0; i < m; ++i) {
    if (i) q += "+";
    q += "x" + std::to_string(i) + "^2";
  }
  return q + ")";
}

/// Hyperspherical unit-vector chart in angles u1..un.
std::vector<std::string> sphere_chart(int m) {
  std::vector<std::string> out;
  std::string sines;  // running product sin(u1)*...*sin(ui)
  for (int i = 0; i < m; ++i) {
    std::string e;
    if (i < m - 1) {
      if (!sines.empty()) e = sines + "*";
      e += "cos(u" + std::to_string(i + 1) + ")";
      if (!sines.empty()) sines += "*";
      sines += "sin(u" + std::to_string(i + 1) + ")";
    } else {
      e = sines;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<std::string> boundary_param_names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("u" + std::to_string(i));
  return out;
}

std::vector<std::vector<double>> sample_tuples(int n, int count = 5) {
  static const double vals[] = {0.7, 1.2, 1.7, 2.2, 0.9, 1.5, 2.0, 1.05, 1.85, 0.65};
  std::vector<std::vector<double>> out;
  for (int k = 0; k < count; ++k) {
    std::vector<double> tup(n);
    for (int j = 0; j < n; ++j) tup[j] = vals[(3 * k + 2 * j) % 10];
    out.push_back(tup);
  }
  return out;
}

/// Angular prefactor of the a-th hyperspherical angle: prod_{b<a} sin(x_b)^2.
std::string angle_prefactor(int a) {
  std::string pref;
  for (int b = 1; b < a; ++b) {
    if (!pref.empty()) pref += "*";
    pref += "sin(x" + std::to_string(b) + ")^2";
  }
  return pref;
}

MetricSpec build(const std::string& name, int m,
                 const std::map<std::string, double>& params,
                 const std::function<std::string(int, int)>& component,
                 const std::string& defining,
                 const std::vector<std::string>& bchart,
                 std::pair<int, int> signature) {
  MetricSpec spec;
  spec.name = name;
  spec.dim = m;
  spec.coords = coord_names(m);
  spec.params = params;
  auto pnames = param_names(params);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      spec.components.push_back(parse(component(i, j), spec.coords, pnames));
  spec.defining_function = parse(defining, spec.coords, pnames);
  spec.boundary_params = boundary_param_names(m - 1);
  for (const auto& e : bchart)
    spec.boundary_chart.push_back(parse(e, spec.boundary_params, pnames));
  spec.boundary_samples = sample_tuples(m - 1);
  spec.signature = signature;
  return spec;
}

std::map<std::string, double> with_defaults(
    std::map<std::string, double> overrides,
    const std::map<std::string, double>& defaults) {
  for (const auto& [k, v] : defaults) overrides.emplace(k, v);
  return overrides;
}

void check_dim(int m) {
  if (m < 2 || m > 5)
    throw std::runtime_error("zoo: dimension must be in 2..5");
}

}  // namespace

std::vector<std::string> list() {
  return {"klein_hyperbolic", "poincare_hyperbolic", "flat_projective_infinity",
          "klein_de_sitter", "normal_form_non_einstein"};
}

MetricSpec instantiate(const std::string& name, int m,
                       const std::map<std::string, double>& params) {
  check_dim(m);
  const std::string q = squared_norm(m);

  if (name == "klein_hyperbolic") {
    // g_ij = d_ij/(1-|x|^2) + x_i x_j/(1-|x|^2)^2 on the unit ball
    auto comp = [&q](int i, int j) {
      std::string xi = "x" + std::to_string(i), xj = "x" + std::to_string(j);
      if (i == j) return "1/(1-" + q + ") + " + xi + "^2/(1-" + q + ")^2";
      return xi + "*" + xj + "/(1-" + q + ")^2";
    };
    return build(name, m, params, comp, "1-" + q, sphere_chart(m), {m, 0});
  }

  if (name == "poincare_hyperbolic") {
    auto comp = [&q](int i, int j) {
      if (i == j) return "4/(1-" + q + ")^2";
      return std::string("0");
    };
    return build(name, m, params, comp, "1-" + q, sphere_chart(m), {m, 0});
  }

  if (name == "flat_projective_infinity") {
    // pullback of the flat metric under x0 = 1/rho, x^j = y^j/rho.
    // The naive single-coordinate inversion x0 = 1/rho (keeping x^j = y^j)
    // does not keep geodesics straight and its Psi blows up; only the
    // projective scaling above extends.
    auto comp = [m](int i, int j) -> std::string {
      if (i == 0 && j == 0) {
        std::string s = "(1";
        for (int a = 1; a < m; ++a) s += "+x" + std::to_string(a) + "^2";
        return s + ")/x0^4";
      }
      if (i == 0) return "-x" + std::to_string(j) + "/x0^3";
      if (i == j) return "1/x0^2";
      return "0";
    };
    std::vector<std::string> bchart = {"0"};
    for (int a = 1; a < m; ++a) bchart.push_back("u" + std::to_string(a));
    return build(name, m, params, comp, "x0", bchart, {m, 0});
  }

  if (name == "klein_de_sitter") {
    // Beltrami chart of de Sitter space on |x| > 1; one timelike direction
    auto comp = [&q](int i, int j) {
      std::string xi = "x" + std::to_string(i), xj = "x" + std::to_string(j);
      if (i == j) return "1/(" + q + "-1) - " + xi + "^2/(" + q + "-1)^2";
      return "-" + xi + "*" + xj + "/(" + q + "-1)^2";
    };
    return build(name, m, params, comp, q + "-1", sphere_chart(m), {m - 1, 1});
  }

  if (name == "normal_form_non_einstein") {
    auto p = with_defaults(params, {{"C", 0.25}, {"amp0", 0.3}, {"amp1", 0.2}});
    auto comp = [](int i, int j) -> std::string {
      if (i == 0 && j == 0) return "C/x0^2";
      if (i != j) return "0";
      std::string y = "x" + std::to_string(i);
      return "(1 + amp0*sin(" + y + ")^2 + x0^2*amp1*cos(" + y + "))/x0";
    };
    std::vector<std::string> bchart = {"0"};
    for (int a = 1; a < m; ++a) bchart.push_back("u" + std::to_string(a));
    return build(name, m, p, comp, "x0", bchart, {m, 0});
  }

  throw std::runtime_error("zoo: unknown entry '" + name + "'");
}

std::optional<MetricSpec> adapted(const std::string& name, int m,
                                  const std::map<std::string, double>& params) {
  check_dim(m);

  if (name == "klein_hyperbolic") {
    // radial chart x = (1-rho) omega(y): g = drho^2/(rho(2-rho))^2
    //                                      + (1-rho)^2/(rho(2-rho)) domega^2
    auto comp = [](int i, int j) -> std::string {
      if (i != j) return "0";
      if (i == 0) return "1/(x0*(2-x0))^2";
      std::string pref = angle_prefactor(i);
      std::string base = "(1-x0)^2/(x0*(2-x0))";
      return pref.empty() ? base : base + "*" + pref;
    };
    std::vector<std::string> bchart = {"0"};
    for (int a = 1; a < m; ++a) bchart.push_back("u" + std::to_string(a));
    MetricSpec spec = build(name + "_adapted", m, params, comp, "x0", bchart, {m, 0});
    return spec;
  }

  if (name == "klein_de_sitter") {
    // radial chart x = (1+rho) omega(y) on the exterior region
    auto comp = [](int i, int j) -> std::string {
      if (i != j) return "0";
      if (i == 0) return "-1/(x0*(2+x0))^2";
      std::string pref = angle_prefactor(i);
      std::string base = "(1+x0)^2/(x0*(2+x0))";
      return pref.empty() ? base : base + "*" + pref;
    };
    std::vector<std::string> bchart = {"0"};
    for (int a = 1; a < m; ++a) bchart.push_back("u" + std::to_string(a));
    MetricSpec spec =
        build(name + "_adapted", m, params, comp, "x0", bchart, {m - 1, 1});
    return spec;
  }

  if (name == "flat_projective_infinity" || name == "normal_form_non_einstein") {
    return instantiate(name, m, params);  // chart is already adapted
  }

  return std::nullopt;
}

Expected expected(const std::string& name, int m,
                  const std::map<std::string, double>& params) {
  check_dim(m);
  const int n = m - 1;
  Expected e;

  if (name == "klein_hyperbolic") {
    e.extension_passes = true;   // Psi vanishes identically (pure-trace form)
    e.gamma_diverges = true;     // gamma_i = (n+2) x_i/(1-|x|^2)
    e.scalar_extends = true;
    e.scalar_boundary = -double(m) * (m - 1);
    e.hypotheses = {{true, true, true}};
    e.order_k = 1;               // tau rep = 1-|x|^2
    e.alpha = 2.0;
    e.conclusion_order2 = true;
    e.C = 0.25;
    e.einstein = true;
    e.tracefree_ricci_extends = true;
    e.ricci_diverges = true;
    e.provenance =
        "constant-curvature closed forms, cross-checked against the "
        "finite-difference Levi-Civita/curvature oracle";
    return e;
  }

  if (name == "poincare_hyperbolic") {
    e.extension_passes = false;  // Psi carries a -d_ij d^k log-factor term
    e.psi_divergence_rate = 1.0;
    e.gamma_diverges = true;
    e.provenance = "finite-difference oracle on the conformal factor";
    return e;
  }

  if (name == "flat_projective_infinity") {
    e.extension_passes = true;   // straight lines stay straight
    e.gamma_diverges = true;     // gamma_0 ~ -(n+2)/rho
    e.scalar_extends = true;
    e.scalar_boundary = 0.0;
    e.hypotheses = {{true, true, false}};
    e.order_k = 2;               // tau rep = rho^2 (Jacobian of the chart)
    e.alpha = 1.0;
    e.conclusion_order2 = false;
    e.einstein = true;           // flat
    e.provenance = "coordinate-change Jacobian computation, oracle-checked";
    return e;
  }

  if (name == "klein_de_sitter") {
    e.extension_passes = true;
    e.gamma_diverges = true;
    e.scalar_extends = true;
    e.scalar_boundary = double(m) * (m - 1);
    e.hypotheses = {{true, true, true}};
    e.order_k = 1;
    e.alpha = 2.0;
    e.conclusion_order2 = true;
    e.C = -0.25;
    e.einstein = true;
    e.provenance = "Beltrami chart closed forms, oracle-checked";
    return e;
  }

  if (name == "normal_form_non_einstein") {
    auto p = with_defaults(params, {{"C", 0.25}});
    e.extension_passes = true;
    e.gamma_diverges = true;
    e.scalar_extends = true;
    e.scalar_boundary = -double(n) * (n + 1) / (4.0 * p.at("C"));
    e.hypotheses = {{true, true, true}};
    e.order_k = 1;
    e.alpha = 2.0;
    e.conclusion_order2 = true;
    e.C = p.at("C");
    e.einstein = false;
    e.tracefree_ricci_extends = true;
    e.ricci_diverges = true;
    e.provenance =
        "pipeline run at two sampling resolutions with agreement required; "
        "boundary scalar value from the measured asymptotic constant";
    return e;
  }

  throw std::runtime_error("zoo: unknown entry '" + name + "'");
}

}  // namespace zoo
}  // namespace geomlab
