#include "geomlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace geomlab {

namespace {

std::vector<double> schedule(const RaySpec& ray) {
  std::vector<double> ts;
  double t = ray.t0;
  for (int k = 0; k < ray.count; ++k, t *= ray.ratio) ts.push_back(t);
  return ts;
}

LimitKind worse(LimitKind a, LimitKind b) {
  auto rank = [](LimitKind k) {
    switch (k) {
      case LimitKind::Extends: return 0;
      case LimitKind::Vanishes: return 1;
      case LimitKind::Inconclusive: return 2;
      case LimitKind::Diverges: return 3;
    }
    return 3;
  };
  return rank(a) >= rank(b) ? a : b;
}

bool finite_kind(LimitKind k) {
  return k == LimitKind::Extends || k == LimitKind::Vanishes;
}

bool references_coord(const ExprAst& ast, int index) {
  switch (ast.kind) {
    case ExprAst::Kind::Coord: return ast.coord == index;
    case ExprAst::Kind::Unary: return references_coord(*ast.a, index);
    case ExprAst::Kind::Binary:
      return references_coord(*ast.a, index) || references_coord(*ast.b, index);
    default: return false;
  }
}

bool is_coordinate_zero(const ExprAst& ast) {
  return ast.kind == ExprAst::Kind::Coord && ast.coord == 0;
}

}  // namespace

ExtensionTestResult check_projective_extension(const MetricSpec& spec,
                                               const std::vector<RaySpec>& rays,
                                               const AnalysisConfig& config) {
  const int m = spec.dim;
  ExtensionTestResult out;
  out.passes = true;

  // one verdict slot per independent Psi component (k, i <= j)
  std::vector<ComponentVerdict> comps;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        comps.push_back({"Psi^" + std::to_string(k) + "_" + std::to_string(i) +
                             std::to_string(j),
                         LimitKind::Extends, 0.0, 0.0});

  for (const auto& ray : rays) {
    auto ts = schedule(ray);
    std::vector<ChristoffelData> ch;
    ch.reserve(ts.size());
    for (double t : ts) ch.push_back(levi_civita(spec, ray.at(t)));

    // Psi is a difference of Gamma-sized terms: components below the
    // cancellation noise of Gamma count as identically zero.
    double gscale = 0.0;
    for (const auto& cd : ch)
      for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            gscale = std::max(gscale, std::abs(cd.gamma_full(k, i, j)));
    const double floor = 1e-9 * gscale;

    std::size_t c = 0;
    for (int k = 0; k < m; ++k) {
      for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j, ++c) {
          std::vector<Sample> samples(ts.size());
          for (std::size_t s = 0; s < ts.size(); ++s)
            samples[s] = {ts[s], ch[s].tracefree(k, i, j)};
          ExtensionVerdict v = classify_limit(samples, config.extend_tolerance,
                                              config.degree, floor);
          LimitKind agg = worse(comps[c].kind, v.kind);
          if (agg != comps[c].kind) comps[c].kind = agg;
          if (v.kind == LimitKind::Extends)
            comps[c].boundary_value = v.boundary_value;
          if (v.kind == LimitKind::Diverges)
            comps[c].rate = std::max(comps[c].rate, v.rate);
        }
      }
    }
  }

  for (const auto& cv : comps) {
    if (!finite_kind(cv.kind)) out.passes = false;
    out.worst_divergence_rate = std::max(out.worst_divergence_rate, cv.rate);
  }
  out.components = std::move(comps);
  return out;
}

ConnectionNonextensionResult check_connection_nonextension(
    const MetricSpec& spec, const std::vector<RaySpec>& rays,
    const AnalysisConfig& config) {
  const int m = spec.dim;
  ConnectionNonextensionResult out;
  for (int i = 0; i < m; ++i)
    out.components.push_back({"gamma_" + std::to_string(i), LimitKind::Extends, 0.0, 0.0});

  for (const auto& ray : rays) {
    auto ts = schedule(ray);
    std::vector<Vector> traces;
    traces.reserve(ts.size());
    for (double t : ts) traces.push_back(levi_civita(spec, ray.at(t)).trace);
    for (int i = 0; i < m; ++i) {
      std::vector<Sample> samples(ts.size());
      for (std::size_t s = 0; s < ts.size(); ++s) samples[s] = {ts[s], traces[s](i)};
      ExtensionVerdict v =
          classify_limit(samples, config.extend_tolerance, config.degree);
      out.components[i].kind = worse(out.components[i].kind, v.kind);
      if (v.kind == LimitKind::Extends)
        out.components[i].boundary_value = v.boundary_value;
      if (v.kind == LimitKind::Diverges) {
        out.gamma_diverges = true;
        out.components[i].rate = std::max(out.components[i].rate, v.rate);
        out.rate = std::max(out.rate, v.rate);
      }
    }
  }
  return out;
}

ScalarBoundaryResult scalar_boundary_value(const MetricSpec& spec,
                                           const std::vector<RaySpec>& rays,
                                           const AnalysisConfig& config) {
  ScalarBoundaryResult out;
  out.extends = true;
  for (const auto& ray : rays) {
    auto ts = schedule(ray);
    std::vector<Sample> samples(ts.size());
    double maxabs = 0.0;
    for (std::size_t s = 0; s < ts.size(); ++s) {
      double S = curvature(spec, ray.at(ts[s])).scalar;
      samples[s] = {ts[s], S};
      maxabs = std::max(maxabs, std::abs(S));
    }
    if (maxabs < config.scalar_zero_tolerance) {
      // numerically zero scalar curvature extends with boundary value 0
      out.values.push_back(0.0);
      continue;
    }
    ExtensionVerdict v =
        classify_limit(samples, config.extend_tolerance, config.degree);
    if (v.kind == LimitKind::Extends) {
      out.values.push_back(v.boundary_value);
    } else if (v.kind == LimitKind::Vanishes) {
      out.values.push_back(0.0);
    } else {
      out.extends = false;
      out.values.push_back(std::nan(""));
    }
  }

  if (out.extends && !out.values.empty()) {
    double lo = *std::min_element(out.values.begin(), out.values.end());
    double hi = *std::max_element(out.values.begin(), out.values.end());
    double scale = std::max(std::abs(lo), std::abs(hi));
    out.locally_constant = (hi - lo) < 1e-4 * std::max(1.0, scale);
    double zero_tol = std::max(1e-3, 1e-4 * scale);
    out.nowhere_vanishing = std::all_of(out.values.begin(), out.values.end(),
                                        [&](double v) { return std::abs(v) > zero_tol; });
  }
  return out;
}

MainTheoremResult order2_verdict(const MetricSpec& spec,
                                 const std::vector<RaySpec>& rays,
                                 const AnalysisConfig& config) {
  const int m = spec.dim;
  MainTheoremResult out;

  ExtensionTestResult ext = check_projective_extension(spec, rays, config);
  ConnectionNonextensionResult conn =
      check_connection_nonextension(spec, rays, config);
  ScalarBoundaryResult scal = scalar_boundary_value(spec, rays, config);
  out.hypotheses = {ext.passes, conn.gamma_diverges,
                    scal.extends && scal.nowhere_vanishing};

  DensityRep tau = tau_density(spec);
  out.order = order_estimate(tau.rep, rays, config.extend_tolerance, config.degree);

  // direct route: the dr/(2r)-modified connection must extend component-wise
  out.direct_route_extends = true;
  for (const auto& ray : rays) {
    auto ts = schedule(ray);
    std::vector<Tensor3> gammahat;
    gammahat.reserve(ts.size());
    double gscale = 0.0;
    for (double t : ts) {
      Vector p = ray.at(t);
      ChristoffelData ch = levi_civita(spec, p);
      for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            gscale = std::max(gscale, std::abs(ch.gamma_full(k, i, j)));
      double r = spec.defining_value(p);
      Vector upsilon = spec.defining_gradient(p) / (2.0 * r);
      gammahat.push_back(projective_change(ch, upsilon).gamma_full);
    }
    // Gamma-hat is a cancellation of Gamma-sized terms; see extension test.
    const double floor = 1e-9 * gscale;
    for (int k = 0; k < m && out.direct_route_extends; ++k) {
      for (int i = 0; i < m && out.direct_route_extends; ++i) {
        for (int j = i; j < m; ++j) {
          std::vector<Sample> samples(ts.size());
          for (std::size_t s = 0; s < ts.size(); ++s)
            samples[s] = {ts[s], gammahat[s](k, i, j)};
          ExtensionVerdict v = classify_limit(samples, config.extend_tolerance,
                                              config.degree, floor);
          if (!finite_kind(v.kind)) {
            out.direct_route_extends = false;
            break;
          }
        }
      }
    }
  }

  bool lemma_route = out.order.ok && out.order.k == 1;
  out.routes_consistent = (lemma_route == out.direct_route_extends);
  out.conclusion_order2 = out.hypotheses[0] && out.hypotheses[1] &&
                          out.hypotheses[2] && lemma_route &&
                          out.direct_route_extends;
  return out;
}

AsymptoticsResult asymptotic_form(const MetricSpec& spec,
                                  const AnalysisConfig& config) {
  const int m = spec.dim;
  const int n = spec.n();
  AsymptoticsResult out;

  if (!is_coordinate_zero(*spec.defining_function)) {
    out.note = "chart not adapted: defining function is not coordinate 0";
    return out;
  }
  if (spec.boundary_samples.empty()) {
    out.note = "no boundary samples";
    return out;
  }

  std::vector<RaySpec> rays = boundary_rays(spec, config.t0, config.ratio, config.count);

  std::vector<double> C_values, S_values;
  struct RayCache {
    std::vector<double> ts;
    std::vector<MetricAtPoint> g;
    std::vector<CurvatureData> cv;
  };
  std::vector<RayCache> caches;

  for (const auto& ray : rays) {
    RayCache cache;
    cache.ts = schedule(ray);
    for (double t : cache.ts) {
      Vector p = ray.at(t);
      cache.g.push_back(metric_at(spec, p));
      cache.cv.push_back(curvature(spec, p));
    }
    std::vector<Sample> c_samples(cache.ts.size()), s_samples(cache.ts.size());
    for (std::size_t s = 0; s < cache.ts.size(); ++s) {
      double rho = ray.at(cache.ts[s])(0);
      c_samples[s] = {cache.ts[s], rho * rho * cache.g[s].g_value(0, 0)};
      s_samples[s] = {cache.ts[s], cache.cv[s].scalar};
    }
    ExtensionVerdict vc =
        classify_limit(c_samples, config.extend_tolerance, config.degree);
    ExtensionVerdict vs =
        classify_limit(s_samples, config.extend_tolerance, config.degree);
    if (vc.kind != LimitKind::Extends || vs.kind != LimitKind::Extends) {
      out.note = "not in asymptotic form: rho^2 g_00 or S has no boundary limit";
      return out;
    }
    C_values.push_back(vc.boundary_value);
    S_values.push_back(vs.boundary_value);
    caches.push_back(std::move(cache));
  }

  double C_sum = 0.0, S_sum = 0.0;
  for (double c : C_values) C_sum += c;
  for (double s : S_values) S_sum += s;
  out.C_measured = C_sum / C_values.size();
  double S_boundary = S_sum / S_values.size();
  out.C_predicted = -n * (n + 1.0) / (4.0 * S_boundary);

  out.tracefree_ricci_extends = true;
  for (std::size_t r = 0; r < rays.size(); ++r) {
    const RayCache& cache = caches[r];
    Matrix h(m, m);
    for (int a = 0; a < m; ++a) {
      for (int b = a; b < m; ++b) {
        std::vector<Sample> samples(cache.ts.size());
        for (std::size_t s = 0; s < cache.ts.size(); ++s) {
          double rho = rays[r].at(cache.ts[s])(0);
          double gab = cache.g[s].g_value(a, b);
          if (a == 0 && b == 0) gab -= out.C_measured / (rho * rho);
          samples[s] = {cache.ts[s], rho * gab};
        }
        ExtensionVerdict v =
            classify_limit(samples, config.extend_tolerance, config.degree);
        h(a, b) = h(b, a) = v.boundary_value;
      }
    }
    out.h_boundary.push_back(h);

    Matrix block = h.bottomRightCorner(n, n);
    double d = std::abs(block.determinant());
    if (d > 0) out.conformal_class_rep.push_back(block / std::pow(d, 1.0 / n));
    else out.conformal_class_rep.push_back(block);

    // trace-free Ricci extends; Ric_00 itself blows up. The difference of
    // two Ricci-sized terms carries cancellation noise, hence the floor.
    double ricscale = 0.0;
    for (const auto& cv : cache.cv)
      ricscale = std::max(ricscale, cv.ricci.cwiseAbs().maxCoeff());
    const double tf_floor = 1e-9 * ricscale;
    for (int a = 0; a < m; ++a) {
      for (int b = a; b < m; ++b) {
        std::vector<Sample> samples(cache.ts.size());
        for (std::size_t s = 0; s < cache.ts.size(); ++s) {
          double tf = cache.cv[s].ricci(a, b) -
                      cache.cv[s].scalar / (n + 1.0) * cache.g[s].g_value(a, b);
          samples[s] = {cache.ts[s], tf};
        }
        ExtensionVerdict v = classify_limit(samples, config.extend_tolerance,
                                            config.degree, tf_floor);
        if (!finite_kind(v.kind)) out.tracefree_ricci_extends = false;
      }
    }
    {
      std::vector<Sample> samples(cache.ts.size());
      for (std::size_t s = 0; s < cache.ts.size(); ++s)
        samples[s] = {cache.ts[s], cache.cv[s].ricci(0, 0)};
      ExtensionVerdict v =
          classify_limit(samples, config.extend_tolerance, config.degree);
      if (v.kind == LimitKind::Diverges) {
        out.ricci_diverges = true;
        out.ricci_divergence_rate = std::max(out.ricci_divergence_rate, v.rate);
      }
    }

    // interior Einstein magnitude at the outermost sample
    const MetricAtPoint& g0 = caches[r].g.front();
    const CurvatureData& cv0 = caches[r].cv.front();
    Matrix tf0 = cv0.ricci - cv0.scalar / (n + 1.0) * g0.g_value;
    out.max_tracefree_ricci =
        std::max(out.max_tracefree_ricci, tf0.cwiseAbs().maxCoeff());
  }

  out.available = true;
  return out;
}

ConformalInvarianceResult conformal_class_invariance(
    const MetricSpec& adapted_spec, const ExprPtr& rescale,
    const AnalysisConfig& config) {
  const int m = adapted_spec.dim;
  const int n = adapted_spec.n();

  if (!is_coordinate_zero(*adapted_spec.defining_function))
    throw std::runtime_error("conformal invariance check requires an adapted chart");
  if (references_coord(*rescale, 0))
    throw std::runtime_error("rescaling function must not depend on coordinate 0");

  AsymptoticsResult base = asymptotic_form(adapted_spec, config);
  if (!base.available)
    throw std::runtime_error("asymptotic form unavailable: " + base.note);

  ConformalInvarianceResult out;
  for (std::size_t bi = 0; bi < adapted_spec.boundary_samples.size(); ++bi) {
    Vector b = adapted_spec.boundary_point(adapted_spec.boundary_samples[bi]);

    // pullback metric in the primed chart (rho', y): rho = rho' exp(-u(y))
    auto pulled_back = [&](const Vector& pprime) {
      std::vector<double> pv(pprime.data(), pprime.data() + m);
      auto seeds = Jet2::seeds(pv);
      Jet2 u = eval<Jet2>(*rescale, seeds, adapted_spec.params);
      Jet2 rho = seeds[0] * exp_s(neg(u));
      // Jacobian dq_a/dp'_c: q_0 = rho, q_a = y_a for a >= 1
      Matrix J = Matrix::Identity(m, m);
      for (int c = 0; c < m; ++c) J(0, c) = rho.grad()(c);
      Vector q(m);
      q(0) = rho.value();
      for (int a = 1; a < m; ++a) q(a) = pprime(a);
      Matrix g = metric_at(adapted_spec, q).g_value;
      return Matrix(J.transpose() * g * J);
    };

    RaySpec ray;
    ray.boundary_point = b;
    ray.inward_direction = Vector::Unit(m, 0);
    ray.t0 = config.t0;
    ray.ratio = config.ratio;
    ray.count = config.count;

    auto ts = schedule(ray);
    Matrix hp(m, m);
    for (int a = 1; a < m; ++a) {
      for (int c = a; c < m; ++c) {
        std::vector<Sample> samples(ts.size());
        for (std::size_t s = 0; s < ts.size(); ++s) {
          Vector p = ray.at(ts[s]);
          samples[s] = {ts[s], p(0) * pulled_back(p)(a, c)};
        }
        ExtensionVerdict v =
            classify_limit(samples, config.extend_tolerance, config.degree);
        hp(a, c) = hp(c, a) = v.boundary_value;
      }
    }

    const Matrix& h = base.h_boundary[bi];
    std::vector<double> pbv(b.data(), b.data() + m);
    double expected = std::exp(eval_at(*rescale, pbv, adapted_spec.params));

    double hscale = h.bottomRightCorner(n, n).cwiseAbs().maxCoeff();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int a = 1; a < m; ++a) {
      for (int c = a; c < m; ++c) {
        if (std::abs(h(a, c)) < 1e-8 * hscale) continue;
        double ratio = hp(a, c) / h(a, c);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        out.max_deviation_from_expected =
            std::max(out.max_deviation_from_expected,
                     std::abs(ratio - expected) / expected);
      }
    }
    if (std::isfinite(lo) && lo != 0.0)
      out.max_ratio_spread = std::max(out.max_ratio_spread, (hi - lo) / std::abs(lo));
  }
  return out;
}

AnalysisReport full_report(const MetricSpec& spec, const MetricSpec* adapted_spec,
                           const AnalysisConfig& config) {
  AnalysisReport report;
  report.metric_name = spec.name;
  report.dim = spec.dim;

  std::vector<RaySpec> rays;
  try {
    rays = boundary_rays(spec, config.t0, config.ratio, config.count);
  } catch (const std::exception& e) {
    report.errors.push_back(std::string("ray construction: ") + e.what());
    return report;
  }

  auto guard = [&report](const char* stage, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      report.errors.push_back(std::string(stage) + ": " + e.what());
    }
  };

  guard("extension_test", [&] {
    report.extension_test = check_projective_extension(spec, rays, config);
  });
  guard("connection_nonextension", [&] {
    report.connection_nonextension =
        check_connection_nonextension(spec, rays, config);
  });
  guard("scalar_boundary", [&] {
    report.scalar_boundary = scalar_boundary_value(spec, rays, config);
  });
  guard("main_theorem", [&] {
    report.main_theorem = order2_verdict(spec, rays, config);
  });

  guard("asymptotics", [&] {
    if (adapted_spec) {
      report.asymptotics = asymptotic_form(*adapted_spec, config);
    } else {
      report.asymptotics = asymptotic_form(spec, config);
    }
  });

  guard("tractor_checks", [&] {
    double worst = 0.0;
    for (const auto& ray : rays) {
      for (double t : schedule(ray)) {
        Vector p = ray.at(t);
        TractorS2 L = build_L(spec, p);
        TractorDetResult d = tractor_det(L, spec, p);
        double S = curvature(spec, p).scalar;
        worst = std::max(worst,
                         std::abs(d.det - d.predicted) / std::max(1.0, std::abs(S)));
      }
    }
    report.tractor_checks.det_identity_residual = worst;
  });

  guard("phi_middle", [&] {
    if (report.main_theorem.hypotheses[2]) {
      PhiMiddleSlotResult r =
          phi_middle_slot_check(spec, rays, config.extend_tolerance, config.degree);
      report.tractor_checks.phi_middle_residual = r.max_residual;
    } else {
      report.tractor_checks.phi_middle_note =
          "skipped: scalar curvature hypothesis fails, Phi is degenerate";
    }
  });

  return report;
}

}  // namespace geomlab
