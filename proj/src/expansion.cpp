#include "ffexpand/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "ffexpand/graph.hpp"
#include "ffexpand/incidence.hpp"
#include "ffexpand/parallel.hpp"
#include "ffexpand/poly_io.hpp"
#include "ffexpand/random.hpp"

namespace ffexpand {

namespace {

const std::vector<std::string> kYZ{"y", "z"};

// Rank over F_q of the given rows (each a sparse exponent -> coefficient map).
std::size_t rank_of(const FieldCtx& k, const std::vector<MultiPoly>& rows) {
  std::map<Exponents, std::size_t> columns;
  for (const auto& r : rows) {
    for (const auto& [e, c] : r.terms()) columns.try_emplace(e, columns.size());
  }
  std::vector<std::vector<FieldElement>> m(rows.size(), std::vector<FieldElement>(columns.size(), k.zero()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [e, c] : rows[i].terms()) m[i][columns.at(e)] = c;
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < columns.size() && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col].index == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    const FieldElement inv = k.inv(m[rank][col]);
    for (auto& v : m[rank]) v = k.mul(v, inv);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][col].index == 0) continue;
      const FieldElement factor = m[r][col];
      for (std::size_t c = col; c < columns.size(); ++c) m[r][c] = k.sub(m[r][c], k.mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

IndependenceResult algebraically_independent(const MultiPoly& g_in, const MultiPoly& h_in, std::optional<unsigned> cap) {
  if (g_in.ctx().get() != h_in.ctx().get()) throw Error(ErrorKind::MixedFields, "G and H over different fields");
  std::vector<std::string> vars = g_in.variables();
  for (const auto& v : h_in.variables()) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  const MultiPoly g = g_in.with_variables(vars);
  const MultiPoly h = h_in.with_variables(vars);
  const unsigned deg_product =
      static_cast<unsigned>(std::max(g.total_degree(), 0) * std::max(h.total_degree(), 0));
  IndependenceResult out;
  out.cap = cap.value_or(std::max(1u, deg_product));
  out.cap_below_default = out.cap < deg_product;

  const FieldPtr& kp = g.ctx();
  std::vector<MultiPoly> g_pow{MultiPoly::constant(kp, kp->one(), vars)};
  std::vector<MultiPoly> h_pow{MultiPoly::constant(kp, kp->one(), vars)};
  for (unsigned i = 1; i <= out.cap; ++i) {
    g_pow.push_back(g_pow.back() * g);
    h_pow.push_back(h_pow.back() * h);
  }
  std::vector<MultiPoly> rows;
  for (unsigned i = 0; i <= out.cap; ++i) {
    for (unsigned j = 0; i + j <= out.cap; ++j) rows.push_back((g_pow[i] * h_pow[j]).with_variables(vars));
  }
  out.independent = rank_of(*kp, rows) == rows.size();
  return out;
}

FieldElement TernaryPolySpec::evaluate(FieldElement x, FieldElement y, FieldElement z) const {
  const FieldElement values[3] = {x, y, z};
  return assembled.evaluate_ordered(values);
}

TernaryPolySpec build_ternary(const SymmetricKernel& f, const MultiPoly& g_in, const MultiPoly& h_in,
                              const MultiPoly& j_in, std::optional<unsigned> independence_cap) {
  const FieldPtr& kp = f.ctx();
  for (const MultiPoly* p : {&g_in, &h_in, &j_in}) {
    if (p->ctx().get() != kp.get()) throw Error(ErrorKind::MixedFields, "G, H, J must share the kernel's field");
  }
  const MultiPoly g = g_in.with_variables(kYZ);
  const MultiPoly h = h_in.with_variables(kYZ);
  const MultiPoly j = j_in.with_variables({"x"});
  const IndependenceResult independence = algebraically_independent(g, h, independence_cap);
  if (!independence.independent) {
    throw Error(ErrorKind::DependentGH, "G and H must be algebraically independent; found a relation of degree <= " +
                                            std::to_string(independence.cap));
  }
  const auto& fv = f.poly().variables();
  const MultiPoly inner = f.poly().substitute({{fv[0], MultiPoly::variable(kp, "x")}, {fv[1], g}});
  const MultiPoly assembled = (inner + h + j).with_variables({"x", "y", "z"});
  TernaryPolySpec spec{f, g, h, j, assembled, independence};

  // Spot check of the substitution against direct evaluation.
  Rng rng(0x5eed);
  for (int t = 0; t < 8; ++t) {
    const FieldElement x{static_cast<std::uint32_t>(rng.below(kp->size()))};
    const FieldElement y{static_cast<std::uint32_t>(rng.below(kp->size()))};
    const FieldElement z{static_cast<std::uint32_t>(rng.below(kp->size()))};
    const FieldElement yz[2] = {y, z};
    const FieldElement xv[1] = {x};
    const FieldElement direct =
        kp->add(kp->add(f.evaluate(x, g.evaluate_ordered(yz)), h.evaluate_ordered(yz)), j.evaluate_ordered(xv));
    if (direct != spec.evaluate(x, y, z)) {
      throw Error(ErrorKind::InvalidArgument, "internal: assembled polynomial disagrees with its definition");
    }
  }
  return spec;
}

namespace {

// Distinct (G(y,z), H(y,z)) pairs, encoded g * q + h, ascending.
std::vector<std::uint64_t> phi_pairs(const MultiPoly& g_in, const MultiPoly& h_in, const ElementSet& ys,
                                     const ElementSet& zs) {
  const MultiPoly g = g_in.with_variables(kYZ);
  const MultiPoly h = h_in.with_variables(kYZ);
  const std::uint64_t q = g.ctx()->size();
  std::unordered_set<std::uint64_t> seen;
  for (auto y : ys) {
    for (auto z : zs) {
      const FieldElement yz[2] = {y, z};
      seen.insert(g.evaluate_ordered(yz).index * q + h.evaluate_ordered(yz).index);
    }
  }
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

PhiImageStats phi_image_stats(const MultiPoly& g, const MultiPoly& h, const ElementSet& ys, const ElementSet& zs) {
  PhiImageStats s;
  s.image_size = phi_pairs(g, h, ys, zs).size();
  const double denom = static_cast<double>(ys.size()) * static_cast<double>(zs.size());
  s.ratio = denom > 0 ? static_cast<double>(s.image_size) / denom : 0.0;
  return s;
}

ElementSet image_values(const TernaryPolySpec& p, const ElementSet& xs, const ElementSet& ys, const ElementSet& zs,
                        std::uint64_t evaluation_cap) {
  const double work = static_cast<double>(xs.size()) * static_cast<double>(ys.size()) * static_cast<double>(zs.size());
  if (work > static_cast<double>(evaluation_cap)) {
    throw Error(ErrorKind::SizeCapExceeded, "|X||Y||Z| exceeds the evaluation cap " + std::to_string(evaluation_cap));
  }
  const FieldCtx& k = *p.f.ctx();
  const std::uint64_t q = k.size();
  const auto pairs = phi_pairs(p.g, p.h, ys, zs);
  std::vector<char> hit(q, 0);
  std::unordered_map<std::uint32_t, FieldElement> f_row;
  for (auto x : xs) {
    const FieldElement xv[1] = {x};
    const FieldElement jx = p.j.evaluate_ordered(xv);
    f_row.clear();
    for (auto code : pairs) {
      const FieldElement gv{static_cast<std::uint32_t>(code / q)};
      const FieldElement hv{static_cast<std::uint32_t>(code % q)};
      auto it = f_row.find(gv.index);
      if (it == f_row.end()) it = f_row.emplace(gv.index, p.f.evaluate(x, gv)).first;
      hit[k.add(k.add(it->second, hv), jx).index] = 1;
    }
  }
  ElementSet out;
  for (std::uint32_t v = 0; v < q; ++v) {
    if (hit[v]) out.push_back({v});
  }
  return out;
}

std::uint64_t image_size(const TernaryPolySpec& p, const ElementSet& xs, const ElementSet& ys, const ElementSet& zs,
                         std::uint64_t evaluation_cap) {
  return image_values(p, xs, ys, zs, evaluation_cap).size();
}

namespace {

double graph_lambda2(const SymmetricKernel& f) {
  const IncidenceGraph g = build_graph(f);
  SpectrumOptions so;
  so.method = g.vertex_count() <= so.dense_cap ? SpectrumMethod::Exact : SpectrumMethod::Iterative;
  return spectrum(g, so).lambda2_abs;
}

}  // namespace

ExpansionReport expansion_report(const TernaryPolySpec& p, const ElementSet& xs, const ElementSet& ys,
                                 const ElementSet& zs, bool with_graph_crosscheck, std::optional<double> lambda2_abs) {
  const FieldPtr& kp = p.f.ctx();
  const FieldCtx& k = *kp;
  const std::uint64_t q = k.size();
  ExpansionReport r;
  r.q = q;
  r.size_x = xs.size();
  r.size_y = ys.size();
  r.size_z = zs.size();
  const ElementSet image = image_values(p, xs, ys, zs);
  r.image_size = image.size();
  r.missing = q - r.image_size;
  const double xyz = static_cast<double>(r.size_x) * static_cast<double>(r.size_y) * static_cast<double>(r.size_z);
  r.predicted_missing_scale = xyz > 0 ? std::pow(static_cast<double>(q), 11.0 / 3.0) / xyz : 0.0;
  r.ratio = r.predicted_missing_scale > 0 ? static_cast<double>(r.missing) / r.predicted_missing_scale : 0.0;
  const auto pairs = phi_pairs(p.g, p.h, ys, zs);
  r.phi_image = pairs.size();
  const double yz = static_cast<double>(r.size_y) * static_cast<double>(r.size_z);
  r.phi_ratio = yz > 0 ? static_cast<double>(r.phi_image) / yz : 0.0;

  if (with_graph_crosscheck) {
    std::vector<char> in_image(q, 0);
    for (auto v : image) in_image[v.index] = 1;
    std::vector<std::pair<FieldElement, FieldElement>> pts;
    for (auto x : xs) {
      const FieldElement xv[1] = {x};
      const FieldElement jx = p.j.evaluate_ordered(xv);
      for (std::uint32_t w = 0; w < q; ++w) {
        if (!in_image[w]) pts.emplace_back(x, k.sub(jx, {w}));
      }
    }
    const PointSet points(kp, std::move(pts));
    std::vector<std::pair<FieldElement, FieldElement>> params;
    for (auto code : pairs) {
      params.emplace_back(FieldElement{static_cast<std::uint32_t>(code / q)}, FieldElement{static_cast<std::uint32_t>(code % q)});
    }
    const CurveSet curves = CurveSet::kernel_curves(std::make_shared<const SymmetricKernel>(p.f), std::move(params));
    ZeroIncidenceCheck c;
    c.points = points.size();
    c.curves = curves.size();
    c.incidences = incidences(points, curves).incidences;
    c.lambda2_abs = lambda2_abs ? *lambda2_abs : graph_lambda2(p.f);
    c.product = static_cast<double>(c.points) * static_cast<double>(c.curves);
    c.bound = c.lambda2_abs * c.lambda2_abs * static_cast<double>(q) * static_cast<double>(q);
    c.bound_holds = c.product <= c.bound * (1 + 1e-12) + 1e-6;
    r.crosscheck = c;
  }
  return r;
}

TernaryPolySpec erdos_polynomial(const FieldPtr& ctx, unsigned k) {
  if (k < 2) throw Error(ErrorKind::InvalidArgument, "the preset needs k >= 2");
  if (ctx->characteristic() <= k) {
    throw Error(ErrorKind::CharTooSmall, "(x-y)^k + z requires char(F_q) > k, got char " +
                                             std::to_string(ctx->characteristic()) + " and k = " + std::to_string(k));
  }
  const SymmetricKernel f = validate_kernel(parse_poly("(u+v)^" + std::to_string(k), ctx, std::vector<std::string>{"u", "v"}));
  const MultiPoly g = parse_poly("-y", ctx, kYZ);
  const MultiPoly h = parse_poly("z", ctx, kYZ);
  const MultiPoly j(ctx, {"x"});
  return build_ternary(f, g, h, j);
}

ElementSet random_subset(const FieldCtx& k, std::uint64_t size, std::uint64_t seed) {
  Rng rng(seed);
  ElementSet out;
  for (auto i : rng.sample(k.size(), std::min<std::uint64_t>(size, k.size()))) out.push_back({static_cast<std::uint32_t>(i)});
  return out;
}

ElementSet whole_field(const FieldCtx& k) { return k.enumerate(); }

ErdosSweep erdos_preset(const FieldPtr& ctx, unsigned k, const std::vector<double>& densities_in, std::uint64_t trials,
                        std::uint64_t seed, bool with_graph_crosscheck, unsigned threads) {
  const TernaryPolySpec p = erdos_polynomial(ctx, k);
  const std::uint64_t q = ctx->size();
  ErdosSweep sweep;
  sweep.q = q;
  sweep.k = k;
  std::vector<double> densities = densities_in;
  std::sort(densities.begin(), densities.end());
  std::optional<double> lambda2;
  if (with_graph_crosscheck) lambda2 = graph_lambda2(p.f);

  const std::size_t cells = densities.size() * trials;
  sweep.trials.resize(cells);
  parallel_for(cells, threads, [&](std::size_t cell) {
    const std::size_t di = cell / trials;
    const std::uint64_t t = cell % trials;
    const double d = densities[di];
    const std::uint64_t size =
        std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(d * static_cast<double>(q))), 1, q);
    const std::uint64_t base = derive_seed(seed, {q, di, t});
    const ElementSet xs = random_subset(*ctx, size, derive_seed(base, {0}));
    const ElementSet ys = random_subset(*ctx, size, derive_seed(base, {1}));
    const ElementSet zs = random_subset(*ctx, size, derive_seed(base, {2}));
    sweep.trials[cell] = {t, d, expansion_report(p, xs, ys, zs, with_graph_crosscheck, lambda2)};
  });

  for (std::size_t di = 0; di < densities.size(); ++di) {
    double total = 0;
    for (std::uint64_t t = 0; t < trials; ++t) total += static_cast<double>(sweep.trials[di * trials + t].report.missing);
    sweep.mean_missing_by_density.emplace_back(densities[di], trials ? total / static_cast<double>(trials) : 0.0);
  }
  for (std::size_t i = 1; i < sweep.mean_missing_by_density.size(); ++i) {
    if (sweep.mean_missing_by_density[i].second > sweep.mean_missing_by_density[i - 1].second) {
      sweep.missing_nonincreasing_in_density = false;
    }
  }
  for (const auto& t : sweep.trials) {
    if (t.report.crosscheck) {
      if (t.report.crosscheck->incidences != 0) ++sweep.zero_incidence_failures;
      if (!t.report.crosscheck->bound_holds) ++sweep.bound_failures;
    }
  }
  return sweep;
}

nlohmann::json to_json(const ExpansionReport& r) {
  nlohmann::json j{{"q", r.q},
                   {"sizes", {r.size_x, r.size_y, r.size_z}},
                   {"image_size", r.image_size},
                   {"missing", r.missing},
                   {"predicted_missing_scale", r.predicted_missing_scale},
                   {"ratio", r.ratio},
                   {"phi_image", r.phi_image},
                   {"phi_ratio", r.phi_ratio}};
  if (r.crosscheck) {
    const auto& c = *r.crosscheck;
    j["crosscheck"] = {{"points", c.points},   {"curves", c.curves}, {"incidences", c.incidences},
                       {"lambda2_abs", c.lambda2_abs}, {"product", c.product}, {"bound", c.bound},
                       {"bound_holds", c.bound_holds}};
  }
  return j;
}

nlohmann::json to_json(const ErdosSweep& s) {
  nlohmann::json trend = nlohmann::json::array();
  for (auto [d, m] : s.mean_missing_by_density) trend.push_back({{"density", d}, {"mean_missing", m}});
  return {{"q", s.q},
          {"k", s.k},
          {"trials", s.trials.size()},
          {"mean_missing_by_density", trend},
          {"missing_nonincreasing_in_density", s.missing_nonincreasing_in_density},
          {"zero_incidence_failures", s.zero_incidence_failures},
          {"bound_failures", s.bound_failures}};
}

}  // namespace ffexpand
