#include "ffexpand/incidence.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "ffexpand/graph.hpp"
#include "ffexpand/parallel.hpp"
#include "ffexpand/poly_io.hpp"
#include "ffexpand/random.hpp"

namespace ffexpand {

PointSet::PointSet(FieldPtr ctx, std::vector<std::pair<FieldElement, FieldElement>> points) : ctx_(std::move(ctx)) {
  const std::uint32_t q = ctx_->size();
  mask_.assign(static_cast<std::size_t>(q) * q, 0);
  for (auto [x, y] : points) {
    if (!ctx_->contains(x) || !ctx_->contains(y)) throw Error(ErrorKind::MixedFields, "point outside " + ctx_->spec());
    const std::uint32_t idx = x.index * q + y.index;
    if (!mask_[idx]) {
      mask_[idx] = 1;
      points_.push_back(idx);
    }
  }
  std::sort(points_.begin(), points_.end());
}

PointSet PointSet::from_indices(FieldPtr ctx, std::vector<std::uint64_t> indices) {
  const std::uint32_t q = ctx->size();
  std::vector<std::pair<FieldElement, FieldElement>> pts;
  pts.reserve(indices.size());
  for (auto i : indices) {
    pts.emplace_back(FieldElement{static_cast<std::uint32_t>(i / q)}, FieldElement{static_cast<std::uint32_t>(i % q)});
  }
  return PointSet(std::move(ctx), std::move(pts));
}

PointSet PointSet::whole_plane(FieldPtr ctx) {
  std::vector<std::uint64_t> all(static_cast<std::size_t>(ctx->size()) * ctx->size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return from_indices(std::move(ctx), std::move(all));
}

FieldElement curve_y(const FieldCtx& k, const CurveFamilySpec& curve, FieldElement x) {
  if (const auto* line = std::get_if<LineCurve>(&curve)) return k.add(k.mul(line->slope, x), line->intercept);
  if (const auto* graph = std::get_if<PolyGraphCurve>(&curve)) {
    FieldElement acc = k.zero();
    for (std::size_t i = graph->coeffs.size(); i-- > 0;) acc = k.add(k.mul(acc, x), graph->coeffs[i]);
    return acc;
  }
  const auto& kc = std::get<KernelCurve>(curve);
  return k.neg(k.add(kc.kernel->evaluate(kc.a, x), kc.b));
}

bool member(const FieldCtx& k, const CurveFamilySpec& curve, FieldElement x, FieldElement y) {
  if (const auto* kc = std::get_if<KernelCurve>(&curve)) {
    return k.add(k.add(kc->kernel->evaluate(kc->a, x), kc->b), y).index == 0;
  }
  return curve_y(k, curve, x) == y;
}

CurveSet CurveSet::lines(FieldPtr ctx, std::vector<LineCurve> members) {
  CurveSet set(std::move(ctx), Theorem::Lines, 1);
  for (auto& m : members) set.members_.emplace_back(m);
  return set;
}

CurveSet CurveSet::poly_graphs(FieldPtr ctx, unsigned n, std::vector<PolyGraphCurve> members) {
  if (ctx->size() <= n) {
    throw Error(ErrorKind::InvalidArgument, "polynomial-graph incidences require q > n, got q = " +
                                                std::to_string(ctx->size()) + " and n = " + std::to_string(n));
  }
  CurveSet set(std::move(ctx), Theorem::PolyGraphs, n);
  for (auto& m : members) {
    if (m.coeffs.size() != n + 1) throw Error(ErrorKind::InvalidArgument, "polynomial graph needs n + 1 coefficients");
    set.members_.emplace_back(std::move(m));
  }
  return set;
}

CurveSet CurveSet::kernel_curves(std::shared_ptr<const SymmetricKernel> kernel,
                                 std::vector<std::pair<FieldElement, FieldElement>> params) {
  CurveSet set(kernel->ctx(), Theorem::KernelCurves, static_cast<unsigned>(kernel->degree()));
  for (auto [a, b] : params) set.members_.emplace_back(KernelCurve{kernel, a, b});
  return set;
}

std::uint64_t CurveSet::duplicate_point_sets() const {
  const FieldCtx& k = *ctx_;
  std::map<std::vector<std::uint32_t>, std::uint64_t> seen;
  for (const auto& m : members_) {
    std::vector<std::uint32_t> ys(k.size());
    for (std::uint32_t x = 0; x < k.size(); ++x) ys[x] = curve_y(k, m, {x}).index;
    ++seen[ys];
  }
  std::uint64_t pairs = 0;
  for (const auto& [ys, count] : seen) pairs += count * (count - 1) / 2;
  return pairs;
}

namespace {

double scale_exponent(const CurveSet& curves) {
  switch (curves.family()) {
    case Theorem::Lines:
      return 0.5;
    case Theorem::PolyGraphs:
      return curves.degree() / 2.0;
    case Theorem::KernelCurves:
      return 5.0 / 6.0;
  }
  return 0;
}

}  // namespace

IncidenceReport incidences(const PointSet& points, const CurveSet& curves) {
  if (points.ctx().get() != curves.ctx().get()) {
    throw Error(ErrorKind::MixedFields, points.ctx()->spec() + " vs " + curves.ctx()->spec());
  }
  const FieldCtx& k = *points.ctx();
  IncidenceReport r;
  r.theorem = curves.family();
  r.q = k.size();
  r.points = points.size();
  r.curves = curves.size();
  if (!points.indices().empty()) {
    for (const auto& c : curves.members()) {
      for (std::uint32_t x = 0; x < k.size(); ++x) {
        if (points.contains({x}, curve_y(k, c, {x}))) ++r.incidences;
      }
    }
  }
  const double pq = static_cast<double>(r.points) * static_cast<double>(r.curves);
  r.main = pq / static_cast<double>(r.q);
  r.deviation = std::fabs(static_cast<double>(r.incidences) - r.main);
  r.error_scale = std::pow(static_cast<double>(r.q), scale_exponent(curves)) * std::sqrt(pq);
  r.ratio = r.error_scale > 0 ? r.deviation / r.error_scale : 0.0;
  return r;
}

namespace {

std::vector<std::uint64_t> default_sizes(std::uint64_t q) {
  return {q, static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(q), 1.5))), q * q / 4};
}

std::uint64_t family_size(Theorem t, std::uint64_t q, unsigned n) {
  if (t == Theorem::PolyGraphs) {
    std::uint64_t total = 1;
    for (unsigned i = 0; i <= n; ++i) total *= q;
    return total;
  }
  return q * q;
}

CurveSet make_curves(Theorem t, const FieldPtr& kp, unsigned n, const std::shared_ptr<const SymmetricKernel>& kernel,
                     const std::vector<std::uint64_t>& picks) {
  const std::uint32_t q = kp->size();
  switch (t) {
    case Theorem::Lines: {
      std::vector<LineCurve> lines;
      for (auto i : picks) lines.push_back({{static_cast<std::uint32_t>(i / q)}, {static_cast<std::uint32_t>(i % q)}});
      return CurveSet::lines(kp, std::move(lines));
    }
    case Theorem::PolyGraphs: {
      std::vector<PolyGraphCurve> graphs;
      for (auto i : picks) {
        PolyGraphCurve g;
        for (unsigned j = 0; j <= n; ++j) {
          g.coeffs.push_back({static_cast<std::uint32_t>(i % q)});
          i /= q;
        }
        graphs.push_back(std::move(g));
      }
      return CurveSet::poly_graphs(kp, n, std::move(graphs));
    }
    case Theorem::KernelCurves: {
      std::vector<std::pair<FieldElement, FieldElement>> params;
      for (auto i : picks) params.emplace_back(FieldElement{static_cast<std::uint32_t>(i / q)}, FieldElement{static_cast<std::uint32_t>(i % q)});
      return CurveSet::kernel_curves(kernel, std::move(params));
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown theorem");
}

}  // namespace

TheoremSweepResult theorem_sweep(const TheoremSweepConfig& config) {
  TheoremSweepResult result;
  for (const auto& spec : config.fields) {
    SweepQSummary summary;
    try {
      const FieldPtr kp = parse_field_spec(spec);
      const std::uint64_t q = kp->size();
      summary.q = q;
      std::shared_ptr<const SymmetricKernel> kernel;
      if (config.theorem == Theorem::PolyGraphs && q <= config.n) {
        throw Error(ErrorKind::InvalidArgument, "polynomial-graph incidences require q > n");
      }
      if (config.theorem == Theorem::KernelCurves) {
        kernel = std::make_shared<const SymmetricKernel>(validate_kernel(parse_poly(config.kernel, kp)));
        if (config.mixing_crosscheck) {
          const IncidenceGraph g = build_graph(*kernel);
          SpectrumOptions so;
          so.method = g.vertex_count() <= so.dense_cap ? SpectrumMethod::Exact : SpectrumMethod::Iterative;
          summary.lambda2_abs = spectrum(g, so).lambda2_abs;
        }
      }
      const std::uint64_t point_total = q * q;
      const std::uint64_t curve_total = family_size(config.theorem, q, config.n);
      const auto sizes = config.sizes.empty() ? default_sizes(q) : config.sizes;
      std::vector<SweepRecord> records(config.trials);
      parallel_for(config.trials, config.threads, [&](std::size_t trial) {
        Rng rng(derive_seed(config.seed, {static_cast<std::uint64_t>(config.theorem), q, trial}));
        const std::uint64_t np = std::min(sizes[trial % sizes.size()], point_total);
        const std::uint64_t nq = std::min(sizes[(trial / sizes.size()) % sizes.size()], curve_total);
        const PointSet points = PointSet::from_indices(kp, rng.sample(point_total, np));
        const CurveSet curves = make_curves(config.theorem, kp, config.n, kernel, rng.sample(curve_total, nq));
        SweepRecord rec;
        rec.trial = trial;
        rec.report = incidences(points, curves);
        if (config.theorem == Theorem::KernelCurves) {
          rec.duplicate_point_sets = curves.duplicate_point_sets();
          if (summary.lambda2_abs) {
            rec.mixing_bound = *summary.lambda2_abs * std::sqrt(static_cast<double>(np) * static_cast<double>(nq));
            rec.mixing_ok = rec.report.deviation <= *rec.mixing_bound + 1e-6;
          }
        }
        records[trial] = rec;
      });
      for (auto& rec : records) {
        ++summary.instances;
        summary.max_ratio = std::max(summary.max_ratio, rec.report.ratio);
        if (config.theorem != Theorem::KernelCurves && rec.report.ratio > 1.0 + kConstantOneSlack) {
          ++summary.constant_one_violations;
        }
        if (!rec.mixing_ok) ++summary.mixing_violations;
        result.records.push_back(std::move(rec));
      }
    } catch (const Error& e) {
      summary.error = e.what();
    }
    result.summaries.push_back(std::move(summary));
  }
  return result;
}

std::string sweep_csv(const TheoremSweepResult& result) {
  std::ostringstream out;
  out.precision(12);
  out << "theorem,q,trial,points,curves,incidences,main,deviation,error_scale,ratio,mixing_bound,mixing_ok\n";
  for (const auto& rec : result.records) {
    const auto& r = rec.report;
    out << static_cast<int>(r.theorem) << ',' << r.q << ',' << rec.trial << ',' << r.points << ',' << r.curves << ','
        << r.incidences << ',' << r.main << ',' << r.deviation << ',' << r.error_scale << ',' << r.ratio << ',';
    if (rec.mixing_bound) out << *rec.mixing_bound;
    out << ',' << (rec.mixing_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const IncidenceReport& r) {
  return {{"theorem", static_cast<int>(r.theorem)},
          {"q", r.q},
          {"points", r.points},
          {"curves", r.curves},
          {"incidences", r.incidences},
          {"main", r.main},
          {"deviation", r.deviation},
          {"error_scale", r.error_scale},
          {"ratio", r.ratio}};
}

nlohmann::json to_json(const TheoremSweepResult& r) {
  nlohmann::json summaries = nlohmann::json::array();
  for (const auto& s : r.summaries) {
    nlohmann::json j{{"q", s.q},
                     {"instances", s.instances},
                     {"max_ratio", s.max_ratio},
                     {"constant_one_violations", s.constant_one_violations},
                     {"mixing_violations", s.mixing_violations}};
    if (s.lambda2_abs) j["lambda2_abs"] = *s.lambda2_abs;
    if (!s.error.empty()) j["error"] = s.error;
    summaries.push_back(std::move(j));
  }
  return {{"summaries", summaries}};
}

}  // namespace ffexpand
