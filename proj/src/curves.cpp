#include "ffexpand/curves.hpp"

#include <cmath>
#include <sstream>

#include "ffexpand/parallel.hpp"
#include "ffexpand/poly_io.hpp"
#include "ffexpand/random.hpp"

namespace ffexpand {

CurveParams CurveParams::from_index(std::uint64_t index, std::uint64_t q) {
  CurveParams p;
  p.d = {static_cast<std::uint32_t>(index % q)};
  index /= q;
  p.c = {static_cast<std::uint32_t>(index % q)};
  index /= q;
  p.b = {static_cast<std::uint32_t>(index % q)};
  index /= q;
  p.a = {static_cast<std::uint32_t>(index % q)};
  return p;
}

PlaneCurve build_curve(const SymmetricKernel& kernel, const CurveParams& params) {
  const FieldPtr& kp = kernel.ctx();
  const FieldCtx& k = *kp;
  for (FieldElement e : {params.a, params.b, params.c, params.d}) {
    if (!k.contains(e)) throw Error(ErrorKind::MixedFields, "curve parameter outside " + k.spec());
  }
  MultiPoly eq(kp, {"x1", "x2"});
  for (const auto& [e, coef] : kernel.poly().terms()) {
    const std::uint32_t i = e[0], j = e[1];
    eq.add_term({j, 0}, k.mul(coef, k.pow(params.a, i)));  // F(a, x1)
    eq.add_term({0, i}, k.mul(coef, k.pow(params.c, j)));  // F(x2, c)
    eq.add_term({i, j}, k.neg(coef));                      // -F(x1, x2)
  }
  eq.add_term({0, 0}, k.add(params.b, params.d));
  if (eq.is_zero()) {
    throw Error(ErrorKind::DegenerateCurve, "curve equation vanishes identically; the kernel must be non-diagonal");
  }
  return PlaneCurve(std::move(eq), params);
}

std::uint64_t count_zeros(const MultiPoly& f) {
  const FieldCtx& k = *f.ctx();
  const std::size_t nvars = f.variables().size();
  if (nvars > 2) throw Error(ErrorKind::NotBivariate, "point counting needs at most two variables");
  if (f.is_zero()) {
    std::uint64_t all = 1;
    for (std::size_t v = 0; v < nvars; ++v) all *= k.size();
    return all;
  }
  if (nvars == 0) return 0;
  const int d0 = f.degree_in(f.variables()[0]);
  const int d1 = nvars == 2 ? f.degree_in(f.variables()[1]) : 0;
  const std::uint32_t q = k.size();
  std::vector<FieldElement> row(static_cast<std::size_t>(d1) + 1);
  std::vector<FieldElement> powers(static_cast<std::size_t>(d0) + 1);
  std::uint64_t count = 0;
  for (std::uint32_t x = 0; x < q; ++x) {
    powers[0] = k.one();
    for (int i = 1; i <= d0; ++i) powers[i] = k.mul(powers[i - 1], FieldElement{x});
    std::fill(row.begin(), row.end(), k.zero());
    for (const auto& [e, c] : f.terms()) {
      const std::uint32_t j = nvars == 2 ? e[1] : 0;
      row[j] = k.add(row[j], k.mul(c, powers[e[0]]));
    }
    if (nvars == 1) {
      count += row[0].index == 0 ? 1 : 0;
      continue;
    }
    for (std::uint32_t y = 0; y < q; ++y) {
      FieldElement acc = k.zero();
      for (std::size_t j = row.size(); j-- > 0;) acc = k.add(k.mul(acc, FieldElement{y}), row[j]);
      if (acc.index == 0) ++count;
    }
  }
  return count;
}

std::uint64_t count_points(const PlaneCurve& curve, unsigned m) {
  if (m <= 1) return count_zeros(curve.eq());
  const Extension ext = extend(curve.ctx(), m);
  return count_zeros(lift(curve.eq(), ext.embedding));
}

WeilReport weil_interval(std::uint64_t n_points, std::uint64_t q, int degree) {
  WeilReport r;
  r.n_points = n_points;
  r.q = q;
  r.degree = degree;
  r.deviation = std::fabs(static_cast<double>(n_points) - static_cast<double>(q));
  const double D = degree;
  r.bound = (D - 1) * (D - 2) * std::sqrt(static_cast<double>(q)) + D + 1;
  r.within_interval = r.deviation <= r.bound;
  return r;
}

WeilReport weil_check(const PlaneCurve& curve, unsigned degree_cap) {
  if (!is_absolutely_irreducible(curve.eq(), degree_cap)) {
    throw Error(ErrorKind::NotAbsolutelyIrreducible,
                "the Weil interval applies only to absolutely irreducible curves; " + to_string(curve.eq()) +
                    " splits over an extension of " + curve.ctx()->spec());
  }
  return weil_interval(count_points(curve), curve.ctx()->size(), curve.degree());
}

LocusSweepReport reducibility_locus_sweep(const SymmetricKernel& kernel, const LocusSweepOptions& options) {
  const FieldCtx& k = *kernel.ctx();
  const std::uint64_t q = k.size();
  LocusSweepReport report;
  report.q = q;
  report.kernel = to_string(kernel.poly());
  report.total = q * q * q * q;
  report.seed = options.seed;

  std::vector<std::uint64_t> indices;
  std::uint64_t wanted = report.total;
  if (options.sample) {
    wanted = std::min(*options.sample, report.total);
  } else if (report.total > options.exhaustive_cap) {
    wanted = std::min(options.default_sample, report.total);
  }
  report.exhaustive = wanted == report.total;
  if (!report.exhaustive) {
    Rng rng(derive_seed(options.seed, {q}));
    indices = rng.sample(report.total, wanted);
  }
  report.examined = wanted;

  std::vector<LocusRow> rows(wanted);
  parallel_for(wanted, options.threads, [&](std::size_t i) {
    const std::uint64_t idx = report.exhaustive ? i : indices[i];
    const CurveParams params = CurveParams::from_index(idx, q);
    const PlaneCurve curve = build_curve(kernel, params);
    LocusRow row{params.a.index, params.b.index, params.c.index, params.d.index, 0, curve.degree(), false, true};
    row.abs_irreducible = is_absolutely_irreducible(curve.eq(), options.degree_cap);
    if (options.keep_rows || (options.weil && row.abs_irreducible)) row.n_points = count_points(curve);
    if (options.weil && row.abs_irreducible) {
      row.weil_ok = weil_interval(row.n_points, q, row.degree).within_interval;
    }
    rows[i] = row;
  });

  for (const auto& row : rows) {
    if (!row.abs_irreducible) {
      ++report.reducible_count;
      continue;
    }
    if (!options.weil) continue;
    ++report.weil_checked;
    const WeilReport w = weil_interval(row.n_points, q, row.degree);
    if (!w.within_interval) ++report.weil_violations;
    if (w.bound > 0) report.weil_max_ratio = std::max(report.weil_max_ratio, w.deviation / w.bound);
  }
  report.fraction = wanted == 0 ? 0.0 : static_cast<double>(report.reducible_count) / static_cast<double>(wanted);
  report.q_times_fraction = static_cast<double>(q) * report.fraction;
  if (options.keep_rows) report.rows = std::move(rows);
  return report;
}

std::string locus_rows_csv(const LocusSweepReport& report) {
  std::ostringstream out;
  out << "a,b,c,d,N,D,abs_irred,weil_ok\n";
  for (const auto& r : report.rows) {
    out << r.a << ',' << r.b << ',' << r.c << ',' << r.d << ',' << r.n_points << ',' << r.degree << ','
        << (r.abs_irreducible ? 1 : 0) << ',' << (r.weil_ok ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const LocusSweepReport& r) {
  return {{"q", r.q},
          {"kernel", r.kernel},
          {"total", r.total},
          {"examined", r.examined},
          {"exhaustive", r.exhaustive},
          {"seed", r.seed},
          {"reducible_count", r.reducible_count},
          {"fraction", r.fraction},
          {"q_times_fraction", r.q_times_fraction},
          {"weil_checked", r.weil_checked},
          {"weil_violations", r.weil_violations},
          {"weil_max_ratio", r.weil_max_ratio}};
}

nlohmann::json to_json(const WeilReport& r) {
  return {{"N", r.n_points},         {"q", r.q},         {"D", r.degree},
          {"deviation", r.deviation}, {"bound", r.bound}, {"within_interval", r.within_interval}};
}

}  // namespace ffexpand
