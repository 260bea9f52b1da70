#include "bosecanon/scaling_fit.hpp"

#include <cmath>
#include <set>

#include "bosecanon/errors.hpp"

namespace bosecanon {

std::string to_string(GapObservable observable) {
  switch (observable) {
    case GapObservable::limit_gap: return "limit_gap";
    case GapObservable::gc_gap: return "gc_gap";
    case GapObservable::eq10_gap: return "eq10_gap";
    case GapObservable::eq12_gap: return "eq12_gap";
  }
  return "?";
}

GapObservable parse_gap_observable(const std::string& text) {
  for (GapObservable g : {GapObservable::limit_gap, GapObservable::gc_gap,
                          GapObservable::eq10_gap, GapObservable::eq12_gap}) {
    if (text == to_string(g)) return g;
  }
  throw ConfigError("unknown observable '" + text + "'");
}

double gap_value(const SweepRow& row, GapObservable observable) {
  switch (observable) {
    case GapObservable::limit_gap: return row.limit_gap;
    case GapObservable::gc_gap: return row.gc_gap;
    case GapObservable::eq10_gap: return row.eq10_gap;
    case GapObservable::eq12_gap: return row.eq12_gap;
  }
  return std::nan("");
}

ScalingFit fit_scaling(const std::vector<SweepRow>& rows, GapObservable observable,
                       double t_over_tc) {
  return fit_scaling_pooled(rows, observable, {t_over_tc});
}

ScalingFit fit_scaling_pooled(const std::vector<SweepRow>& rows,
                              GapObservable observable,
                              const std::vector<double>& t_over_tc) {
  if (t_over_tc.empty()) throw DomainError("no temperatures to fit");

  struct Curve {
    std::vector<double> x, y;
  };
  std::vector<Curve> curves(t_over_tc.size());
  std::set<std::int64_t> distinct;
  for (const SweepRow& row : rows) {
    const double gap = gap_value(row, observable);
    if (!row.ok() || !std::isfinite(gap) || gap == 0.0) continue;
    for (std::size_t k = 0; k < t_over_tc.size(); ++k) {
      if (std::abs(row.t_over_tc - t_over_tc[k]) > 1e-9) continue;
      curves[k].x.push_back(std::log(static_cast<double>(row.n)));
      curves[k].y.push_back(std::log(std::abs(gap)));
      distinct.insert(row.n);
    }
  }

  ScalingFit fit;
  double sxy = 0.0, sxx = 0.0;
  std::vector<double> xbar(curves.size()), ybar(curves.size());
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const Curve& c = curves[k];
    std::set<double> xs(c.x.begin(), c.x.end());
    if (xs.size() < 3) {
      throw DomainError("scaling fit needs at least three distinct N at T/Tc = " +
                        std::to_string(t_over_tc[k]));
    }
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      xbar[k] += c.x[i];
      ybar[k] += c.y[i];
    }
    xbar[k] /= static_cast<double>(c.x.size());
    ybar[k] /= static_cast<double>(c.x.size());
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      sxy += (c.x[i] - xbar[k]) * (c.y[i] - ybar[k]);
      sxx += (c.x[i] - xbar[k]) * (c.x[i] - xbar[k]);
    }
    fit.points += static_cast<int>(c.x.size());
  }
  fit.exponent = sxy / sxx;
  fit.distinct_n = static_cast<int>(distinct.size());

  double rss = 0.0;
  for (std::size_t k = 0; k < curves.size(); ++k) {
    const double intercept = ybar[k] - fit.exponent * xbar[k];
    fit.intercepts.push_back(intercept);
    for (std::size_t i = 0; i < curves[k].x.size(); ++i) {
      const double r = curves[k].y[i] - intercept - fit.exponent * curves[k].x[i];
      rss += r * r;
    }
  }
  const int dof = fit.points - static_cast<int>(curves.size()) - 1;
  fit.std_error = dof > 0 ? std::sqrt(rss / dof / sxx) : 0.0;
  return fit;
}

}  // namespace bosecanon
