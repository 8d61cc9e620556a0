#include "clr/report.hpp"

#include "clr/errors.hpp"

#include <cmath>

namespace clr {

double TermSeries::at(int n) const {
  for (const auto& t : terms)
    if (t.n == n) return t.value;
  return 0.0;
}

Eigen::VectorXd TermSeries::values() const {
  Eigen::VectorXd v(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) v[k] = terms[k].value;
  return v;
}

double TermSeries::sum() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.value;
  return s;
}

TermSeries TermSeries::scaled(double t) const {
  TermSeries out = *this;
  for (auto& term : out.terms) term.value *= t;
  return out;
}

const TermSeries& BoundReport::find_series(const std::string& name) const {
  for (const auto& s : series)
    if (s.name == name) return s;
  throw DomainError("report has no series named '" + name + "'");
}

void evaluate(BoundReport& report) {
  report.value = 1.0;
  report.explicit_part = 1.0;
  report.indicative = false;
  for (auto& part : report.parts) {
    const TermSeries& s = report.find_series(part.series);
    const ConstantUse& coef = report.constants.get(part.coef_key);
    const ConstantUse& thresh = report.constants.get(part.thresh_key);
    part.explicit_constants =
        coef.provenance != Provenance::default_unspecified && thresh.provenance != Provenance::default_unspecified;
    part.included.clear();
    double acc = 0.0;
    for (const auto& t : s.terms) {
      if (!(t.value > thresh.value)) continue;
      switch (part.kind) {
        case PartKind::sqrt_sum:
          acc += std::sqrt(t.value);
          break;
        case PartKind::linear_sum:
          acc += t.value;
          break;
        case PartKind::ceil_sqrt_nonzero:
          if (t.n == 0) continue;
          acc += std::ceil(std::sqrt(coef.value * t.value));
          break;
        case PartKind::sqrt_zero:
          if (t.n != 0) continue;
          acc += std::sqrt(2.0 * coef.value * t.value);
          break;
      }
      part.included.push_back(t.n);
    }
    const bool scaled = part.kind == PartKind::sqrt_sum || part.kind == PartKind::linear_sum;
    part.value = scaled ? coef.value * acc : acc;
    report.value += part.value;
    if (part.explicit_constants)
      report.explicit_part += part.value;
    else
      report.indicative = true;
  }
}

}  // namespace clr
