#pragma once

#include "clr/constants.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace clr {

struct Term {
  int n = 0;
  double lo = 0.0;  // geometry of the piece the term was computed on
  double hi = 0.0;
  double value = 0.0;
};

/// Indexed family n -> value together with the decomposition it lives on.
struct TermSeries {
  std::string name;
  std::string geometry;
  std::vector<Term> terms;  // ascending in n
  double omitted = 0.0;     // mass outside the covered range, if any

  double at(int n) const;
  Eigen::VectorXd values() const;
  double sum() const;
  TermSeries scaled(double t) const;
};

/// How one summand of a bound is formed from a series and two constants.
enum class PartKind {
  sqrt_sum,           // coef * sum_{t > thresh} sqrt(t)
  linear_sum,         // coef * sum_{t > thresh} t
  ceil_sqrt_nonzero,  // sum_{n != 0, t > thresh} ceil(sqrt(coef * t))
  sqrt_zero,          // sqrt(2 * coef * t_0) when t_0 > thresh
};

struct SumPart {
  std::string label;
  std::string series;  // name of a TermSeries in the report
  PartKind kind = PartKind::sqrt_sum;
  std::string coef_key;
  std::string thresh_key;
  bool explicit_constants = true;
  std::vector<int> included;
  double value = 0.0;
};

struct OracleComparison {
  int count = 0;
  double h = 0.0;
  double truncation = 0.0;
  double shift = 0.0;
  std::string problem;
  bool dominated = false;  // explicit part >= count
};

struct BoundReport {
  std::string theorem;
  std::vector<TermSeries> series;
  ConstantSet constants;
  std::vector<SumPart> parts;
  double explicit_part = 0.0;
  double value = 0.0;
  bool indicative = false;
  std::vector<std::string> notes;
  std::vector<OracleComparison> oracle;

  const TermSeries& find_series(const std::string& name) const;
};

/// Fill in every part and the totals from the recorded series and constants.
void evaluate(BoundReport& report);

}  // namespace clr
