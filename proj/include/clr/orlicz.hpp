#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>

namespace clr {

enum class Which { psi, phi };

/// A complementary pair of N-functions.  `psi` is the function whose Orlicz
/// class carries the potentials, `phi` its Young complement.
class NFunctionPair {
 public:
  using Fn = std::function<double(double)>;

  NFunctionPair(std::string name, Fn psi, Fn phi);

  /// B(s) = (1+s)ln(1+s) - s paired with A(s) = e^s - 1 - s.
  static NFunctionPair llogl();
  /// t^p/p paired with t^q/q, 1/p + 1/q = 1.
  static NFunctionPair power(double p);

  /// The same pair with the roles swapped.
  NFunctionPair dual() const;

  double operator()(Which which, double s) const { return which == Which::psi ? psi_(s) : phi_(s); }
  const std::string& name() const { return name_; }

 private:
  std::string name_;
  Fn psi_;
  Fn phi_;
};

double b_function(double s);
double a_function(double s);

double eval_nfunction(const NFunctionPair& pair, Which which, double s);
double inverse_nfunction(const NFunctionPair& pair, Which which, double y, double tol = 1e-14);

enum class BinvRegime { large_t, small_t };
/// Leading-order approximation of t * B^{-1}(1/t).
double binv_asymptotic(double t, BinvRegime regime);

/// |f| sampled against a discrete measure: value and mass per sample.
struct WeightedSamples {
  Eigen::VectorXd values;
  Eigen::VectorXd weights;
  double total_mass = 0.0;

  WeightedSamples() = default;
  WeightedSamples(Eigen::VectorXd values, Eigen::VectorXd weights);

  Eigen::Index size() const { return values.size(); }
  /// Samples whose index satisfies `keep`.
  WeightedSamples subset(const std::function<bool(Eigen::Index)>& keep) const;
  WeightedSamples scaled(double t) const;
};

template <typename DerivedV, typename DerivedW>
WeightedSamples make_samples(const Eigen::DenseBase<DerivedV>& values,
                             const Eigen::DenseBase<DerivedW>& weights) {
  return WeightedSamples(Eigen::VectorXd(values.derived().template cast<double>()),
                         Eigen::VectorXd(weights.derived().template cast<double>()));
}

inline constexpr double kNormTol = 1e-10;

double luxemburg_norm(const WeightedSamples& f, const NFunctionPair& pair, double tol = kNormTol);

/// inf_{k>0} (a + sum w psi(k f)) / k.
double level_norm(const WeightedSamples& f, const NFunctionPair& pair, double a, double tol = kNormTol);

inline double orlicz_norm(const WeightedSamples& f, const NFunctionPair& pair, double tol = kNormTol) {
  return level_norm(f, pair, 1.0, tol);
}

inline double average_norm(const WeightedSamples& f, const NFunctionPair& pair, double tau = 1.0,
                           double tol = kNormTol) {
  if (!(f.total_mass > 0.0)) return 0.0;
  return level_norm(f, pair, tau * f.total_mass, tol);
}

enum class SliceNorm { average, plain };

/// Integral over the first axis of the per-slice norm along the second axis.
/// `values(i, j)` is the sample on cell (i, j) of a uniform dx-by-dy grid.
double mixed_norm(const Eigen::MatrixXd& values, double dx, double dy, const NFunctionPair& pair,
                  SliceNorm slice = SliceNorm::average, double tol = kNormTol);

/// sup_k k * a*_k over the non-increasing rearrangement of |a|.
double l1w_quasinorm(const Eigen::Ref<const Eigen::VectorXd>& seq);

}  // namespace clr
