#pragma once

#include <map>
#include <string>
#include <vector>

namespace clr {

enum class Provenance { stated, user, default_unspecified };

const char* to_string(Provenance p);

struct ConstantUse {
  std::string key;
  double value = 0.0;
  Provenance provenance = Provenance::stated;
  std::string note;
};

/// Ordered table of named constants used by one bound.
class ConstantSet {
 public:
  void put(std::string key, double value, Provenance provenance, std::string note = {});
  bool has(const std::string& key) const;
  const ConstantUse& get(const std::string& key) const;
  double value(const std::string& key) const { return get(key).value; }
  /// Replace an existing entry with a user value; unknown keys and
  /// non-positive values are rejected.
  void override_with(const std::string& key, double value);
  const std::vector<ConstantUse>& entries() const { return entries_; }

 private:
  std::vector<ConstantUse> entries_;
};

enum class Theorem { est1, xgenest, mainthm, laptnetrsol, gest2, rbtheqn, radest4, khuri };

const char* to_string(Theorem t);
Theorem theorem_from_string(const std::string& s);

/// Constants table for a theorem, as stated with the bound.
ConstantSet default_constants(Theorem t);

/// Replace the stated radial coefficient and threshold by the values implied
/// by kappa (coefficient 2 sqrt(4 kappa + 1) and threshold Phi(kappa), with
/// the factor-2 potential adjustment for the strip variants).
void recompute_from_kappa(ConstantSet& set, Theorem t, double kappa);

void apply_overrides(ConstantSet& set, const std::map<std::string, double>& overrides);

}  // namespace clr
