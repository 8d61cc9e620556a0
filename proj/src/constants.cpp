#include "clr/constants.hpp"

#include "clr/errors.hpp"
#include "clr/oned.hpp"

#include <algorithm>
#include <cmath>

namespace clr {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::stated: return "stated";
    case Provenance::user: return "user";
    case Provenance::default_unspecified: return "default-unspecified";
  }
  return "?";
}

void ConstantSet::put(std::string key, double value, Provenance provenance, std::string note) {
  auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ConstantUse& c) { return c.key == key; });
  ConstantUse use{key, value, provenance, std::move(note)};
  if (it == entries_.end())
    entries_.push_back(std::move(use));
  else
    *it = std::move(use);
}

bool ConstantSet::has(const std::string& key) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const ConstantUse& c) { return c.key == key; });
}

const ConstantUse& ConstantSet::get(const std::string& key) const {
  for (const auto& c : entries_)
    if (c.key == key) return c;
  throw DomainError("unknown constant '" + key + "'");
}

void ConstantSet::override_with(const std::string& key, double value) {
  if (!has(key)) throw DomainError("unknown constant '" + key + "' for this bound");
  if (!(value > 0.0) || !std::isfinite(value)) throw DomainError("constant '" + key + "' must be a positive number");
  put(key, value, Provenance::user, get(key).note);
}

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::est1: return "est1";
    case Theorem::xgenest: return "xgenest";
    case Theorem::mainthm: return "mainthm";
    case Theorem::laptnetrsol: return "laptnetrsol";
    case Theorem::gest2: return "gest2";
    case Theorem::rbtheqn: return "rbtheqn";
    case Theorem::radest4: return "radest4";
    case Theorem::khuri: return "khuri";
  }
  return "?";
}

Theorem theorem_from_string(const std::string& s) {
  for (Theorem t : {Theorem::est1, Theorem::xgenest, Theorem::mainthm, Theorem::laptnetrsol, Theorem::gest2,
                    Theorem::rbtheqn, Theorem::radest4, Theorem::khuri})
    if (s == to_string(t)) return t;
  throw DomainError("unknown theorem '" + s + "'");
}

namespace {

void put_orlicz(ConstantSet& s, const char* symbol) {
  s.put("C", 1.0, Provenance::default_unspecified, std::string("Orlicz-sum constant ") + symbol + ", not given numerically");
  s.put("c", 0.0, Provenance::default_unspecified, "Orlicz-sum threshold, not given numerically");
}

}  // namespace

ConstantSet default_constants(Theorem t) {
  ConstantSet s;
  switch (t) {
    case Theorem::est1:
      s.put("coef", 5.06, Provenance::stated, "radial coefficient");
      s.put("thresh", 0.092, Provenance::stated, "radial threshold");
      break;
    case Theorem::xgenest: {
      const auto opt = optimize_phi();
      s.put("kappa", opt.kappa, Provenance::stated, "maximiser of Phi(kappa)");
      s.put("coef", 4.0 * opt.kappa + 1.0, Provenance::stated, "4 kappa + 1");
      s.put("thresh", opt.phi, Provenance::stated, "Phi(kappa)");
      break;
    }
    case Theorem::gest2:
      s.put("coef", 7.61, Provenance::stated, "radial coefficient");
      s.put("thresh", 0.046, Provenance::stated, "radial threshold");
      put_orlicz(s, "C14");
      break;
    case Theorem::rbtheqn:
      s.put("coef", 7.16, Provenance::stated, "radial coefficient");
      s.put("thresh", 0.046, Provenance::stated, "radial threshold");
      put_orlicz(s, "C");
      break;
    case Theorem::radest4:
      s.put("coef", 7.16, Provenance::stated, "radial coefficient");
      s.put("thresh", 0.046, Provenance::stated, "radial threshold");
      put_orlicz(s, "C27");
      break;
    case Theorem::mainthm:
    case Theorem::laptnetrsol:
      s.put("coef", 4.0, Provenance::stated, "radial coefficient");
      s.put("thresh", 0.25, Provenance::stated, "radial threshold");
      put_orlicz(s, "C");
      break;
    case Theorem::khuri:
      s.put("C", 1.0, Provenance::default_unspecified, "multiplier of the functional, not given numerically");
      break;
  }
  return s;
}

void recompute_from_kappa(ConstantSet& set, Theorem t, double kappa) {
  if (!(kappa > 0.0)) throw DomainError("kappa must be > 0");
  const double s = std::sqrt(4.0 * kappa + 1.0);
  const double phi = phi_kappa(kappa);
  const std::string note = "recomputed from kappa = " + std::to_string(kappa);
  switch (t) {
    case Theorem::est1:
      set.put("coef", 2.0 * s, Provenance::stated, note);
      set.put("thresh", phi, Provenance::stated, note);
      break;
    case Theorem::gest2:
    case Theorem::rbtheqn:
    case Theorem::radest4:
      // the 1D estimate applied to the doubled projected measure
      set.put("coef", 2.0 * s * std::sqrt(2.0), Provenance::stated, note);
      set.put("thresh", phi / 2.0, Provenance::stated, note);
      break;
    case Theorem::xgenest:
      set.put("kappa", kappa, Provenance::user, note);
      set.put("coef", 4.0 * kappa + 1.0, Provenance::stated, note);
      set.put("thresh", phi, Provenance::stated, note);
      break;
    default:
      throw DomainError(std::string("constants of ") + to_string(t) + " do not depend on kappa");
  }
}

void apply_overrides(ConstantSet& set, const std::map<std::string, double>& overrides) {
  for (const auto& [k, v] : overrides) set.override_with(k, v);
}

}  // namespace clr
