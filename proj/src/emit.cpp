#include "clr/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace clr {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  if (std::isnan(v)) return "\"nan\"";
  if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump(const json& j, std::ostringstream& os, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map ordering: sorted keys
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        dump(it.value(), os, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) os << ",\n";
        os << pad;
        dump(j[k], os, depth + 1);
      }
      os << "\n" << close << "]";
      return;
    }
    case json::value_t::number_float:
      os << fmt(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

const char* kind_name(PartKind k) {
  switch (k) {
    case PartKind::sqrt_sum: return "coef*sum sqrt(t), t>thresh";
    case PartKind::linear_sum: return "coef*sum t, t>thresh";
    case PartKind::ceil_sqrt_nonzero: return "sum_{n!=0} ceil sqrt(coef*t), t>thresh";
    case PartKind::sqrt_zero: return "sqrt(2*coef*t_0), t_0>thresh";
  }
  return "?";
}

}  // namespace

std::string dump_json(const json& j) {
  std::ostringstream os;
  dump(j, os, 0);
  os << "\n";
  return os.str();
}

json to_json(const TermSeries& s) {
  json terms = json::array();
  for (const auto& t : s.terms) terms.push_back({{"n", t.n}, {"lo", t.lo}, {"hi", t.hi}, {"value", t.value}});
  return {{"name", s.name}, {"geometry", s.geometry}, {"omitted", s.omitted}, {"terms", terms}};
}

json to_json(const ConstantSet& c) {
  json out = json::object();
  for (const auto& e : c.entries())
    out[e.key] = {{"value", e.value}, {"provenance", to_string(e.provenance)}, {"note", e.note}};
  return out;
}

json to_json(const BoundReport& r) {
  json series = json::array(), parts = json::array(), oracle = json::array();
  for (const auto& s : r.series) series.push_back(to_json(s));
  for (const auto& p : r.parts)
    parts.push_back({{"label", p.label},
                     {"series", p.series},
                     {"rule", kind_name(p.kind)},
                     {"coef", p.coef_key},
                     {"thresh", p.thresh_key},
                     {"explicit", p.explicit_constants},
                     {"included", p.included},
                     {"value", p.value}});
  for (const auto& o : r.oracle)
    oracle.push_back({{"count", o.count},
                      {"h", o.h},
                      {"truncation", o.truncation},
                      {"shift", o.shift},
                      {"problem", o.problem},
                      {"dominated", o.dominated}});
  json out = {{"theorem", r.theorem}, {"series", series},           {"constants", to_json(r.constants)},
              {"parts", parts},       {"explicit_part", r.explicit_part}, {"value", r.value},
              {"indicative", r.indicative}, {"notes", r.notes}};
  if (!r.oracle.empty()) out["oracle"] = oracle;
  return out;
}

json to_json(const OracleResult& r) {
  return {{"count_below", r.count_below}, {"shift", r.shift},         {"h", r.h},
          {"truncation", r.truncation},   {"min_pivot", r.min_pivot}, {"perturbed", r.perturbed},
          {"order", r.order}};
}

json to_json(const TransverseSpectrum& s) {
  json out = {{"taus", s.taus}, {"residuals", s.residuals}};
  if (s.region) out["region"] = to_string(*s.region);
  return out;
}

json to_json(const CoverReport& c) {
  json sq = json::array();
  for (std::size_t k = 0; k < c.squares.size(); ++k) {
    const auto& s = c.squares[k];
    sq.push_back({{"center", {s.center.x(), s.center.y()}},
                  {"side", s.side},
                  {"norm", s.norm},
                  {"capped", s.capped},
                  {"family", c.family[k]}});
  }
  return {{"squares", sq},           {"families", c.linkage_bound}, {"kappa0", c.kappa0},
          {"kappa0_source", c.kappa0_source}, {"region_norm", c.region_norm}, {"target", c.target},
          {"notes", c.notes}};
}

std::string text_table(const BoundReport& r) {
  std::ostringstream os;
  os << "theorem   " << r.theorem << "\n";
  for (const auto& s : r.series) {
    os << "\nseries " << s.name << " (" << s.geometry << ")\n";
    os << std::setw(6) << "n" << std::setw(26) << "lo" << std::setw(26) << "hi" << std::setw(26) << "value"
       << "\n";
    for (const auto& t : s.terms)
      os << std::setw(6) << t.n << std::setw(26) << fmt(t.lo) << std::setw(26) << fmt(t.hi) << std::setw(26)
         << fmt(t.value) << "\n";
    if (s.omitted != 0.0) os << "  omitted mass " << fmt(s.omitted) << "\n";
  }
  os << "\nconstants\n";
  for (const auto& e : r.constants.entries())
    os << "  " << std::left << std::setw(8) << e.key << std::right << std::setw(26) << fmt(e.value) << "  "
       << to_string(e.provenance) << "\n";
  os << "\nparts\n";
  for (const auto& p : r.parts)
    os << "  " << std::left << std::setw(28) << p.label << std::right << std::setw(26) << fmt(p.value)
       << (p.explicit_constants ? "" : "  (non-explicit constant)") << "\n";
  os << "\n  " << std::left << std::setw(28) << "explicit part" << std::right << std::setw(26)
     << fmt(r.explicit_part) << "\n";
  os << "  " << std::left << std::setw(28) << "bound" << std::right << std::setw(26) << fmt(r.value)
     << (r.indicative ? "  INDICATIVE" : "") << "\n";
  for (const auto& o : r.oracle)
    os << "  oracle " << o.problem << ": " << o.count << " at h=" << fmt(o.h) << " -> "
       << (o.dominated ? "PASS" : "FAIL") << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string svg_term_chart(const BoundReport& r) {
  std::vector<std::pair<std::string, double>> bars;
  for (const auto& s : r.series)
    for (const auto& t : s.terms) bars.emplace_back(s.name + std::to_string(t.n), t.value);
  double vmax = 0.0;
  for (const auto& b : bars) vmax = std::max(vmax, b.second);
  if (!(vmax > 0.0)) vmax = 1.0;
  const int bw = 18, gap = 4, height = 240, left = 50, base = height + 20;
  const int width = left + static_cast<int>(bars.size()) * (bw + gap) + 20;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << base + 60 << "\">\n";
  os << "<text x=\"" << left << "\" y=\"14\" font-size=\"12\">" << r.theorem << " terms, max " << fmt(vmax)
     << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << base << "\" x2=\"" << width - 10 << "\" y2=\"" << base
     << "\" stroke=\"black\"/>\n";
  for (std::size_t k = 0; k < bars.size(); ++k) {
    const int x = left + static_cast<int>(k) * (bw + gap);
    const double hgt = height * bars[k].second / vmax;
    char buf[200];
    std::snprintf(buf, sizeof buf, "<rect x=\"%d\" y=\"%.3f\" width=\"%d\" height=\"%.3f\" fill=\"steelblue\"/>\n", x,
                  base - hgt, bw, hgt);
    os << buf;
    os << "<text x=\"" << x << "\" y=\"" << base + 14 << "\" font-size=\"9\" transform=\"rotate(60 " << x << " "
       << base + 14 << ")\">" << bars[k].first << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_region_map(double a, double lo, double hi, int steps) {
  const int px = 8, size = steps * px;
  static const char* colours[] = {"#f7fbff", "#6baed6", "#08306b"};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 80 << "\" height=\"" << size + 40 << "\">\n";
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j) {
      const double alpha = lo + (hi - lo) * (i + 0.5) / steps;
      const double beta = lo + (hi - lo) * (j + 0.5) / steps;
      const int neg = negative_count(region_classify(RobinParams{alpha, beta, a}));
      os << "<rect x=\"" << 40 + i * px << "\" y=\"" << 10 + (steps - 1 - j) * px << "\" width=\"" << px
         << "\" height=\"" << px << "\" fill=\"" << colours[std::clamp(neg, 0, 2)] << "\"/>\n";
    }
  os << "<text x=\"40\" y=\"" << size + 30 << "\" font-size=\"11\">alpha in [" << fmt(lo) << ", " << fmt(hi)
     << "], beta vertical; shade = negative transverse eigenvalues (0, 1, 2)</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace clr
