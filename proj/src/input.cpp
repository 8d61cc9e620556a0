#include "clr/input.hpp"

#include "clr/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstring>
#include <cstdlib>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace clr {

namespace {

using nlohmann::json;

int line_of(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Offsets of numeric tokens outside string literals.
std::vector<std::size_t> number_offsets(const std::string& text) {
  std::vector<std::size_t> out;
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') ++i;
      else if (c == '"') in_string = false;
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      out.push_back(i);
      while (i + 1 < text.size() && (std::isdigit(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '.' ||
                                     text[i + 1] == 'e' || text[i + 1] == 'E' || text[i + 1] == '+' ||
                                     text[i + 1] == '-'))
        ++i;
    }
  }
  return out;
}

// Reads the numbers under one key, remembering where each came from.
class Locator {
 public:
  explicit Locator(const std::string& text) : text_(text), numbers_(number_offsets(text)) {}

  /// Line of the k-th number (row-major) below `key`, or the key's own line.
  int line(const std::string& key, std::size_t k) const {
    const std::size_t at = key_offset(key);
    if (at == std::string::npos) return 1;
    auto it = std::lower_bound(numbers_.begin(), numbers_.end(), at);
    const auto idx = static_cast<std::size_t>(it - numbers_.begin()) + k;
    return idx < numbers_.size() ? line_of(text_, numbers_[idx]) : line_of(text_, at);
  }
  int key_line(const std::string& key) const {
    const std::size_t at = key_offset(key);
    return at == std::string::npos ? 1 : line_of(text_, at);
  }

 private:
  std::size_t key_offset(const std::string& key) const { return text_.find('"' + key + '"'); }
  const std::string& text_;
  std::vector<std::size_t> numbers_;
};

double number(const json& j, const Locator& loc, const std::string& key, std::size_t k, bool nonneg) {
  if (!j.is_number()) throw InputError(loc.line(key, k), "'" + key + "' entry " + std::to_string(k) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(loc.line(key, k), "'" + key + "' entry is not finite");
  if (nonneg && v < 0.0)
    throw InputError(loc.line(key, k), "'" + key + "' entry " + std::to_string(k) + " is negative");
  return v;
}

const json& field(const json& obj, const std::string& key, const Locator& loc) {
  if (!obj.contains(key)) throw InputError(loc.key_line("type"), "missing field '" + key + "'");
  return obj.at(key);
}

Eigen::Vector2d pair_of(const json& obj, const std::string& key, const Locator& loc, bool positive) {
  const json& a = field(obj, key, loc);
  if (!a.is_array() || a.size() != 2) throw InputError(loc.key_line(key), "'" + key + "' must be [x, y]");
  Eigen::Vector2d v(number(a[0], loc, key, 0, positive), number(a[1], loc, key, 1, positive));
  if (positive && !(v.array() > 0.0).all()) throw InputError(loc.key_line(key), "'" + key + "' must be positive");
  return v;
}

Eigen::MatrixXd matrix_of(const json& obj, const std::string& key, const Locator& loc) {
  const json& a = field(obj, key, loc);
  if (!a.is_array() || a.empty() || !a[0].is_array() || a[0].empty())
    throw InputError(loc.key_line(key), "'" + key + "' must be a nonempty array of rows");
  const std::size_t cols = a[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(cols));
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_array() || a[i].size() != cols)
      throw InputError(loc.line(key, k), "'" + key + "' rows must all have " + std::to_string(cols) + " entries");
    for (std::size_t j = 0; j < cols; ++j, ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = number(a[i][j], loc, key, k, true);
  }
  return m;
}

LoadedInput parse_grid(const json& doc, const Locator& loc) {
  CellGrid g;
  g.origin = pair_of(doc, "origin", loc, false);
  g.cell = pair_of(doc, "cell", loc, true);
  g.mass = matrix_of(doc, "mass", loc);
  const Eigen::MatrixXd pot = matrix_of(doc, "potential", loc);
  if (pot.rows() != g.mass.rows() || pot.cols() != g.mass.cols())
    throw InputError(loc.key_line("potential"), "'potential' must have the shape of 'mass'");
  LoadedInput in;
  in.type = "grid";
  in.mu = DiscreteMeasure::from_grid(g);
  Eigen::VectorXd v(in.mu.size());
  for (Eigen::Index i = 0; i < g.nx(); ++i)
    for (Eigen::Index j = 0; j < g.ny(); ++j) v[g.flat(i, j)] = pot(i, j);
  in.V = PotentialField(std::move(v));
  return in;
}

LoadedInput parse_atoms(const json& doc, const Locator& loc) {
  const json& pts = field(doc, "points", loc);
  if (!pts.is_array() || pts.empty()) throw InputError(loc.key_line("points"), "'points' must be a nonempty array");
  const auto n = static_cast<Eigen::Index>(pts.size());
  Eigen::Matrix2Xd xy(2, n);
  Eigen::VectorXd m(n), v(n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = pts[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != 4)
      throw InputError(loc.line("points", k), "each point must be [x, y, mass, V]");
    xy(0, i) = number(row[0], loc, "points", k++, false);
    xy(1, i) = number(row[1], loc, "points", k++, false);
    m[i] = number(row[2], loc, "points", k++, true);
    v[i] = number(row[3], loc, "points", k++, true);
  }
  LoadedInput in;
  in.type = "atoms";
  in.mu = DiscreteMeasure::from_atoms(std::move(xy), std::move(m));
  in.V = PotentialField(std::move(v));
  return in;
}

LoadedInput parse_line(const json& doc, const Locator& loc) {
  LineMeasure nu;
  bool any = false;
  if (doc.contains("atoms")) {
    const json& a = doc.at("atoms");
    if (!a.is_array()) throw InputError(loc.key_line("atoms"), "'atoms' must be an array of [x, mass]");
    Eigen::VectorXd x(static_cast<Eigen::Index>(a.size())), m(x.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a[i].is_array() || a[i].size() != 2) throw InputError(loc.line("atoms", k), "each atom must be [x, mass]");
      x[static_cast<Eigen::Index>(i)] = number(a[i][0], loc, "atoms", k++, false);
      m[static_cast<Eigen::Index>(i)] = number(a[i][1], loc, "atoms", k++, true);
    }
    nu = LineMeasure::from_atoms(std::move(x), std::move(m));
    any = true;
  }
  if (doc.contains("density")) {
    const json& d = doc.at("density");
    if (!d.is_object()) throw InputError(loc.key_line("density"), "'density' must be an object");
    const double origin = number(field(d, "origin", loc), loc, "origin", 0, false);
    const double step = number(field(d, "step", loc), loc, "step", 0, true);
    if (!(step > 0.0)) throw InputError(loc.key_line("step"), "'step' must be positive");
    const json& cm = field(d, "mass", loc);
    if (!cm.is_array() || cm.empty()) throw InputError(loc.key_line("mass"), "'mass' must be a nonempty array");
    Eigen::VectorXd cells(static_cast<Eigen::Index>(cm.size()));
    for (std::size_t i = 0; i < cm.size(); ++i) cells[static_cast<Eigen::Index>(i)] = number(cm[i], loc, "mass", i, true);
    nu = nu + LineMeasure::from_density(origin, step, std::move(cells));
    any = true;
  }
  if (!any) throw InputError(loc.key_line("type"), "a line input needs 'atoms' or 'density'");
  LoadedInput in;
  in.type = "line";
  in.line = std::move(nu);
  return in;
}

}  // namespace

LoadedInput parse_input(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    const auto colon = what.find("syntax error");
    throw InputError(line_of(text, byte), colon == std::string::npos ? what : what.substr(colon));
  } catch (const json::out_of_range&) {
    // a literal too large for a double; the parser does not report where it was
    for (std::size_t at : number_offsets(text)) {
      std::size_t end = at + 1;
      while (end < text.size() && std::strchr("0123456789.eE+-", text[end]) != nullptr) ++end;
      if (!std::isfinite(std::strtod(text.substr(at, end - at).c_str(), nullptr)))
        throw InputError(line_of(text, at), "number '" + text.substr(at, end - at) + "' overflows a double");
    }
    throw InputError(1, "number out of range");
  }
  const Locator loc(text);
  if (!doc.is_object()) throw InputError(1, "top level must be an object");
  if (!doc.contains("type") || !doc.at("type").is_string()) throw InputError(1, "missing string field 'type'");
  const std::string type = doc.at("type").get<std::string>();
  if (type == "grid") return parse_grid(doc, loc);
  if (type == "atoms") return parse_atoms(doc, loc);
  if (type == "line") return parse_line(doc, loc);
  throw InputError(loc.key_line("type"), "unknown type '" + type + "' (grid, atoms or line)");
}

LoadedInput load_input(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError(0, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_input(ss.str());
}

Eigen::Vector2d recenter(LoadedInput& in) {
  if (in.line) return Eigen::Vector2d::Zero();
  const Eigen::VectorXd w = in.V.values.cwiseProduct(in.mu.masses());
  const double total = w.sum();
  if (!(total > 0.0)) return Eigen::Vector2d::Zero();
  const Eigen::Vector2d centroid = in.mu.points() * w / total;
  AffineMap shift;
  if (in.mu.is_grid()) {
    // move the grid vertex nearest the centroid to the origin, keeping cells whole
    CellGrid g = *in.mu.grid();
    const Eigen::Vector2d steps = ((centroid - g.origin).array() / g.cell.array()).round();
    shift.shift = -(g.origin + steps.cwiseProduct(g.cell));
    g.origin += shift.shift;
    in.mu = DiscreteMeasure::from_grid(std::move(g));
  } else {
    Eigen::Index best = 0;
    double best_d = INFINITY;
    for (Eigen::Index k = 0; k < in.mu.size(); ++k) {
      if (in.mu.mass(k) <= 0.0) continue;
      const double d = (in.mu.point(k) - centroid).squaredNorm();
      if (d < best_d) best_d = d, best = k;
    }
    shift.shift = -in.mu.point(best);
    in.mu = pushforward(in.mu, shift);
  }
  in.shift += -shift.shift;
  return -shift.shift;
}

LineMeasure as_line_measure(const LoadedInput& in) {
  if (in.line) return *in.line;
  Eigen::VectorXd x = in.mu.points().row(0).transpose();
  Eigen::VectorXd m = in.V.values.cwiseProduct(in.mu.masses());
  return LineMeasure::from_atoms(std::move(x), std::move(m));
}

}  // namespace clr
