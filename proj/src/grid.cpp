#include "orlicz/grid.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"

namespace orlicz {

DomainGrid::DomainGrid(int dim, std::array<double, 2> lo, std::array<double, 2> hi,
                       std::array<std::size_t, 2> nodes)
    : dim_(dim), lo_(lo), hi_(hi), h_{0.0, 0.0}, nodes_(nodes), measure_(1.0) {
  if (dim != 1 && dim != 2) throw InputError("grid dimension must be 1 or 2");
  if (dim == 1) {
    lo_[1] = 0.0;
    hi_[1] = 0.0;
    nodes_[1] = 1;
  }
  for (int k = 0; k < dim; ++k) {
    if (!std::isfinite(lo_[k]) || !std::isfinite(hi_[k]) || !(hi_[k] > lo_[k])) {
      throw InputError("grid axis " + std::to_string(k) + " needs finite hi > lo, got [" +
                       format_real(lo_[k]) + ", " + format_real(hi_[k]) + "]");
    }
    if (nodes_[k] < 3) throw InputError("grid axis " + std::to_string(k) + " needs at least 3 nodes");
    h_[k] = (hi_[k] - lo_[k]) / static_cast<double>(nodes_[k] - 1);
    measure_ *= hi_[k] - lo_[k];
  }

  auto axis_weight = [&](int k, std::size_t i) {
    if (k >= dim_) return 1.0;
    return (i == 0 || i + 1 == nodes_[k]) ? 0.5 * h_[k] : h_[k];
  };
  auto axis_point = [&](int k, std::size_t i) {
    if (k >= dim_) return 0.0;
    return i + 1 == nodes_[k] ? hi_[k] : lo_[k] + h_[k] * static_cast<double>(i);
  };
  points_.reserve(nodes_[0] * nodes_[1]);
  weights_.reserve(nodes_[0] * nodes_[1]);
  for (std::size_t i = 0; i < nodes_[0]; ++i) {
    for (std::size_t j = 0; j < nodes_[1]; ++j) {
      points_.push_back(Point{axis_point(0, i), axis_point(1, j)});
      weights_.push_back(axis_weight(0, i) * axis_weight(1, j));
    }
  }
}

std::string DomainGrid::header() const {
  std::string out = std::to_string(dim_) + " " + std::to_string(nodes_[0]);
  if (dim_ == 2) out += " " + std::to_string(nodes_[1]);
  out += " " + format_real(lo_[0]) + " " + format_real(hi_[0]);
  if (dim_ == 2) out += " " + format_real(lo_[1]) + " " + format_real(hi_[1]);
  return out;
}

bool DomainGrid::operator==(const DomainGrid& other) const {
  return dim_ == other.dim_ && lo_ == other.lo_ && hi_ == other.hi_ && nodes_ == other.nodes_;
}

GridPtr make_grid(int dim, const std::vector<std::pair<double, double>>& extents,
                  const std::vector<std::size_t>& nodes) {
  if (dim != 1 && dim != 2) throw InputError("grid dimension must be 1 or 2");
  if (extents.size() != static_cast<std::size_t>(dim) || nodes.size() != static_cast<std::size_t>(dim)) {
    throw InputError("grid needs one extent and one node count per axis");
  }
  std::array<double, 2> lo{extents[0].first, 0.0}, hi{extents[0].second, 0.0};
  std::array<std::size_t, 2> n{nodes[0], 1};
  if (dim == 2) {
    lo[1] = extents[1].first;
    hi[1] = extents[1].second;
    n[1] = nodes[1];
  }
  return std::make_shared<const DomainGrid>(dim, lo, hi, n);
}

GridFunction::GridFunction(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw InputError("grid function needs a grid");
  if (values.size() != grid->size()) {
    throw InputError("grid function has " + std::to_string(values.size()) + " values, grid has " +
                     std::to_string(grid->size()) + " nodes");
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw InputError("grid function values must be finite");
  }
}

GridFunction GridFunction::constant(GridPtr g, double c) {
  const std::size_t n = g->size();
  return GridFunction(std::move(g), std::vector<double>(n, c));
}

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (a.grid != b.grid && !(a.grid && b.grid && *a.grid == *b.grid)) {
    throw InputError("grid functions live on different grids");
  }
}

}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

GridFunction operator*(double c, const GridFunction& a) {
  GridFunction out = a;
  for (double& v : out.values) v *= c;
  return out;
}

GridFunction operator-(const GridFunction& a) { return -1.0 * a; }

std::vector<double> VectorField::magnitude() const {
  const std::size_t n = components[0].size();
  std::vector<double> out(n);
  if (components[1].empty()) {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::abs(components[0][i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) out[i] = std::hypot(components[0][i], components[1][i]);
  }
  return out;
}

void gradient_into(const DomainGrid& g, const std::vector<double>& u, std::array<std::vector<double>, 2>& out) {
  const std::size_t n0 = g.nodes(0), n1 = g.nodes(1);
  out[0].assign(u.size(), 0.0);
  const double s0 = 0.5 / g.spacing(0);
  for (std::size_t i = 1; i + 1 < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      out[0][i * n1 + j] = (u[(i + 1) * n1 + j] - u[(i - 1) * n1 + j]) * s0;
    }
  }
  if (g.dim() == 1) {
    out[1].clear();
    return;
  }
  out[1].assign(u.size(), 0.0);
  const double s1 = 0.5 / g.spacing(1);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 1; j + 1 < n1; ++j) {
      out[1][i * n1 + j] = (u[i * n1 + j + 1] - u[i * n1 + j - 1]) * s1;
    }
  }
}

void gradient_adjoint_into(const DomainGrid& g, const std::array<std::vector<double>, 2>& w,
                           std::vector<double>& out) {
  const std::size_t n0 = g.nodes(0), n1 = g.nodes(1);
  out.assign(g.size(), 0.0);
  const double s0 = 0.5 / g.spacing(0);
  for (std::size_t i = 1; i + 1 < n0; ++i) {
    for (std::size_t j = 0; j < n1; ++j) {
      const double c = w[0][i * n1 + j] * s0;
      out[(i + 1) * n1 + j] += c;
      out[(i - 1) * n1 + j] -= c;
    }
  }
  if (g.dim() == 1) return;
  const double s1 = 0.5 / g.spacing(1);
  for (std::size_t i = 0; i < n0; ++i) {
    for (std::size_t j = 1; j + 1 < n1; ++j) {
      const double c = w[1][i * n1 + j] * s1;
      out[i * n1 + j + 1] += c;
      out[i * n1 + j - 1] -= c;
    }
  }
}

VectorField gradient(const GridFunction& u) {
  VectorField out;
  out.grid = u.grid;
  gradient_into(*u.grid, u.values, out.components);
  return out;
}

std::vector<double> gradient_adjoint(const VectorField& w) {
  std::vector<double> out;
  gradient_adjoint_into(*w.grid, w.components, out);
  return out;
}

double integrate(const DomainGrid& g, const std::vector<double>& f) {
  const auto& w = g.weights();
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

double integrate(const GridFunction& f) { return integrate(*f.grid, f.values); }

GridFunction random_function(GridPtr grid, std::uint64_t seed, double amplitude, int smoothness) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) throw InputError("random_function needs amplitude > 0");
  if (smoothness < 0) throw InputError("random_function needs smoothness >= 0");
  std::mt19937_64 gen(seed);
  std::vector<double> v(grid->size());
  for (double& x : v) x = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;

  const std::size_t n0 = grid->nodes(0), n1 = grid->nodes(1);
  std::vector<double> tmp(v.size());
  auto reflect = [](std::size_t i, std::ptrdiff_t d, std::size_t n) {
    const auto j = static_cast<std::ptrdiff_t>(i) + d;
    if (j < 0) return std::size_t{1};
    if (j >= static_cast<std::ptrdiff_t>(n)) return n - 2;
    return static_cast<std::size_t>(j);
  };
  for (int pass = 0; pass < smoothness; ++pass) {
    for (std::size_t i = 0; i < n0; ++i) {
      for (std::size_t j = 0; j < n1; ++j) {
        tmp[i * n1 + j] = 0.25 * v[reflect(i, -1, n0) * n1 + j] + 0.5 * v[i * n1 + j] +
                          0.25 * v[reflect(i, 1, n0) * n1 + j];
      }
    }
    v.swap(tmp);
    if (grid->dim() == 2) {
      for (std::size_t i = 0; i < n0; ++i) {
        for (std::size_t j = 0; j < n1; ++j) {
          tmp[i * n1 + j] = 0.25 * v[i * n1 + reflect(j, -1, n1)] + 0.5 * v[i * n1 + j] +
                            0.25 * v[i * n1 + reflect(j, 1, n1)];
        }
      }
      v.swap(tmp);
    }
  }
  double sup = 0.0;
  for (double x : v) sup = std::max(sup, std::abs(x));
  if (!(sup > 0.0)) throw NumericError("random_function produced a zero field");
  const double scale = amplitude / sup;
  for (double& x : v) x = std::clamp(x * scale, -amplitude, amplitude);
  return GridFunction(std::move(grid), std::move(v));
}

GridFunction bump_function(GridPtr grid, double height) {
  const GridPtr g = grid;
  return sample(std::move(grid), [&](const Point& x) {
    double v = height;
    for (int k = 0; k < g->dim(); ++k) {
      const double c = 0.5 * (g->lo(k) + g->hi(k));
      const double r = 0.25 * (g->hi(k) - g->lo(k));
      const double z = (x[k] - c) / r;
      if (std::abs(z) >= 1.0) return 0.0;
      const double cz = std::cos(0.5 * M_PI * z);
      v *= cz * cz;
    }
    return v;
  });
}

std::string solution_to_text(const GridFunction& u) {
  std::string out = u.grid->header() + "\n";
  for (double v : u.values) {
    out += format_real(v);
    out += '\n';
  }
  return out;
}

GridFunction solution_from_text(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw InputError(source + ": empty solution file");
  const auto head = split_words(header);
  if (head.empty()) throw InputError(source + ": missing header");
  const auto dim = parse_count(head[0], source + ": dimension");
  if ((dim != 1 && dim != 2) || head.size() != 3 * dim + 1) {
    throw InputError(source + ": header must read 'dim n1 [n2] lo1 hi1 [lo2 hi2]'");
  }
  std::vector<std::size_t> nodes;
  std::vector<std::pair<double, double>> extents;
  for (std::size_t k = 0; k < dim; ++k) nodes.push_back(parse_count(head[1 + k], source + ": node count"));
  for (std::size_t k = 0; k < dim; ++k) {
    extents.emplace_back(parse_real(head[1 + dim + 2 * k], source + ": extent"),
                         parse_real(head[2 + dim + 2 * k], source + ": extent"));
  }
  GridPtr grid = make_grid(static_cast<int>(dim), extents, nodes);
  std::vector<double> values;
  values.reserve(grid->size());
  std::string line;
  while (std::getline(in, line)) {
    const auto words = split_words(line);
    if (words.empty()) continue;
    if (words.size() != 1) throw InputError(source + ": expected one value per line");
    values.push_back(parse_real(words[0], source + ": value"));
  }
  if (values.size() != grid->size()) {
    throw InputError(source + ": expected " + std::to_string(grid->size()) + " values, found " +
                     std::to_string(values.size()));
  }
  return GridFunction(std::move(grid), std::move(values));
}

void write_solution(const std::string& path, const GridFunction& u) { write_text_file(path, solution_to_text(u)); }

GridFunction read_solution(const std::string& path) { return solution_from_text(read_text_file(path), path); }

}  // namespace orlicz
