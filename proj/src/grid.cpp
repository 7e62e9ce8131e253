#include "chemo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "chemo/error.hpp"

namespace chemo {

namespace {

constexpr int kMinCells = 4;

void check_axis(int cells, double extent) {
  if (cells < kMinCells) throw DomainError("grid needs at least 4 cells per axis");
  if (!(extent > 0.0) || !std::isfinite(extent)) throw DomainError("grid extent must be positive and finite");
}

void require_finite(const ScalarField& f, const char* op) {
  if (!f.all_finite()) throw CorruptionError(std::string(op) + ": field contains non-finite values");
}

}  // namespace

Grid::Grid(int nx, double lx) : dim_(1), nx_(nx), ny_(1), lx_(lx), ly_(1.0) {
  check_axis(nx, lx);
  hx_ = lx_ / nx_;
  hy_ = 1.0;
}

Grid::Grid(int nx, int ny, double lx, double ly) : dim_(2), nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  check_axis(nx, lx);
  check_axis(ny, ly);
  hx_ = lx_ / nx_;
  hy_ = ly_ / ny_;
}

double Grid::min_spacing() const { return dim_ == 1 ? hx_ : std::min(hx_, hy_); }

std::size_t Grid::face_count(int axis) const {
  return axis == 0 ? static_cast<std::size_t>(nx_ + 1) * ny_ : static_cast<std::size_t>(nx_) * (ny_ + 1);
}

std::size_t Grid::face_index(int axis, int i, int j) const {
  if (axis == 0) return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_ + 1) * j;
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_) * j;
}

ScalarField::ScalarField(const Grid& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

ScalarField::ScalarField(const Grid& grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw DomainError("field length does not match grid size");
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double integrate(const ScalarField& f) {
  require_finite(f, "integrate");
  double sum = 0.0;
  for (double x : f.values()) sum += x;
  return sum * f.grid().cell_volume();
}

double lp_norm(const ScalarField& f, double p) {
  if (!(p >= 1.0)) throw DomainError("lp_norm requires p >= 1");
  require_finite(f, "lp_norm");
  if (p == kInfNorm) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
  }
  double sum = 0.0;
  for (double x : f.values()) sum += std::pow(std::abs(x), p);
  return std::pow(sum * f.grid().cell_volume(), 1.0 / p);
}

double max_value(const ScalarField& f) { return *std::max_element(f.values().begin(), f.values().end()); }
double min_value(const ScalarField& f) { return *std::min_element(f.values().begin(), f.values().end()); }

GhostedField::GhostedField(const ScalarField& f)
    : grid_(f.grid()), stride_(static_cast<std::size_t>(f.grid().nx() + 2)) {
  const int nx = grid_.nx();
  const int ny = grid_.ny();
  const int rows = grid_.dim() == 2 ? ny + 2 : 1;
  values_.resize(stride_ * rows);
  for (int r = 0; r < rows; ++r) {
    const int j = grid_.dim() == 2 ? std::clamp(r - 1, 0, ny - 1) : 0;
    for (int c = 0; c < nx + 2; ++c) {
      const int i = std::clamp(c - 1, 0, nx - 1);
      values_[static_cast<std::size_t>(c) + stride_ * r] = f(i, j);
    }
  }
}

GhostedField extend_neumann(const ScalarField& f) { return GhostedField(f); }

FaceField gradient_faces(const ScalarField& f) {
  const Grid& g = f.grid();
  FaceField out{g, {}};
  out.axis.resize(g.dim());

  auto& fx = out.axis[0];
  fx.assign(g.face_count(0), 0.0);
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 1; i < g.nx(); ++i) fx[g.face_index(0, i, j)] = (f(i, j) - f(i - 1, j)) / g.hx();

  if (g.dim() == 2) {
    auto& fy = out.axis[1];
    fy.assign(g.face_count(1), 0.0);
    for (int j = 1; j < g.ny(); ++j)
      for (int i = 0; i < g.nx(); ++i) fy[g.face_index(1, i, j)] = (f(i, j) - f(i, j - 1)) / g.hy();
  }
  return out;
}

std::vector<ScalarField> gradient_cells(const ScalarField& f) {
  const Grid& g = f.grid();
  const GhostedField e(f);
  std::vector<ScalarField> out(static_cast<std::size_t>(g.dim()), ScalarField(g));
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      out[0](i, j) = (e(i + 1, j) - e(i - 1, j)) / (2.0 * g.hx());
      if (g.dim() == 2) out[1](i, j) = (e(i, j + 1) - e(i, j - 1)) / (2.0 * g.hy());
    }
  }
  return out;
}

ScalarField laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  const GhostedField e(f);
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  ScalarField out(g);
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      double lap = (e(i + 1, j) - 2.0 * e(i, j) + e(i - 1, j)) * ihx2;
      if (g.dim() == 2) lap += (e(i, j + 1) - 2.0 * e(i, j) + e(i, j - 1)) * ihy2;
      out(i, j) = lap;
    }
  }
  return out;
}

Hessian hessian(const ScalarField& f) {
  const Grid& g = f.grid();
  const int d = g.dim();
  const GhostedField e(f);
  std::vector<ScalarField> entries(static_cast<std::size_t>(d * d), ScalarField(g));
  const double ihx2 = 1.0 / (g.hx() * g.hx());
  const double ihy2 = 1.0 / (g.hy() * g.hy());
  const double icross = 1.0 / (4.0 * g.hx() * g.hy());
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      entries[0](i, j) = (e(i + 1, j) - 2.0 * e(i, j) + e(i - 1, j)) * ihx2;
      if (d == 2) {
        const double fxy =
            (e(i + 1, j + 1) - e(i + 1, j - 1) - e(i - 1, j + 1) + e(i - 1, j - 1)) * icross;
        entries[1](i, j) = fxy;
        entries[2](i, j) = fxy;
        entries[3](i, j) = (e(i, j + 1) - 2.0 * e(i, j) + e(i, j - 1)) * ihy2;
      }
    }
  }
  return Hessian(d, std::move(entries));
}

double dirichlet_energy(const ScalarField& f) {
  const FaceField grad = gradient_faces(f);
  double sum = 0.0;
  for (const auto& faces : grad.axis)
    for (double gface : faces) sum += gface * gface;
  return sum * f.grid().cell_volume();
}

ScalarField cosine_series_field(const Grid& grid, std::span<const CosineMode> modes) {
  using std::numbers::pi;
  ScalarField out(grid);
  std::vector<double> cx(static_cast<std::size_t>(grid.nx()));
  std::vector<double> cy(static_cast<std::size_t>(grid.ny()), 1.0);
  for (const CosineMode& mode : modes) {
    for (int i = 0; i < grid.nx(); ++i) cx[i] = std::cos(mode.kx * pi * grid.x(i) / grid.extent(0));
    if (grid.dim() == 2)
      for (int j = 0; j < grid.ny(); ++j) cy[j] = std::cos(mode.ky * pi * grid.y(j) / grid.extent(1));
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) out(i, j) += mode.coeff * cx[i] * cy[j];
  }
  return out;
}

std::vector<CosineMode> random_cosine_modes(int dim, std::uint64_t seed, int num_modes) {
  if (num_modes < 1) throw DomainError("num_modes must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<CosineMode> modes;
  const int ky_max = dim == 2 ? num_modes : 0;
  for (int ky = 0; ky <= ky_max; ++ky) {
    for (int kx = 0; kx <= num_modes; ++kx) {
      if (kx == 0 && ky == 0) continue;
      const double k2 = static_cast<double>(kx * kx + ky * ky);
      modes.push_back({kx, ky, coeff(rng) / (1.0 + k2)});
    }
  }
  return modes;
}

ScalarField random_smooth_field(const Grid& grid, std::uint64_t seed, int num_modes) {
  const auto modes = random_cosine_modes(grid.dim(), seed, num_modes);
  return cosine_series_field(grid, modes);
}

void write_field_csv(std::ostream& out, const ScalarField& f) {
  const Grid& g = f.grid();
  std::ostringstream body;
  body << std::setprecision(17);
  if (g.dim() == 1) {
    body << 1 << ',' << g.nx() << ',' << g.extent(0) << '\n';
  } else {
    body << 2 << ',' << g.nx() << ',' << g.ny() << ',' << g.extent(0) << ',' << g.extent(1) << '\n';
  }
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) body << (i ? "," : "") << f(i, j);
    body << '\n';
  }
  out << body.str();
}

ScalarField read_field_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<double> xs;
    std::istringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) xs.push_back(std::stod(tok));
    return xs;
  };
  std::string line;
  if (!std::getline(in, line)) throw DomainError("field dump: missing header");
  const auto header = split(line);
  if (header.empty()) throw DomainError("field dump: empty header");
  const int dim = static_cast<int>(header[0]);
  if (!((dim == 1 && header.size() == 3) || (dim == 2 && header.size() == 5)))
    throw DomainError("field dump: malformed header");
  const Grid grid = dim == 1 ? Grid(static_cast<int>(header[1]), header[2])
                             : Grid(static_cast<int>(header[1]), static_cast<int>(header[2]), header[3], header[4]);
  std::vector<double> values;
  values.reserve(grid.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (double x : split(line)) values.push_back(x);
  }
  return ScalarField(grid, std::move(values));
}

}  // namespace chemo
