#pragma once

// Uniform cell-centered Cartesian grids in 1D/2D, cell fields, and the
// discrete operators built on homogeneous-Neumann (mirror) ghost cells.
//
// Storage is row-major with x fastest: index(i, j) = i + nx * j. A 1D grid is
// a 2D grid with ny = 1 whose y-axis carries no operators.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

namespace chemo {

class Grid {
 public:
  /// 1D grid on [0, lx] with nx cells.
  Grid(int nx, double lx);
  /// 2D grid on [0, lx] x [0, ly].
  Grid(int nx, int ny, double lx, double ly);

  int dim() const { return dim_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int cells(int axis) const { return axis == 0 ? nx_ : ny_; }
  double extent(int axis) const { return axis == 0 ? lx_ : ly_; }
  double spacing(int axis) const { return axis == 0 ? hx_ : hy_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  /// Smallest spacing over the active axes.
  double min_spacing() const;
  double cell_volume() const { return dim_ == 1 ? hx_ : hx_ * hy_; }
  double volume() const { return dim_ == 1 ? lx_ : lx_ * ly_; }
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_; }

  std::size_t index(int i, int j = 0) const { return static_cast<std::size_t>(i) + static_cast<std::size_t>(nx_) * j; }
  double x(int i) const { return (i + 0.5) * hx_; }
  double y(int j) const { return (j + 0.5) * hy_; }

  /// Number of faces normal to `axis` (boundary faces included).
  std::size_t face_count(int axis) const;
  /// Face (i, j) normal to `axis`: for axis 0, i in [0, nx] and j in [0, ny);
  /// for axis 1, i in [0, nx) and j in [0, ny].
  std::size_t face_index(int axis, int i, int j) const;

  bool operator==(const Grid&) const = default;

 private:
  int dim_;
  int nx_;
  int ny_;
  double lx_;
  double ly_;
  double hx_;
  double hy_;
};

class ScalarField {
 public:
  explicit ScalarField(const Grid& grid, double fill = 0.0);
  ScalarField(const Grid& grid, std::vector<double> values);

  template <class F>
  static ScalarField from_function(const Grid& grid, F&& f) {
    ScalarField out(grid);
    for (int j = 0; j < grid.ny(); ++j)
      for (int i = 0; i < grid.nx(); ++i) out(i, j) = f(grid.x(i), grid.dim() == 2 ? grid.y(j) : 0.0);
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double& operator()(int i, int j = 0) { return values_[grid_.index(i, j)]; }
  double operator()(int i, int j = 0) const { return values_[grid_.index(i, j)]; }
  double& operator[](std::size_t idx) { return values_[idx]; }
  double operator[](std::size_t idx) const { return values_[idx]; }

  bool all_finite() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Midpoint rule: cell volume times the sum of values. Throws CorruptionError on NaN/Inf.
double integrate(const ScalarField& f);

/// (int |f|^p)^(1/p); the sup norm when p == kInfNorm. Throws DomainError for p < 1.
double lp_norm(const ScalarField& f, double p);

double max_value(const ScalarField& f);
double min_value(const ScalarField& f);

/// Field padded with one mirror-ghost layer on every side.
class GhostedField {
 public:
  explicit GhostedField(const ScalarField& f);

  /// i in [-1, nx], j in [-1, ny] (j ignored in 1D).
  double operator()(int i, int j = 0) const {
    return values_[static_cast<std::size_t>(i + 1) + stride_ * static_cast<std::size_t>(grid_.dim() == 2 ? j + 1 : 0)];
  }
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  std::size_t stride_;
  std::vector<double> values_;
};

GhostedField extend_neumann(const ScalarField& f);

/// One array of face values per active axis, indexed by Grid::face_index.
struct FaceField {
  Grid grid;
  std::vector<std::vector<double>> axis;
};

/// (f_right - f_left) / h on every face; boundary faces are exactly 0.
FaceField gradient_faces(const ScalarField& f);

/// Central differences (f_{i+1} - f_{i-1}) / (2h) with mirror ghosts, one field per axis.
std::vector<ScalarField> gradient_cells(const ScalarField& f);

/// 3-point (1D) / 5-point (2D) Laplacian with mirror ghosts.
ScalarField laplacian(const ScalarField& f);

/// Symmetric dim x dim matrix of cell fields.
class Hessian {
 public:
  Hessian(int dim, std::vector<ScalarField> entries) : dim_(dim), entries_(std::move(entries)) {}
  int dim() const { return dim_; }
  const ScalarField& operator()(int r, int c) const { return entries_[static_cast<std::size_t>(r * dim_ + c)]; }

 private:
  int dim_;
  std::vector<ScalarField> entries_;
};

/// Second differences on the diagonal, centered cross stencil off the diagonal.
Hessian hessian(const ScalarField& f);

/// Face-based discrete Dirichlet energy: sum over faces of ((f_R - f_L)/h)^2 times cell volume.
double dirichlet_energy(const ScalarField& f);

/// coeff * cos(kx pi x / Lx) * cos(ky pi y / Ly); ky ignored in 1D.
struct CosineMode {
  int kx = 0;
  int ky = 0;
  double coeff = 0.0;
};

ScalarField cosine_series_field(const Grid& grid, std::span<const CosineMode> modes);

/// Seeded cosine modes with wavenumbers 0..num_modes per axis (constant mode
/// excluded) and coefficients uniform in [-1, 1] damped by 1/(1 + |k|^2).
std::vector<CosineMode> random_cosine_modes(int dim, std::uint64_t seed, int num_modes);

ScalarField random_smooth_field(const Grid& grid, std::uint64_t seed, int num_modes);

/// Field dump: header line `dim,nx[,ny],Lx[,Ly]` carrying the values, then one
/// CSV line of cell values per y-row.
void write_field_csv(std::ostream& out, const ScalarField& f);
ScalarField read_field_csv(std::istream& in);

}  // namespace chemo
