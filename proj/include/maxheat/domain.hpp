#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace maxheat
{

enum class DomainKind
{
  rectangle,
  annulus
};

std::string to_string(DomainKind kind);

//
// Uniform Cartesian grid covering the computational domain, with the
// staggered layout used by the field solvers:
//
//   Dz, theta   nodes (i, j)          0 <= i <= nx, 0 <= j <= ny
//   Bx          faces (i, j + 1/2)    0 <= i <= nx, 0 <= j <  ny
//   By          faces (i + 1/2, j)    0 <= i <  nx, 0 <= j <= ny
//
// All arrays are row-major in j. A node is interior when it lies strictly
// inside the physical region; every other node carries the homogeneous
// Dirichlet / PEC value 0 (staircase boundary for the annulus).
//
// Quadrature weights are h^2 on interior nodes and on every face touching an
// interior node; this is what makes the two discrete curls exact adjoints.
// Remaining nodes and faces get h^2 times the fraction of their surrounding
// cells that lie inside, which gives the trapezoidal rule on the rectangle.
//
class Domain
{
public:
  Domain() = default;

  // Rectangle [0, width] x [0, height] with n cells along the width.
  static Domain rectangle(double width, double height, int n);

  // Annulus 1 < x^2 + y^2 < 2 on the bounding box [-sqrt2, sqrt2]^2 with n
  // cells per side.
  static Domain annulus(int n);

  DomainKind kind() const { return kind_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  double h() const { return h_; }

  int node_cols() const { return nx_ + 1; }
  int node_rows() const { return ny_ + 1; }
  std::size_t node_count() const { return std::size_t(nx_ + 1) * std::size_t(ny_ + 1); }
  std::size_t bx_count() const { return std::size_t(nx_ + 1) * std::size_t(ny_); }
  std::size_t by_count() const { return std::size_t(nx_) * std::size_t(ny_ + 1); }

  std::size_t node(int i, int j) const { return std::size_t(j) * std::size_t(nx_ + 1) + std::size_t(i); }
  std::size_t bx(int i, int j) const { return std::size_t(j) * std::size_t(nx_ + 1) + std::size_t(i); }
  std::size_t by(int i, int j) const { return std::size_t(j) * std::size_t(nx_) + std::size_t(i); }

  double x(int i) const { return x0_ + h_ * i; }
  double y(int j) const { return y0_ + h_ * j; }

  bool interior(int i, int j) const { return interior_[node(i, j)] != 0; }
  bool interior(std::size_t k) const { return interior_[k] != 0; }
  std::size_t interior_count() const { return interior_count_; }

  std::span<const std::uint8_t> interior_mask() const { return interior_; }
  std::span<const double> node_weights() const { return node_w_; }
  std::span<const double> bx_weights() const { return bx_w_; }
  std::span<const double> by_weights() const { return by_w_; }

  // Exact area of the physical region.
  double exact_area() const;

  // Whether the point lies strictly inside the physical region.
  bool contains(double px, double py) const;

private:
  void build_masks();

  DomainKind kind_ = DomainKind::rectangle;
  int nx_ = 0, ny_ = 0;
  double h_ = 0.0;
  double x0_ = 0.0, y0_ = 0.0;
  double width_ = 0.0, height_ = 0.0;

  std::vector<std::uint8_t> interior_;
  std::size_t interior_count_ = 0;
  std::vector<double> node_w_, bx_w_, by_w_;
};

}  // namespace maxheat
