#include "maxheat/domain.hpp"

#include <cmath>

#include "maxheat/errors.hpp"

namespace maxheat
{

namespace
{

constexpr int kMinCells = 8;

void require_cells(int n)
{
  if (n < kMinCells)
  {
    throw ConfigError("domain.n must be at least " + std::to_string(kMinCells) + ", got " +
                      std::to_string(n));
  }
}

}  // namespace

std::string to_string(DomainKind kind)
{
  return kind == DomainKind::rectangle ? "rectangle" : "annulus";
}

Domain Domain::rectangle(double width, double height, int n)
{
  require_cells(n);
  if (!(width > 0.0) || !(height > 0.0) || !std::isfinite(width) || !std::isfinite(height))
  {
    throw ConfigError("domain width and height must be positive and finite");
  }
  Domain d;
  d.kind_ = DomainKind::rectangle;
  d.width_ = width;
  d.height_ = height;
  d.h_ = width / n;
  d.nx_ = n;
  const double rows = height / d.h_;
  d.ny_ = static_cast<int>(std::lround(rows));
  if (std::abs(rows - d.ny_) > 1e-9 * rows || d.ny_ < kMinCells)
  {
    throw ConfigError("domain.height must be a multiple of width/n with at least " +
                      std::to_string(kMinCells) + " cells");
  }
  d.build_masks();
  return d;
}

Domain Domain::annulus(int n)
{
  require_cells(n);
  Domain d;
  d.kind_ = DomainKind::annulus;
  const double half = std::sqrt(2.0);
  d.nx_ = d.ny_ = n;
  d.h_ = 2.0 * half / n;
  d.x0_ = d.y0_ = -half;
  d.build_masks();
  return d;
}

double Domain::exact_area() const
{
  return kind_ == DomainKind::rectangle ? width_ * height_ : std::acos(-1.0);
}

bool Domain::contains(double px, double py) const
{
  if (kind_ == DomainKind::rectangle)
  {
    return px > 0.0 && px < width_ && py > 0.0 && py < height_;
  }
  const double r2 = px * px + py * py;
  return r2 > 1.0 && r2 < 2.0;
}

void Domain::build_masks()
{
  const int cols = nx_ + 1;
  const int rows = ny_ + 1;
  interior_.assign(node_count(), 0);
  interior_count_ = 0;
  for (int j = 0; j < rows; ++j)
  {
    for (int i = 0; i < cols; ++i)
    {
      bool in = false;
      if (kind_ == DomainKind::rectangle)
      {
        in = i > 0 && i < nx_ && j > 0 && j < ny_;
      }
      else
      {
        // Nearest-node staircase: a node is interior when it lies at least
        // h/2 inside the boundary, so the pinned nodes are the ones closest
        // to each circle and the face region around the interior nodes
        // matches the annulus without an O(h) bias.
        const double r = std::hypot(x(i), y(j));
        in = i > 0 && i < nx_ && j > 0 && j < ny_ && r > 1.0 + 0.5 * h_ &&
             r < std::sqrt(2.0) - 0.5 * h_;
      }
      interior_[node(i, j)] = in ? 1 : 0;
      interior_count_ += in ? 1 : 0;
    }
  }

  // Cell (ci, cj) spans nodes ci..ci+1, cj..cj+1.
  std::vector<std::uint8_t> cell(std::size_t(nx_) * std::size_t(ny_));
  for (int cj = 0; cj < ny_; ++cj)
  {
    for (int ci = 0; ci < nx_; ++ci)
    {
      cell[std::size_t(cj) * nx_ + ci] = contains(x0_ + h_ * (ci + 0.5), y0_ + h_ * (cj + 0.5)) ? 1 : 0;
    }
  }
  auto cell_in = [&](int ci, int cj) -> int {
    if (ci < 0 || cj < 0 || ci >= nx_ || cj >= ny_)
    {
      return 0;
    }
    return cell[std::size_t(cj) * nx_ + ci];
  };

  const double area = h_ * h_;
  node_w_.assign(node_count(), 0.0);
  for (int j = 0; j < rows; ++j)
  {
    for (int i = 0; i < cols; ++i)
    {
      const std::size_t k = node(i, j);
      if (interior_[k])
      {
        node_w_[k] = area;
        continue;
      }
      const int n = cell_in(i - 1, j - 1) + cell_in(i, j - 1) + cell_in(i - 1, j) + cell_in(i, j);
      node_w_[k] = area * n / 4.0;
    }
  }

  bx_w_.assign(bx_count(), 0.0);
  for (int j = 0; j < ny_; ++j)
  {
    for (int i = 0; i < cols; ++i)
    {
      if (interior(i, j) || interior(i, j + 1))
      {
        bx_w_[bx(i, j)] = area;
        continue;
      }
      bx_w_[bx(i, j)] = area * (cell_in(i - 1, j) + cell_in(i, j)) / 2.0;
    }
  }

  by_w_.assign(by_count(), 0.0);
  for (int j = 0; j < rows; ++j)
  {
    for (int i = 0; i < nx_; ++i)
    {
      if (interior(i, j) || interior(i + 1, j))
      {
        by_w_[by(i, j)] = area;
        continue;
      }
      by_w_[by(i, j)] = area * (cell_in(i, j - 1) + cell_in(i, j)) / 2.0;
    }
  }
}

}  // namespace maxheat
