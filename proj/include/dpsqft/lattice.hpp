#pragma once
// Difference operators over finite boxes of N^d: right/left differences, the
// weighted-mean difference Delta# , and the composite discrete d'Alembertian
// and spatial Laplacian. Fields are complex- or matrix-valued; a per-axis
// valid region [lo, hi) is tracked instead of inventing boundary conditions
// (ghost value at index -1 is 0, matching the basis extension rule).
//
// Each operator has an OpenMP site-parallel kernel and an independently
// written serial reference (suffix _serial) kept for testing and benchmarks.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dpsqft/basis.hpp"

namespace dpsqft {

struct LatticeBox {
  int dim = 3;                          // in {1, 3, 4}
  std::array<int, 4> extents{0, 0, 0, 0};

  LatticeBox() = default;
  LatticeBox(int d, std::array<int, 4> e) : dim(d), extents(e) {
    if (d != 1 && d != 3 && d != 4) throw std::invalid_argument("LatticeBox: dim must be 1, 3 or 4");
    for (int a = 0; a < d; ++a)
      if (extents[static_cast<size_t>(a)] < 2)
        throw std::invalid_argument("LatticeBox: extents must be >= 2 on every axis");
  }
  static LatticeBox line(int n) { return LatticeBox(1, {n, 1, 1, 1}); }
  static LatticeBox cube3(int n) { return LatticeBox(3, {n, n, n, 1}); }
  static LatticeBox cube4(int n) { return LatticeBox(4, {n, n, n, n}); }

  size_t volume() const {
    size_t v = 1;
    for (int a = 0; a < dim; ++a) v *= static_cast<size_t>(extents[static_cast<size_t>(a)]);
    return v;
  }
  std::array<size_t, 4> strides() const {
    std::array<size_t, 4> s{0, 0, 0, 0};
    size_t acc = 1;
    for (int a = dim - 1; a >= 0; --a) {
      s[static_cast<size_t>(a)] = acc;
      acc *= static_cast<size_t>(extents[static_cast<size_t>(a)]);
    }
    return s;
  }
  size_t index(const std::array<int, 4>& site) const {
    auto s = strides();
    size_t idx = 0;
    for (int a = 0; a < dim; ++a) idx += static_cast<size_t>(site[static_cast<size_t>(a)]) * s[static_cast<size_t>(a)];
    return idx;
  }
  std::array<int, 4> site_of(size_t idx) const {
    std::array<int, 4> site{0, 0, 0, 0};
    auto s = strides();
    for (int a = 0; a < dim; ++a) {
      site[static_cast<size_t>(a)] = static_cast<int>(idx / s[static_cast<size_t>(a)]);
      idx %= s[static_cast<size_t>(a)];
    }
    return site;
  }
};

template <typename T>
struct LatticeField {
  LatticeBox box;
  std::vector<T> values;                // row-major over the full box
  std::array<int, 4> lo{0, 0, 0, 0};    // valid region [lo, hi) per axis
  std::array<int, 4> hi{0, 0, 0, 0};

  LatticeField() = default;
  explicit LatticeField(const LatticeBox& b, const T& fill = T{})
      : box(b), values(b.volume(), fill) {
    for (int a = 0; a < b.dim; ++a) hi[static_cast<size_t>(a)] = b.extents[static_cast<size_t>(a)];
  }

  T& at(const std::array<int, 4>& site) { return values[box.index(site)]; }
  const T& at(const std::array<int, 4>& site) const { return values[box.index(site)]; }

  bool site_valid(const std::array<int, 4>& site) const {
    for (int a = 0; a < box.dim; ++a) {
      int c = site[static_cast<size_t>(a)];
      if (c < lo[static_cast<size_t>(a)] || c >= hi[static_cast<size_t>(a)]) return false;
    }
    return true;
  }
};

namespace detail {
inline void check_axis(const LatticeBox& box, int axis) {
  if (axis < 0 || axis >= box.dim) throw std::out_of_range("lattice operator: axis out of range");
}
// zero of the same shape as a sample value (matrix fields need sized zeros)
template <typename T>
inline T zero_like(const T& sample) {
  return T(sample * 0.0);
}
}  // namespace detail

// out(n) = f(n + e_axis) - f(n); the top boundary row leaves the valid region.
template <typename T>
LatticeField<T> delta_right(const LatticeField<T>& f, int axis) {
  detail::check_axis(f.box, axis);
  LatticeField<T> out = f;
  out.hi[static_cast<size_t>(axis)] -= 1;
  const size_t stride = f.box.strides()[static_cast<size_t>(axis)];
  const auto n_total = static_cast<long long>(f.box.volume());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n_total; ++i) {
    auto site = f.box.site_of(static_cast<size_t>(i));
    if (site[static_cast<size_t>(axis)] + 1 < f.box.extents[static_cast<size_t>(axis)])
      out.values[static_cast<size_t>(i)] = T(f.values[static_cast<size_t>(i) + stride] - f.values[static_cast<size_t>(i)]);
    else
      out.values[static_cast<size_t>(i)] = detail::zero_like(f.values[static_cast<size_t>(i)]);
  }
  return out;
}

// out(n) = f(n) - f(n - e_axis), with f(-1) := 0 (ghost-zero).
template <typename T>
LatticeField<T> delta_left(const LatticeField<T>& f, int axis) {
  detail::check_axis(f.box, axis);
  LatticeField<T> out = f;
  const size_t stride = f.box.strides()[static_cast<size_t>(axis)];
  const auto n_total = static_cast<long long>(f.box.volume());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n_total; ++i) {
    auto site = f.box.site_of(static_cast<size_t>(i));
    if (site[static_cast<size_t>(axis)] >= 1)
      out.values[static_cast<size_t>(i)] = T(f.values[static_cast<size_t>(i)] - f.values[static_cast<size_t>(i) - stride]);
    else
      out.values[static_cast<size_t>(i)] = f.values[static_cast<size_t>(i)];
  }
  return out;
}

// out(n) = (1/sqrt2) [sqrt(n^axis + 1) f(n + e) - sqrt(n^axis) f(n - e)];
// the sqrt(0) factor annihilates the would-be ghost read at the bottom.
template <typename T>
LatticeField<T> delta_sharp(const LatticeField<T>& f, int axis) {
  detail::check_axis(f.box, axis);
  LatticeField<T> out = f;
  out.hi[static_cast<size_t>(axis)] -= 1;
  const size_t stride = f.box.strides()[static_cast<size_t>(axis)];
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const auto n_total = static_cast<long long>(f.box.volume());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n_total; ++i) {
    auto site = f.box.site_of(static_cast<size_t>(i));
    int c = site[static_cast<size_t>(axis)];
    if (c + 1 < f.box.extents[static_cast<size_t>(axis)]) {
      T up = T(std::sqrt(c + 1.0) * f.values[static_cast<size_t>(i) + stride]);
      if (c >= 1) up = T(up - std::sqrt(static_cast<double>(c)) * f.values[static_cast<size_t>(i) - stride]);
      out.values[static_cast<size_t>(i)] = T(inv_sqrt2 * up);
    } else {
      out.values[static_cast<size_t>(i)] = detail::zero_like(f.values[static_cast<size_t>(i)]);
    }
  }
  return out;
}

// Straightforward nested-site serial references for the three operators.
template <typename T>
LatticeField<T> delta_right_serial(const LatticeField<T>& f, int axis) {
  detail::check_axis(f.box, axis);
  LatticeField<T> out = f;
  out.hi[static_cast<size_t>(axis)] -= 1;
  for (size_t i = 0; i < f.values.size(); ++i) {
    auto site = f.box.site_of(i);
    if (site[static_cast<size_t>(axis)] + 1 < f.box.extents[static_cast<size_t>(axis)]) {
      auto up = site;
      up[static_cast<size_t>(axis)] += 1;
      out.values[i] = T(f.at(up) - f.at(site));
    } else {
      out.values[i] = detail::zero_like(f.values[i]);
    }
  }
  return out;
}

template <typename T>
LatticeField<T> delta_left_serial(const LatticeField<T>& f, int axis) {
  detail::check_axis(f.box, axis);
  LatticeField<T> out = f;
  for (size_t i = 0; i < f.values.size(); ++i) {
    auto site = f.box.site_of(i);
    if (site[static_cast<size_t>(axis)] >= 1) {
      auto dn = site;
      dn[static_cast<size_t>(axis)] -= 1;
      out.values[i] = T(f.at(site) - f.at(dn));
    } else {
      out.values[i] = f.values[i];
    }
  }
  return out;
}

template <typename T>
LatticeField<T> delta_sharp_serial(const LatticeField<T>& f, int axis) {
  detail::check_axis(f.box, axis);
  LatticeField<T> out = f;
  out.hi[static_cast<size_t>(axis)] -= 1;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (size_t i = 0; i < f.values.size(); ++i) {
    auto site = f.box.site_of(i);
    int c = site[static_cast<size_t>(axis)];
    if (c + 1 < f.box.extents[static_cast<size_t>(axis)]) {
      auto up = site, dn = site;
      up[static_cast<size_t>(axis)] += 1;
      T acc = T(std::sqrt(c + 1.0) * f.at(up));
      if (c >= 1) {
        dn[static_cast<size_t>(axis)] -= 1;
        acc = T(acc - std::sqrt(static_cast<double>(c)) * f.at(dn));
      }
      out.values[i] = T(inv_sqrt2 * acc);
    } else {
      out.values[i] = detail::zero_like(f.values[i]);
    }
  }
  return out;
}

// eta^{mu nu} Delta#_mu Delta#_nu f - mu^2 f on N^4, signature (+,+,+,-).
template <typename T>
LatticeField<T> dalembertian_discrete(const LatticeField<T>& f, double mu_sq) {
  if (f.box.dim != 4) throw std::invalid_argument("dalembertian_discrete: field must be 4-dimensional");
  LatticeField<T> out = f;
  for (size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = T(-mu_sq * f.values[i]);
  for (int axis = 0; axis < 4; ++axis) {
    double sign = (axis == 3) ? -1.0 : 1.0;
    LatticeField<T> dd = delta_sharp(delta_sharp(f, axis), axis);
    for (size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = T(out.values[i] + sign * dd.values[i]);
    out.hi[static_cast<size_t>(axis)] = dd.hi[static_cast<size_t>(axis)];
  }
  return out;
}

// delta^{ab} Delta#_a Delta#_b f on N^3.
template <typename T>
LatticeField<T> laplacian_spatial(const LatticeField<T>& f) {
  if (f.box.dim != 3) throw std::invalid_argument("laplacian_spatial: field must be 3-dimensional");
  LatticeField<T> out = f;
  for (auto& v : out.values) v = detail::zero_like(v);
  for (int axis = 0; axis < 3; ++axis) {
    LatticeField<T> dd = delta_sharp(delta_sharp(f, axis), axis);
    for (size_t i = 0; i < out.values.size(); ++i)
      out.values[i] = T(out.values[i] + dd.values[i]);
    out.hi[static_cast<size_t>(axis)] = dd.hi[static_cast<size_t>(axis)];
  }
  return out;
}

// max |value| over the valid region (complex fields).
inline double max_abs_valid(const LatticeField<cd>& f) {
  double worst = 0.0;
  for (size_t i = 0; i < f.values.size(); ++i)
    if (f.site_valid(f.box.site_of(i))) worst = std::max(worst, std::abs(f.values[i]));
  return worst;
}

}  // namespace dpsqft
