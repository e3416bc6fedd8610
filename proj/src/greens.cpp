#include "dpsqft/greens.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dpsqft/modes.hpp"

namespace dpsqft {

namespace {

constexpr cd I_UNIT{0.0, 1.0};

// Per-order axis data: nodes, weights folded with e^{+k^2} (so plain d k sums
// work on integrands that carry their own Gaussian), and the xi table up to a
// cached n_max. Immutable once published; reads go through shared_ptr.
struct AxisTable {
  std::vector<double> nodes;
  std::vector<double> folded;
  Eigen::MatrixXcd xi;  // (node, n)
};

std::shared_ptr<const AxisTable> axis_table(int order, int n_max) {
  static std::mutex lock;
  static std::map<std::pair<int, int>, std::shared_ptr<const AxisTable>> cache;
  // bucket n_max so repeated nearby requests share one entry
  const int bucket = ((n_max / 16) + 1) * 16;
  const std::scoped_lock guard(lock);
  auto it = cache.find({order, bucket});
  if (it != cache.end()) return it->second;

  auto tab = std::make_shared<AxisTable>();
  const QuadratureRule rule = gauss_hermite(order);
  tab->nodes = rule.nodes;
  tab->folded.resize(rule.nodes.size());
  for (size_t a = 0; a < rule.nodes.size(); ++a)
    tab->folded[a] = rule.weights[a] * std::exp(rule.nodes[a] * rule.nodes[a]);
  tab->xi = xi_axis_table(rule.nodes, bucket);
  cache[{order, bucket}] = tab;
  return tab;
}

void validate(const EventPair& ev, double mu, int quad_order) {
  if (quad_order < 20) throw std::invalid_argument("greens: quad_order must be >= 20");
  if (mu < 0.0) throw std::domain_error("greens: mass must be non-negative");
  if (mu == 0.0 && quad_order % 2 != 0)
    throw std::invalid_argument("greens: odd quad_order places a node at k = 0 in the massless case");
  for (int ax = 0; ax < 3; ++ax)
    if (ev.n[ax] < 0 || ev.nhat[ax] < 0)
      throw std::out_of_range("greens: site indices must be non-negative");
}

// Triple quadrature of [prod_ax xi_{n_ax} conj(xi_{nhat_ax})](k) g(omega)
// for a scalar factor g; used by every Delta variant.
template <typename G>
cd quad3(const EventPair& ev, double mu, int quad_order, G&& g) {
  const int n_max = std::max({ev.n[0], ev.n[1], ev.n[2], ev.nhat[0], ev.nhat[1], ev.nhat[2]});
  const auto tab = axis_table(quad_order, n_max);
  const size_t m = tab->nodes.size();

  std::array<std::vector<cd>, 3> axis;
  for (int ax = 0; ax < 3; ++ax) {
    axis[ax].resize(m);
    for (size_t a = 0; a < m; ++a)
      axis[ax][a] = tab->xi(static_cast<Eigen::Index>(a), ev.n[ax]) *
                    std::conj(tab->xi(static_cast<Eigen::Index>(a), ev.nhat[ax])) * tab->folded[a];
  }

  const double mu2 = mu * mu;
  cd acc{0.0, 0.0};
  for (size_t a = 0; a < m; ++a) {
    const double ka2 = tab->nodes[a] * tab->nodes[a];
    for (size_t b = 0; b < m; ++b) {
      const double kab2 = ka2 + tab->nodes[b] * tab->nodes[b];
      const cd vab = axis[0][a] * axis[1][b];
      cd inner{0.0, 0.0};
      for (size_t c = 0; c < m; ++c) {
        const double w = std::sqrt(kab2 + tab->nodes[c] * tab->nodes[c] + mu2);
        inner += axis[2][c] * g(w);
      }
      acc += vab * inner;
    }
  }
  return acc;
}

}  // namespace

cd delta_plus(const EventPair& ev, double mu, int quad_order) {
  validate(ev, mu, quad_order);
  const double tau = ev.t - ev.that;
  return -I_UNIT * quad3(ev, mu, quad_order, [tau](double w) {
    return std::exp(-I_UNIT * w * tau) / (2.0 * w);
  });
}

cd delta_minus(const EventPair& ev, double mu, int quad_order) {
  validate(ev, mu, quad_order);
  const double tau = ev.t - ev.that;
  return I_UNIT * quad3(ev, mu, quad_order, [tau](double w) {
    return std::exp(I_UNIT * w * tau) / (2.0 * w);
  });
}

cd delta_homogeneous(const EventPair& ev, double mu, int quad_order) {
  validate(ev, mu, quad_order);
  const double tau = ev.t - ev.that;
  return -quad3(ev, mu, quad_order, [tau](double w) { return cd(std::sin(w * tau) / w, 0.0); });
}

cd delta_feynman(const EventPair& ev, double mu, int quad_order) {
  if (ev.t == ev.that)
    throw std::invalid_argument("delta_feynman: theta is undefined at t == that");
  if (ev.t > ev.that) return -delta_plus(ev, mu, quad_order);
  return delta_minus(ev, mu, quad_order);
}

cd delta_branch(const EventPair& ev, double mu, int quad_order, Contour kind) {
  switch (kind) {
    case Contour::plus:
      return delta_plus(ev, mu, quad_order);
    case Contour::minus:
      return delta_minus(ev, mu, quad_order);
    case Contour::full:
      return delta_homogeneous(ev, mu, quad_order);
    case Contour::feynman:
      return delta_feynman(ev, mu, quad_order);
  }
  throw std::invalid_argument("delta_branch: unknown contour");
}

cd massless_d(const EventPair& ev, int quad_order, Contour kind) {
  return delta_branch(ev, 0.0, quad_order, kind);
}

cd delta_homogeneous_dt(const EventPair& ev, double mu, int quad_order) {
  validate(ev, mu, quad_order);
  const double tau = ev.t - ev.that;
  return -quad3(ev, mu, quad_order, [tau](double w) { return cd(std::cos(w * tau), 0.0); });
}

cd delta_homogeneous_dtdt(const EventPair& ev, double mu, int quad_order) {
  validate(ev, mu, quad_order);
  const double tau = ev.t - ev.that;
  return quad3(ev, mu, quad_order, [tau](double w) { return cd(w * std::sin(w * tau), 0.0); });
}

double homogeneous_annihilation_residual(const EventPair& ev, double mu, int quad_order) {
  // D#_j D#_j f(n_j) = sqrt((n+1)(n+2))/2 f(n+2) - (2n+1)/2 f(n) + sqrt(n(n-1))/2 f(n-2)
  const cd center = delta_homogeneous(ev, mu, quad_order);
  cd lap{0.0, 0.0};
  for (int ax = 0; ax < 3; ++ax) {
    const double nj = ev.n[ax];
    EventPair up = ev;
    up.n[ax] += 2;
    lap += 0.5 * std::sqrt((nj + 1.0) * (nj + 2.0)) * delta_homogeneous(up, mu, quad_order);
    lap -= 0.5 * (2.0 * nj + 1.0) * center;
    if (ev.n[ax] >= 2) {
      EventPair dn = ev;
      dn.n[ax] -= 2;
      lap += 0.5 * std::sqrt(nj * (nj - 1.0)) * delta_homogeneous(dn, mu, quad_order);
    }
  }
  const cd res = lap - delta_homogeneous_dtdt(ev, mu, quad_order) - mu * mu * center;
  return std::abs(res);
}

Eigen::Matrix4cd s_function(const EventPair& ev, double m, Contour branch, int quad_order) {
  if (m <= 0.0) throw std::domain_error("s_function: mass must be positive");
  if (branch == Contour::feynman) {
    if (ev.t == ev.that)
      throw std::invalid_argument("s_function: theta is undefined at t == that");
    if (ev.t > ev.that) return -s_function(ev, m, Contour::plus, quad_order);
    return s_function(ev, m, Contour::minus, quad_order);
  }
  validate(ev, m, quad_order);
  const double tau = ev.t - ev.that;

  // five moments of the branch integrand: plain, k_j-weighted, time-derivative
  const int n_max = std::max({ev.n[0], ev.n[1], ev.n[2], ev.nhat[0], ev.nhat[1], ev.nhat[2]});
  const auto tab = axis_table(quad_order, n_max);
  const size_t nn = tab->nodes.size();
  std::array<std::vector<cd>, 3> axis;
  for (int ax = 0; ax < 3; ++ax) {
    axis[ax].resize(nn);
    for (size_t a = 0; a < nn; ++a)
      axis[ax][a] = tab->xi(static_cast<Eigen::Index>(a), ev.n[ax]) *
                    std::conj(tab->xi(static_cast<Eigen::Index>(a), ev.nhat[ax])) * tab->folded[a];
  }
  cd m0{0.0, 0.0}, mt{0.0, 0.0};
  std::array<cd, 3> mk{cd{0.0, 0.0}, cd{0.0, 0.0}, cd{0.0, 0.0}};
  for (size_t a = 0; a < nn; ++a)
    for (size_t b = 0; b < nn; ++b) {
      const cd vab = axis[0][a] * axis[1][b];
      const double kab2 = tab->nodes[a] * tab->nodes[a] + tab->nodes[b] * tab->nodes[b];
      for (size_t c = 0; c < nn; ++c) {
        const double w = std::sqrt(kab2 + tab->nodes[c] * tab->nodes[c] + m * m);
        cd base, dt;
        if (branch == Contour::plus) {
          base = -I_UNIT * std::exp(-I_UNIT * w * tau) / (2.0 * w);
          dt = -I_UNIT * w * base;
        } else if (branch == Contour::minus) {
          base = I_UNIT * std::exp(I_UNIT * w * tau) / (2.0 * w);
          dt = I_UNIT * w * base;
        } else {
          base = cd(-std::sin(w * tau) / w, 0.0);
          dt = cd(-std::cos(w * tau), 0.0);
        }
        const cd v = vab * axis[2][c];
        m0 += v * base;
        mt += v * dt;
        mk[0] += v * tab->nodes[a] * base;
        mk[1] += v * tab->nodes[b] * base;
        mk[2] += v * tab->nodes[c] * base;
      }
    }

  const GammaSet gs = gamma_default();
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  for (int j = 0; j < 3; ++j) s += I_UNIT * mk[j] * gs.g[static_cast<size_t>(j)];
  s += mt * gs.g[3];
  s -= m * m0 * Eigen::Matrix4cd::Identity();
  return s;
}

double s_homogeneous_annihilation_residual(const EventPair& ev, double m, int quad_order,
                                           double h) {
  const GammaSet gs = gamma_default();
  Eigen::Matrix4cd acc = Eigen::Matrix4cd::Zero();
  for (int ax = 0; ax < 3; ++ax) {
    const double nj = ev.n[ax];
    EventPair up = ev;
    up.n[ax] += 1;
    Eigen::Matrix4cd diff =
        std::sqrt((nj + 1.0) / 2.0) * s_function(up, m, Contour::full, quad_order);
    if (ev.n[ax] >= 1) {
      EventPair dn = ev;
      dn.n[ax] -= 1;
      diff -= std::sqrt(nj / 2.0) * s_function(dn, m, Contour::full, quad_order);
    }
    acc += gs.g[static_cast<size_t>(ax)] * diff;
  }
  EventPair fwd = ev, bwd = ev;
  fwd.t += h;
  bwd.t -= h;
  const Eigen::Matrix4cd dt = (s_function(fwd, m, Contour::full, quad_order) -
                               s_function(bwd, m, Contour::full, quad_order)) /
                              (2.0 * h);
  acc += gs.g[3] * dt;
  acc += m * s_function(ev, m, Contour::full, quad_order);
  return acc.cwiseAbs().maxCoeff();
}

}  // namespace dpsqft
