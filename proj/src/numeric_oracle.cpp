#include "rms/numeric_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "rms/planar.hpp"
#include "rms/real_structure.hpp"
#include "rms/tree.hpp"

namespace rms {
namespace {

using cplx = std::complex<double>;
using Eigen::MatrixXd;
using Eigen::VectorXd;

int mod2(int x) { return ((x % 2) + 2) % 2; }

struct EvalFail {};

// ----- deterministic sampling ------------------------------------------

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::mt19937_64 make_rng(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
  return std::mt19937_64(
      splitmix(base ^ splitmix(a ^ splitmix(b ^ splitmix(c)))));
}

// Platform-independent uniform draw in [0, 1).
double unit_real(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

double uni(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * unit_real(rng);
}

// ----- the projective line and its maps --------------------------------

struct P1 {
  cplx z{0.0, 0.0};
  bool inf = false;
};

P1 fin(cplx z) { return {z, false}; }
P1 point_inf() { return {{0.0, 0.0}, true}; }

P1 antipode(const P1& p) {
  if (p.inf) return fin(0.0);
  if (std::abs(p.z) < 1e-300) return point_inf();
  return fin(-1.0 / std::conj(p.z));
}

struct Mobius {
  cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

  P1 operator()(const P1& p) const {
    cplx num, den;
    if (p.inf) {
      num = a;
      den = c;
    } else {
      num = a * p.z + b;
      den = c * p.z + d;
    }
    double scale = std::abs(num) + std::abs(den);
    if (scale == 0.0 || std::abs(den) <= 1e-14 * scale) return point_inf();
    return fin(num / den);
  }

  Mobius after(const Mobius& g) const {
    return {a * g.a + b * g.c, a * g.b + b * g.d, c * g.a + d * g.c,
            c * g.b + d * g.d};
  }

  Mobius inverse() const { return {d, -b, -c, a}; }
};

// The map sending (p0, p1, p2) to (0, 1, inf), via the cross ratio.
bool to_standard_triple(const P1& p0, const P1& p1, const P1& p2, Mobius& m) {
  auto near = [](const P1& x, const P1& y) {
    if (x.inf || y.inf) return x.inf && y.inf;
    return std::abs(x.z - y.z) < 1e-12 * (1.0 + std::abs(x.z));
  };
  if (near(p0, p1) || near(p1, p2) || near(p0, p2)) return false;
  if (p0.inf) {
    m = {0.0, p1.z - p2.z, 1.0, -p2.z};
  } else if (p1.inf) {
    m = {1.0, -p0.z, 1.0, -p2.z};
  } else if (p2.inf) {
    m = {1.0, -p0.z, 0.0, p1.z - p0.z};
  } else {
    m = {p1.z - p2.z, -p0.z * (p1.z - p2.z), p1.z - p0.z,
         -p2.z * (p1.z - p0.z)};
  }
  return true;
}

// The unique map with (a, b, c) -> (A, B, C).
bool norm3(const P1& a, const P1& b, const P1& c, const P1& A, const P1& B,
           const P1& C, Mobius& m) {
  Mobius s, t;
  if (!to_standard_triple(a, b, c, s) || !to_standard_triple(A, B, C, t))
    return false;
  m = t.inverse().after(s);
  return true;
}

// Elliptic rotation fixing i, conjugate to a disk rotation by -2 theta.
Mobius rot_about_i(double theta) {
  double co = std::cos(theta), si = std::sin(theta);
  return {co, -si, si, co};
}

// The real map sending the pair point p (off the axis) to i and the real
// point x to the target 0 or inf.  Works for p in either half plane; its
// determinant is negative exactly when p starts below the axis.
bool norm_pair(const P1& p, const P1& x, const P1& target, Mobius& m) {
  if (p.inf || std::abs(p.z.imag()) < 1e-12 * (1.0 + std::abs(p.z)))
    return false;
  Mobius h1{1.0, -p.z.real(), 0.0, p.z.imag()};
  P1 w = h1(x);
  double theta;
  if (target.inf) {
    theta = w.inf ? 0.0 : std::atan(-1.0 / w.z.real());
    if (!w.inf && std::abs(w.z.real()) < 1e-14) theta = 1.5707963267948966;
  } else {
    theta = w.inf ? 1.5707963267948966 : std::atan(w.z.real());
  }
  m = rot_about_i(theta).after(h1);
  return true;
}

using Config = std::vector<P1>;

// ----- chamber charts ---------------------------------------------------

// kind 0: three real pins (l >= 3): first fixed tail to 0, last to 1, n to
//         infinity; coordinates are the pair points then the interior tails.
// kind 1: l in {1, 2}: the plus member among {k, 2k} to i, n to infinity.
// kind 2: l == 0 with real points: the plus members among {k, 2k} and
//         {k-1, 2k-1} to i and lambda i.
// kind 3: no real points: antipodal structure, k to i, k-1 to lambda i.
struct ChamberChart {
  LabelInvolution sigma;
  OPlanar o;
  int kind = 0;
  int form_sign = 1;
  std::vector<int> pair_coords;
  std::vector<int> real_coords;
  bool has_lambda = false;
  int zeta = -1, zeta2 = -1;
  int pin0 = -1, pin1 = -1;

  int dim() const {
    return 2 * static_cast<int>(pair_coords.size()) +
           static_cast<int>(real_coords.size()) + (has_lambda ? 1 : 0);
  }

  int partner(int a) const { return sigma(a); }

  Config place(const VectorXd& xi) const {
    const int n = sigma.n();
    Config pos(n + 1);
    int at = 0;
    for (int a : pair_coords) {
      pos[a] = fin({xi[at], xi[at + 1]});
      at += 2;
    }
    for (int c : real_coords) {
      pos[c] = fin({xi[at], 0.0});
      ++at;
    }
    double lam = has_lambda ? xi[at++] : 0.0;
    switch (kind) {
      case 0:
        pos[pin0] = fin(0.0);
        pos[pin1] = fin(1.0);
        pos[n] = point_inf();
        break;
      case 1:
        pos[zeta] = fin({0.0, 1.0});
        pos[n] = point_inf();
        break;
      case 2:
        pos[zeta] = fin({0.0, 1.0});
        pos[zeta2] = fin({0.0, lam});
        break;
      case 3:
        pos[sigma.k] = fin({0.0, 1.0});
        pos[sigma.k - 1] = fin({0.0, lam});
        break;
    }
    if (kind == 3) {
      for (int a = 1; a <= sigma.k; ++a) pos[sigma(a)] = antipode(pos[a]);
    } else {
      for (int a : o.vertex_data[0].plus)
        pos[partner(a)] =
            pos[a].inf ? point_inf() : fin(std::conj(pos[a].z));
    }
    return pos;
  }

  VectorXd sample(std::mt19937_64& rng) const {
    const int n = sigma.n();
    for (int attempt = 0; attempt < 200; ++attempt) {
      VectorXd xi(dim());
      int at = 0;
      for (size_t i = 0; i < pair_coords.size(); ++i) {
        xi[at++] = uni(rng, -1.8, 1.8);
        xi[at++] = uni(rng, 0.25, 1.8);
      }
      if (!real_coords.empty()) {
        std::vector<double> v(real_coords.size());
        double lo = kind == 0 ? 0.08 : -0.9;
        double hi = kind == 0 ? 0.92 : 0.9;
        for (double& x : v) x = uni(rng, lo, hi);
        std::sort(v.begin(), v.end());
        for (double x : v) xi[at++] = x;
      }
      if (has_lambda) xi[at++] = uni(rng, 0.15, 0.85);
      Config pos = place(xi);
      double sep = 1e300;
      for (int f = 1; f <= n; ++f)
        for (int g = f + 1; g <= n; ++g)
          if (!pos[f].inf && !pos[g].inf)
            sep = std::min(sep, std::abs(pos[f].z - pos[g].z));
      if (sep > 0.04) return xi;
    }
    throw std::runtime_error("chamber sampling failed");
  }

  // Raw realization test, run before any normalization: plus points in the
  // upper half plane, fixed tails on the axis in the structure's cyclic
  // order (reading by increasing position, infinity last).
  bool realizes(const Config& pos) const {
    const VertexPlanar& vd = o.vertex_data[0];
    if (vd.empty_real) return true;
    for (int a : vd.plus) {
      if (pos[a].inf) return false;
      if (pos[a].z.imag() <= 1e-9 * (1.0 + std::abs(pos[a].z))) return false;
    }
    if (vd.order.empty()) return true;
    std::vector<std::pair<double, int>> xs;
    int at_inf = -1;
    for (int c : vd.order) {
      const P1& p = pos[c];
      if (p.inf) {
        if (at_inf >= 0) return false;
        at_inf = c;
        continue;
      }
      if (std::abs(p.z.imag()) > 1e-6 * (1.0 + std::abs(p.z))) return false;
      xs.push_back({p.z.real(), c});
    }
    std::sort(xs.begin(), xs.end());
    std::vector<int> seq;
    for (auto& [x, c] : xs) seq.push_back(c);
    if (at_inf >= 0) seq.push_back(at_inf);
    return anchor_cycle(seq, sigma.n()) == vd.order;
  }

  bool solve(const Config& pos, Mobius& m) const {
    const int n = sigma.n();
    switch (kind) {
      case 0:
        return norm3(pos[pin0], pos[pin1], pos[n], fin(0.0), fin(1.0),
                     point_inf(), m);
      case 1:
        return norm_pair(pos[zeta], pos[n], point_inf(), m);
      case 2: {
        const P1& p = pos[zeta];
        if (p.inf || std::abs(p.z.imag()) < 1e-12) return false;
        Mobius h1{1.0, -p.z.real(), 0.0, p.z.imag()};
        P1 z2 = h1(pos[zeta2]);
        if (z2.inf) return false;
        cplx den = z2.z + cplx{0.0, 1.0};
        if (std::abs(den) < 1e-12) return false;
        cplx w = (z2.z - cplx{0.0, 1.0}) / den;
        double theta = (std::arg(w) - 3.141592653589793) / 2.0;
        m = rot_about_i(theta).after(h1);
        return true;
      }
      case 3: {
        const P1& p = pos[sigma.k];
        if (p.inf) return false;
        Mobius u{1.0, -p.z, std::conj(p.z), 1.0};
        P1 w = u(pos[sigma.k - 1]);
        if (w.inf || std::abs(w.z) < 1e-12) return false;
        double theta = -1.5707963267948966 - std::arg(w.z);
        Mobius rot{std::polar(1.0, theta), 0.0, 0.0, 1.0};
        Mobius v{1.0, {0.0, 1.0}, {0.0, 1.0}, 1.0};
        m = v.after(rot.after(u));
        return true;
      }
    }
    return false;
  }

  bool normalize(Config& pos) const {
    Mobius m;
    if (!solve(pos, m)) return false;
    for (int f = 1; f <= sigma.n(); ++f) pos[f] = m(pos[f]);
    return true;
  }

  VectorXd coords(const Config& pos) const {
    VectorXd xi(dim());
    int at = 0;
    for (int a : pair_coords) {
      if (pos[a].inf) throw EvalFail{};
      xi[at++] = pos[a].z.real();
      xi[at++] = pos[a].z.imag();
    }
    for (int c : real_coords) {
      if (pos[c].inf) throw EvalFail{};
      xi[at++] = pos[c].z.real();
    }
    if (has_lambda) {
      int zl = kind == 3 ? sigma.k - 1 : zeta2;
      if (pos[zl].inf) throw EvalFail{};
      xi[at++] = pos[zl].z.imag();
    }
    return xi;
  }
};

ChamberChart make_chamber(const LabelInvolution& sigma, const OPlanar& o) {
  ChamberChart c;
  c.sigma = sigma;
  c.o = o;
  const VertexPlanar& vd = o.vertex_data.at(0);
  const int k = sigma.k, l = sigma.l;
  if (vd.empty_real) {
    c.kind = 3;
    c.form_sign = -1;
    c.has_lambda = true;
    for (int a = 1; a <= k - 2; ++a) c.pair_coords.push_back(a);
    return c;
  }
  if (l >= 3) {
    c.kind = 0;
    c.pin0 = vd.order[1];
    c.pin1 = vd.order[l - 1];
    for (int i = 2; i <= l - 2; ++i) c.real_coords.push_back(vd.order[i]);
    c.pair_coords = vd.plus;
    return c;
  }
  if (l >= 1) {
    c.kind = 1;
    for (int a : vd.plus)
      if (a == k || a == 2 * k) c.zeta = a;
    for (int a : vd.plus)
      if (a != c.zeta) c.pair_coords.push_back(a);
    if (l == 2) c.real_coords.push_back(2 * k + 1);
    return c;
  }
  c.kind = 2;
  c.has_lambda = true;
  for (int a : vd.plus) {
    if (a == k || a == 2 * k)
      c.zeta = a;
    else if (a == k - 1 || a == 2 * k - 1)
      c.zeta2 = a;
    else
      c.pair_coords.push_back(a);
  }
  return c;
}

// ----- wall charts -------------------------------------------------------

// Rotation of a cyclic sequence listing the entries after f, f omitted.
std::vector<int> rotate_after(const std::vector<int>& ord, int f) {
  auto it = std::find(ord.begin(), ord.end(), f);
  std::vector<int> out(it + 1, ord.end());
  out.insert(out.end(), ord.begin(), it);
  return out;
}

int real_slot(const TreeInvolution& iota, int v) {
  auto it = std::find(iota.real_vertices.begin(), iota.real_vertices.end(), v);
  return static_cast<int>(it - iota.real_vertices.begin());
}

// Chart data of one real wall vertex.  pin_kind 0 pins three fixed flags to
// real targets; pin_kind 1 pins a conjugate pair to i and one flag.
struct VertexChart {
  int vertex = -1;
  int pin_kind = 0;
  std::vector<std::pair<int, P1>> pins;
  int pinned_pair = -1;
  std::vector<int> free_pairs;
  std::vector<int> free_reals;
  int real_mode = 0;  // 0: (0,1) ascending; 1: (1,2) ascending; 2 / 3: single

  int dim() const {
    return 2 * static_cast<int>(free_pairs.size()) +
           static_cast<int>(free_reals.size());
  }
};

// Pinned chart of a codimension-one stratum, one planar lift.
// case 1: invariant edge, l > 0.  case 2: invariant edge, l == 0.
// case 3: flag-swapped edge (conjugate vertex pair).
struct WallChart {
  LabelInvolution sigma;
  Tree gamma;
  TreeInvolution iota;
  OPlanar lift;
  int wcase = 1;
  int va = -1, vf = -1;  // vertex of tail n and the far vertex
  int fe = -1, fhe = -1;
  VertexChart far_vc, anchor_vc;
  std::vector<int> free_tails;  // case 3, on the plus side
  std::vector<std::pair<int, P1>> pins_a, pins_f;
  int vplus = -1;

  int dim() const {
    if (wcase == 3) return 2 * static_cast<int>(free_tails.size());
    return far_vc.dim() + anchor_vc.dim();
  }

  void place_vertex(const VertexChart& vc, const VectorXd& xi, int& at,
                    Config& pos) const {
    for (int a : vc.free_pairs) {
      pos[a] = fin({xi[at], xi[at + 1]});
      pos[iota.flag_map[a]] = fin(std::conj(pos[a].z));
      at += 2;
    }
    for (int c : vc.free_reals) {
      pos[c] = fin({xi[at], 0.0});
      ++at;
    }
    if (vc.pin_kind == 1) {
      pos[vc.pinned_pair] = fin({0.0, 1.0});
      pos[iota.flag_map[vc.pinned_pair]] = fin({0.0, -1.0});
    }
    for (const auto& [f, target] : vc.pins) pos[f] = target;
  }

  Config place(const VectorXd& xi) const {
    Config pos(gamma.num_flags + 1);
    int at = 0;
    if (wcase != 3) {
      place_vertex(far_vc, xi, at, pos);
      place_vertex(anchor_vc, xi, at, pos);
      return pos;
    }
    std::vector<char> set(gamma.num_flags + 1, 0);
    for (int a : free_tails) {
      pos[a] = fin({xi[at], xi[at + 1]});
      set[a] = 1;
      at += 2;
    }
    for (const auto& [f, target] : pins_a) {
      pos[f] = target;
      set[f] = 1;
    }
    for (const auto& [f, target] : pins_f) {
      pos[f] = target;
      set[f] = 1;
    }
    // The far component mirrors the anchor one through w = -conj(z).
    for (int f = 1; f <= gamma.n; ++f)
      if (!set[f]) pos[f] = fin(-std::conj(pos[iota.flag_map[f]].z));
    return pos;
  }

  VectorXd coords(const Config& pos) const {
    VectorXd xi(dim());
    int at = 0;
    auto read_vertex = [&](const VertexChart& vc) {
      for (int a : vc.free_pairs) {
        if (pos[a].inf) throw EvalFail{};
        xi[at++] = pos[a].z.real();
        xi[at++] = pos[a].z.imag();
      }
      for (int c : vc.free_reals) {
        if (pos[c].inf) throw EvalFail{};
        xi[at++] = pos[c].z.real();
      }
    };
    if (wcase != 3) {
      read_vertex(far_vc);
      read_vertex(anchor_vc);
      return xi;
    }
    for (int a : free_tails) {
      if (pos[a].inf) throw EvalFail{};
      xi[at++] = pos[a].z.real();
      xi[at++] = pos[a].z.imag();
    }
    return xi;
  }

  bool solve_vertex(const VertexChart& vc, const Config& pos,
                    Mobius& m) const {
    if (vc.pin_kind == 0) {
      return norm3(pos[vc.pins[0].first], pos[vc.pins[1].first],
                   pos[vc.pins[2].first], vc.pins[0].second, vc.pins[1].second,
                   vc.pins[2].second, m);
    }
    return norm_pair(pos[vc.pinned_pair], pos[vc.pins[0].first],
                     vc.pins[0].second, m);
  }

  bool normalize(Config& pos) const {
    auto apply_at = [&](int v, const Mobius& m) {
      for (int f = 1; f <= gamma.num_flags; ++f)
        if (gamma.boundary[f] == v) pos[f] = m(pos[f]);
    };
    if (wcase != 3) {
      for (const VertexChart* vc : {&far_vc, &anchor_vc}) {
        Mobius m;
        if (!solve_vertex(*vc, pos, m)) return false;
        apply_at(vc->vertex, m);
      }
      return true;
    }
    Mobius ma, mf;
    if (!norm3(pos[pins_a[0].first], pos[pins_a[1].first],
               pos[pins_a[2].first], pins_a[0].second, pins_a[1].second,
               pins_a[2].second, ma))
      return false;
    if (!norm3(pos[pins_f[0].first], pos[pins_f[1].first],
               pos[pins_f[2].first], pins_f[0].second, pins_f[1].second,
               pins_f[2].second, mf))
      return false;
    apply_at(va, ma);
    apply_at(vf, mf);
    return true;
  }

  VectorXd sample(std::mt19937_64& rng) const {
    for (int attempt = 0; attempt < 200; ++attempt) {
      VectorXd xi(dim());
      int at = 0;
      auto fill_vertex = [&](const VertexChart& vc) {
        for (size_t i = 0; i < vc.free_pairs.size(); ++i) {
          xi[at++] = uni(rng, -1.8, 1.8);
          xi[at++] = uni(rng, 0.25, 1.8);
        }
        if (vc.free_reals.empty()) return;
        double lo, hi;
        switch (vc.real_mode) {
          case 0: lo = 0.08, hi = 0.92; break;
          case 1: lo = 1.08, hi = 1.92; break;
          case 2: lo = -0.9, hi = 0.9; break;
          default: lo = 0.6, hi = 1.4; break;
        }
        std::vector<double> v(vc.free_reals.size());
        for (double& x : v) x = uni(rng, lo, hi);
        std::sort(v.begin(), v.end());
        for (double x : v) xi[at++] = x;
      };
      if (wcase != 3) {
        fill_vertex(far_vc);
        fill_vertex(anchor_vc);
      } else {
        for (size_t i = 0; i < free_tails.size(); ++i) {
          xi[at++] = uni(rng, -1.8, 1.8);
          xi[at++] = uni(rng, -1.8, 1.8);
        }
      }
      Config pos = place(xi);
      double sep = 1e300;
      for (int v = 0; v < 2; ++v) {
        std::vector<cplx> pts;
        for (int f = 1; f <= gamma.num_flags; ++f)
          if (gamma.boundary[f] == v && !pos[f].inf) pts.push_back(pos[f].z);
        for (size_t i = 0; i < pts.size(); ++i)
          for (size_t j = i + 1; j < pts.size(); ++j)
            sep = std::min(sep, std::abs(pts[i] - pts[j]));
      }
      if (sep > 0.04) return xi;
    }
    throw std::runtime_error("wall sampling failed");
  }

  // Per-vertex raw realization of the lift's planar data.
  bool realizes(const Config& pos) const {
    if (wcase == 3) return true;
    for (const VertexChart* vc : {&far_vc, &anchor_vc}) {
      const VertexPlanar& vd =
          lift.vertex_data[real_slot(iota, vc->vertex)];
      for (int a : vd.plus) {
        if (pos[a].inf) return false;
        if (pos[a].z.imag() <= 1e-9 * (1.0 + std::abs(pos[a].z)))
          return false;
      }
      std::vector<std::pair<double, int>> xs;
      int at_inf = -1;
      for (int c : vd.order) {
        const P1& p = pos[c];
        if (p.inf) {
          if (at_inf >= 0) return false;
          at_inf = c;
          continue;
        }
        if (std::abs(p.z.imag()) > 1e-6 * (1.0 + std::abs(p.z)))
          return false;
        xs.push_back({p.z.real(), c});
      }
      std::sort(xs.begin(), xs.end());
      std::vector<int> seq;
      for (auto& [x, c] : xs) seq.push_back(c);
      if (at_inf >= 0) seq.push_back(at_inf);
      if (anchor_cycle(seq, gamma.n) != vd.order) return false;
    }
    return true;
  }

  // Glue the node with parameter t.  Both vertex components are placed in
  // one coordinate: anchor points stay, far points w map to z_e - t / w.
  // Across a flag-swapped edge the result carries the smoothed real
  // structure; t > 0 has a fixed circle and is straightened to the conjugate
  // form by u -> i(1-u)/(1+u), t < 0 is rescaled to the antipodal form.
  Config smooth(const Config& pos, double t) const {
    Config out(gamma.n + 1);
    if (wcase != 3) {
      P1 znode = pos[fe];
      for (int f = 1; f <= gamma.n; ++f) {
        if (gamma.boundary[f] == va) {
          out[f] = pos[f];
        } else {
          const P1& w = pos[f];
          out[f] = w.inf ? znode : fin(znode.z - t / w.z);
        }
      }
      return out;
    }
    for (int f = 1; f <= gamma.n; ++f) {
      if (gamma.boundary[f] == va)
        out[f] = pos[f];
      else
        out[f] = fin(-t / pos[f].z);
    }
    if (t > 0) {
      const double rt = std::sqrt(t);
      for (int f = 1; f <= gamma.n; ++f) {
        cplx u = vplus == vf ? out[f].z / rt : rt / out[f].z;
        cplx den = 1.0 + u;
        if (std::abs(den) < 1e-12) {
          out[f] = point_inf();
        } else {
          out[f] = fin(cplx{0.0, 1.0} * (1.0 - u) / den);
        }
      }
    } else {
      const double rt = std::sqrt(-t);
      for (int f = 1; f <= gamma.n; ++f) out[f] = fin(out[f].z / rt);
    }
    return out;
  }
};

WallChart make_wall_chart(const LabelInvolution& sigma, const Tree& gamma,
                          const TreeInvolution& iota, const OPlanar& lift) {
  WallChart w;
  w.sigma = sigma;
  w.gamma = gamma;
  w.iota = iota;
  w.lift = lift;
  auto [e1, e2] = edges(gamma)[0];
  w.va = gamma.boundary[gamma.n];
  w.vf = 1 - w.va;
  w.fe = gamma.boundary[e1] == w.va ? e1 : e2;
  w.fhe = w.fe == e1 ? e2 : e1;

  if (iota.real_vertices.size() != 2) {
    w.wcase = 3;
    w.vplus = gamma.boundary[lift.plus_flag];
    int mhat = -1;
    for (int f = 1; f <= gamma.n; ++f)
      if (gamma.boundary[f] == w.va && f != gamma.n) mhat = std::max(mhat, f);
    w.pins_a = {{w.fe, fin(0.0)},
                {mhat, fin({0.0, 0.5})},
                {gamma.n, fin({0.0, 1.0})}};
    w.pins_f = {{w.fhe, fin(0.0)},
                {iota.flag_map[mhat], fin({0.0, 0.5})},
                {iota.flag_map[gamma.n], fin({0.0, 1.0})}};
    std::vector<int> pinned = {w.vplus == w.va ? mhat : iota.flag_map[mhat],
                               w.vplus == w.va ? gamma.n
                                               : iota.flag_map[gamma.n]};
    for (int f = 1; f <= gamma.n; ++f)
      if (gamma.boundary[f] == w.vplus && f != pinned[0] && f != pinned[1])
        w.free_tails.push_back(f);
    return w;
  }

  w.wcase = sigma.l > 0 ? 1 : 2;

  auto pick_pinned_pair = [&](const VertexPlanar& vd, VertexChart& vc) {
    vc.pin_kind = 1;
    vc.pinned_pair = *std::max_element(vd.plus.begin(), vd.plus.end());
    for (int a : vd.plus)
      if (a != vc.pinned_pair) vc.free_pairs.push_back(a);
  };

  // Far vertex: edge flag to 0; with two or more fixed tails the first goes
  // to 1 and the last to infinity, otherwise a pair is pinned instead.
  {
    VertexChart vc;
    vc.vertex = w.vf;
    const VertexPlanar& vd = lift.vertex_data[real_slot(iota, w.vf)];
    std::vector<int> ds = rotate_after(vd.order, w.fhe);
    const int r = static_cast<int>(ds.size());
    if (r >= 2) {
      vc.pin_kind = 0;
      vc.pins = {{ds[0], fin(1.0)},
                 {ds[r - 1], point_inf()},
                 {w.fhe, fin(0.0)}};
      for (int i = 1; i <= r - 2; ++i) vc.free_reals.push_back(ds[i]);
      vc.real_mode = 1;
      vc.free_pairs = vd.plus;
    } else {
      pick_pinned_pair(vd, vc);
      vc.pins = {{w.fhe, fin(0.0)}};
      if (r == 1) {
        vc.free_reals.push_back(ds[0]);
        vc.real_mode = 3;
      }
    }
    w.far_vc = vc;
  }

  // Anchor vertex: n to infinity; with three or more fixed flags the cycle
  // after n runs from 0 to 1 and the interior entries are free.
  {
    VertexChart vc;
    vc.vertex = w.va;
    const VertexPlanar& vd = lift.vertex_data[real_slot(iota, w.va)];
    const int m = static_cast<int>(vd.order.size());
    if (m >= 3) {
      vc.pin_kind = 0;
      std::vector<int> cs(vd.order.begin() + 1, vd.order.end());
      vc.pins = {{cs.front(), fin(0.0)},
                 {cs.back(), fin(1.0)},
                 {gamma.n, point_inf()}};
      for (int i = 1; i <= m - 3; ++i) vc.free_reals.push_back(cs[i]);
      vc.real_mode = 0;
      vc.free_pairs = vd.plus;
    } else if (m == 2) {
      pick_pinned_pair(vd, vc);
      vc.pins = {{gamma.n, point_inf()}};
      vc.free_reals.push_back(w.fe);
      vc.real_mode = 2;
    } else {
      pick_pinned_pair(vd, vc);
      vc.pins = {{w.fe, fin(0.0)}};
    }
    w.anchor_vc = vc;
  }
  return w;
}

// ----- Jacobian measurements --------------------------------------------

struct Measurement {
  int exponent = -1;
  double min_abs_det = 1e300;
  bool deterministic = true;
  bool ok = true;
};

// Exponent of one lift against one adjacent chamber:
// (-1)^exponent = -sign(form sign * det d(chamber coords)/d(t, wall coords)).
Measurement measure_lift(const WallChart& wc, const ChamberChart& cc,
                         int side, std::uint64_t key,
                         const OracleOptions& opt) {
  Measurement m;
  const int d = wc.dim() + 1;
  if (cc.dim() != d) {
    m.ok = false;
    return m;
  }
  auto F = [&](double t, const VectorXd& xi) {
    Config ch = wc.smooth(wc.place(xi), side * t);
    if (!cc.normalize(ch)) throw EvalFail{};
    return cc.coords(ch);
  };
  for (int seed = 0; seed < opt.seeds; ++seed) {
    auto rng = make_rng(opt.base_seed, key, 0xA11CE, seed);
    VectorXd xi = wc.sample(rng);
    Config base = wc.place(xi);
    if (!wc.realizes(base) || !cc.realizes(wc.smooth(base, side * opt.t0))) {
      m.ok = false;
      return m;
    }
    MatrixXd J(d, d);
    try {
      const double h = opt.step;
      J.col(0) = (F(opt.t0 + h, xi) - F(opt.t0 - h, xi)) / (2 * h);
      for (int j = 0; j + 1 < d; ++j) {
        VectorXd xp = xi, xm = xi;
        xp[j] += h;
        xm[j] -= h;
        J.col(j + 1) = (F(opt.t0, xp) - F(opt.t0, xm)) / (2 * h);
      }
    } catch (const EvalFail&) {
      m.ok = false;
      return m;
    }
    const double det = J.determinant();
    m.min_abs_det = std::min(m.min_abs_det, std::abs(det));
    if (!(std::abs(det) >= opt.min_det)) {
      m.ok = false;
      return m;
    }
    int e = (det > 0 ? 1 : -1) * cc.form_sign > 0 ? 1 : 0;
    if (seed == 0) {
      m.exponent = e;
    } else if (e != m.exponent) {
      m.deterministic = false;
      m.ok = false;
      return m;
    }
  }
  return m;
}

// Sign of the chart change between two lifts of the same wall.
int chart_change_sign(const WallChart& a, const WallChart& b,
                      std::uint64_t key, const OracleOptions& opt) {
  const int d = a.dim();
  if (d == 0) return 1;
  int sgn = 0;
  for (int seed = 0; seed < opt.seeds; ++seed) {
    auto rng = make_rng(opt.base_seed, key, 0xB0B, seed);
    VectorXd xi = a.sample(rng);
    auto G = [&](const VectorXd& x) {
      Config pos = a.place(x);
      if (!b.normalize(pos)) throw EvalFail{};
      return b.coords(pos);
    };
    MatrixXd J(d, d);
    try {
      const double h = opt.step;
      for (int j = 0; j < d; ++j) {
        VectorXd xp = xi, xm = xi;
        xp[j] += h;
        xm[j] -= h;
        J.col(j) = (G(xp) - G(xm)) / (2 * h);
      }
    } catch (const EvalFail&) {
      return 0;
    }
    const double det = J.determinant();
    if (!(std::abs(det) >= opt.min_det)) return 0;
    int s = det > 0 ? 1 : -1;
    if (sgn == 0)
      sgn = s;
    else if (s != sgn)
      return 0;
  }
  return sgn;
}

// ----- the sweep ---------------------------------------------------------

struct WallJob {
  Tree gamma;
  TreeInvolution iota;
  OPlanar uhat;
  std::string label;
};

WallCheck check_wall(const LabelInvolution& sigma, const WallJob& job,
                     const Tree& tau, const TreeInvolution& iota_tau,
                     const OracleOptions& opt) {
  WallCheck out;
  out.label = job.label;
  bool ok = true;
  const std::uint64_t lkey = fnv1a(job.label);
  const std::vector<OPlanar> lifts =
      reversal_orbit(job.gamma, job.iota, job.uhat);
  const auto reps = edge_orbit_reps(job.gamma, job.iota);
  std::map<std::pair<size_t, OPlanar>, int> expo;

  for (size_t li = 0; li < lifts.size(); ++li) {
    const OPlanar& lift = lifts[li];
    WallChart wc = make_wall_chart(sigma, job.gamma, job.iota, lift);
    const auto ctrs = contract_many(sigma, job.gamma, job.iota, lift, reps);
    for (size_t ci = 0; ci < ctrs.size(); ++ci) {
      const OPlanar& cho = ctrs[ci].o;
      const bool empty =
          !cho.vertex_data.empty() && cho.vertex_data[0].empty_real;
      LiftCheck lc;
      lc.empty_side = empty;
      if (wc.wcase == 1) {
        TwoVertexContext ctx =
            two_vertex_context(sigma, job.gamma, job.iota, lift);
        lc.q = ctx.q;
        lc.r = ctx.r;
        lc.s = ctx.s;
        if (sigma.l >= 2) lc.predicted = aleph(ctx);
      } else {
        lc.predicted = aleph_l0(sigma, job.gamma, job.iota, lift, empty);
      }
      const int side = wc.wcase == 3 ? (empty ? -1 : 1) : 1;
      ChamberChart cc = make_chamber(sigma, cho);
      Measurement m = measure_lift(
          wc, cc, side, splitmix(lkey ^ (li * 1000003 + ci)), opt);
      lc.measured = m.exponent;
      lc.min_abs_det = m.min_abs_det == 1e300 ? 0.0 : m.min_abs_det;
      lc.deterministic = m.deterministic;
      lc.pass = m.ok && (lc.predicted < 0 || lc.measured == lc.predicted);
      ok = ok && lc.pass;
      if (m.ok) expo[{li, cho}] = m.exponent;
      out.lifts.push_back(lc);
    }
  }

  // Chart change and induced orientation comparison across the wall.
  if (job.iota.real_vertices.size() == 2) {
    out.paired = true;
    try {
      std::set<OPlanar> chambers;
      for (const auto& [key, e] : expo)
        chambers.insert(to_uplanar(tau, iota_tau, key.second));
      std::vector<std::pair<OPlanar, OPlanar>> sides;
      for (const OPlanar& cu : chambers) {
        OPlanar rep = convention_representative(sigma, tau, iota_tau, cu);
        for (const OPlanar& dl :
             delta_lifts(sigma, job.gamma, job.iota, job.uhat, tau, rep))
          sides.push_back({dl, rep});
      }
      if (sides.size() != 2) throw EvalFail{};
      const auto& [lift1, ch1] = sides[0];
      const auto& [lift2, ch2] = sides[1];
      const int vstar =
          reversal_vertex(sigma, job.gamma, job.iota, lift1, lift2);
      const int mu_v =
          mu(static_cast<int>(
                 lift1.vertex_data[real_slot(job.iota, vstar)].plus.size()),
             static_cast<int>(job.iota.real_flags[vstar].size()));
      out.reversal_penalty_sign = mod2(mu_v) ? -1 : 1;
      WallChart w1 = make_wall_chart(sigma, job.gamma, job.iota, lift1);
      WallChart w2 = make_wall_chart(sigma, job.gamma, job.iota, lift2);
      out.chart_change = chart_change_sign(w1, w2, splitmix(lkey), opt);
      const size_t i1 =
          std::find(lifts.begin(), lifts.end(), lift1) - lifts.begin();
      const size_t i2 =
          std::find(lifts.begin(), lifts.end(), lift2) - lifts.begin();
      const int e1 = expo.at({i1, ch1});
      const int e2 = expo.at({i2, ch2});
      out.orientations_agree =
          mod2(parity(sigma, ch1) + e1) ==
          mod2(parity(sigma, ch2) + e2 + (out.chart_change < 0 ? 1 : 0));
      out.in_w1 =
          wall_pi(sigma, job.gamma, job.iota, lift1, ch1, lift2, ch2) == 0;
      bool pok = out.chart_change == out.reversal_penalty_sign &&
                 out.orientations_agree == out.in_w1;
      if (sigma.l == 1) pok = pok && e1 == e2;
      ok = ok && pok;
    } catch (const EvalFail&) {
      ok = false;
    } catch (const OrientationError&) {
      ok = false;
    } catch (const std::out_of_range&) {
      ok = false;
    }
  }
  out.pass = ok;
  return out;
}

}  // namespace

SignReport verify_signs(const LabelInvolution& sigma,
                        const OracleOptions& opts) {
  SignReport rep;
  rep.k = sigma.k;
  rep.l = sigma.l;
  const Tree tau = corolla(sigma.n());
  const TreeInvolution iota_tau = *sigma_invariance(tau, sigma);

  std::vector<WallJob> jobs;
  for (const auto& [gamma, iota] : enumerate_invariant_trees(sigma)) {
    if (gamma.num_vertices != 2) continue;
    const auto us = enumerate_uplanar(gamma, iota);
    for (size_t i = 0; i < us.size(); ++i)
      jobs.push_back(
          {gamma, iota, us[i], tree_label(gamma) + "#" + std::to_string(i)});
  }

  rep.walls.resize(jobs.size());
  const int workers =
      std::max(1, std::min<int>(opts.threads, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (size_t i = 0; i < jobs.size(); ++i)
      rep.walls[i] = check_wall(sigma, jobs[i], tau, iota_tau, opts);
  } else {
    std::atomic<size_t> next{0};
    auto run = [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        rep.walls[i] = check_wall(sigma, jobs[i], tau, iota_tau, opts);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }

  for (const WallCheck& w : rep.walls) {
    rep.lift_checks += static_cast<int>(w.lifts.size());
    if (!w.pass) ++rep.failures;
  }
  rep.all_pass = rep.failures == 0;
  return rep;
}

int reversal_chart_sign(const LabelInvolution& sigma, const OPlanar& o,
                        const OracleOptions& opts) {
  const Tree tau = corolla(sigma.n());
  const TreeInvolution iota = *sigma_invariance(tau, sigma);
  const ChamberChart c1 = make_chamber(sigma, o);
  const ChamberChart c2 =
      make_chamber(sigma, reverse_all(tau, iota, o));
  const int d = c1.dim();
  int sgn = 0;
  for (int seed = 0; seed < opts.seeds; ++seed) {
    auto rng = make_rng(opts.base_seed, 0x5EED, fnv1a("reversal"), seed);
    VectorXd xi = c1.sample(rng);
    auto G = [&](const VectorXd& x) {
      Config pos = c1.place(x);
      for (int f = 1; f <= sigma.n(); ++f)
        if (!pos[f].inf) pos[f].z = -pos[f].z;
      if (!c2.normalize(pos)) throw EvalFail{};
      return c2.coords(pos);
    };
    if (d == 0) return c1.form_sign * c2.form_sign;
    MatrixXd J(d, d);
    try {
      const double h = opts.step;
      for (int j = 0; j < d; ++j) {
        VectorXd xp = xi, xm = xi;
        xp[j] += h;
        xm[j] -= h;
        J.col(j) = (G(xp) - G(xm)) / (2 * h);
      }
    } catch (const EvalFail&) {
      return 0;
    }
    const double det = J.determinant();
    if (!(std::abs(det) >= opts.min_det)) return 0;
    const int s = (det > 0 ? 1 : -1) * c1.form_sign * c2.form_sign;
    if (sgn == 0)
      sgn = s;
    else if (s != sgn)
      return 0;
  }
  return sgn;
}

}  // namespace rms
