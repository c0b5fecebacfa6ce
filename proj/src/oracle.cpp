// Copyright (c) 2026 The dce-bands authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dce/oracle.hpp"

#include "dce/errors.hpp"
#include "dce/recurrence.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace dce {

  void QuadSpec::validate() const {
    if (!(rel_tol > 0.0) || rel_tol > 1e-3)
      throw ValidationError("rel_tol", "must be in (0, 1e-3]");
    if (!(abs_floor >= 0.0) || !std::isfinite(abs_floor))
      throw ValidationError("abs_floor", "must be finite and >= 0");
    if (!(tail_scale > 0.0) || !std::isfinite(tail_scale))
      throw ValidationError("tail_scale", "must be finite and > 0");
    if (max_depth < 1 || max_depth > 50)
      throw ValidationError("max_depth", "must be in [1, 50]");
  }

  namespace {

    using std::numbers::pi;
    using Integrand = std::function<Complex(double)>;
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

    constexpr double inf = std::numeric_limits<double>::infinity();

    struct Peak {
      double center;
      double width;
    };

    struct Integral {
      Complex value{};
      double error = 0.0;
      double l1 = 0.0;
      bool converged = true;
    };

    // One 15-point Kronrod rule on [a, b]. The rule is applied on [-1, 1] and
    // rescaled here; the library's own bisection compares an unscaled error
    // with a scaled tolerance and never settles on short panels.
    template <class F> void bisect(const F &f, double a, double b, double tol, int depth, Integral &out) {
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      double err = 0.0, l1 = 0.0;
      const Complex v =
          half * GK::integrate([&](double u) { return f(mid + half * u); }, -1.0, 1.0, 0, 0.0, &err, &l1);
      err *= std::abs(half);
      l1 *= std::abs(half);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        out.converged = false;
        out.error = inf;
        return;
      }
      if (err <= tol * l1 || depth == 0) {
        out.value += v;
        out.error += err;
        out.l1 += l1;
        if (err > tol * l1 && err > 1e-300)
          out.converged = false;
        return;
      }
      bisect(f, a, mid, tol, depth - 1, out);
      bisect(f, mid, b, tol, depth - 1, out);
    }

    // Adaptive quadrature on [lo, hi] (either end may be infinite). The
    // finite core is cut at every peak center and at center +- width 2^i so
    // each panel sees a function that varies on the scale of its own length.
    Integral integrate(const Integrand &f, const std::vector<Peak> &peaks, double lo, double hi, double scale,
                       double tol, int depth) {
      Integral out;
      if (!(hi > lo))
        return out;
      double a = std::numeric_limits<double>::max(), b = std::numeric_limits<double>::lowest();
      for (const auto &pk : peaks) {
        a = std::min(a, pk.center - scale);
        b = std::max(b, pk.center + scale);
      }
      if (peaks.empty())
        a = b = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
      a = std::clamp(a, lo, hi);
      b = std::clamp(b, lo, hi);
      if (std::isfinite(lo))
        a = lo;
      if (std::isfinite(hi))
        b = hi;

      std::vector<double> cuts{a, b};
      for (const auto &pk : peaks) {
        cuts.push_back(pk.center);
        for (double d = pk.width; d < scale; d *= 2.0) {
          cuts.push_back(pk.center - d);
          cuts.push_back(pk.center + d);
        }
      }
      std::erase_if(cuts, [&](double x) { return !(x >= a && x <= b); });
      std::sort(cuts.begin(), cuts.end());
      double min_width = scale;
      for (const auto &pk : peaks)
        min_width = std::min(min_width, pk.width);
      // Centers that coincide up to rounding would leave sliver panels.
      cuts.erase(std::unique(cuts.begin(), cuts.end(),
                             [&](double x, double y) { return y - x < 1e-6 * min_width; }),
                 cuts.end());
      if (cuts.back() < b)
        cuts.back() = b;

      auto panel = [&](auto &&g, double x0, double x1) { bisect(g, x0, x1, tol, depth, out); };
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        panel(f, cuts[i], cuts[i + 1]);
      if (!std::isfinite(lo))
        panel(
            [&](double u) {
              const double r = 1.0 - u;
              return f(a - scale * u / r) * (scale / (r * r));
            },
            0.0, 1.0);
      if (!std::isfinite(hi))
        panel(
            [&](double u) {
              const double r = 1.0 - u;
              return f(b + scale * u / r) * (scale / (r * r));
            },
            0.0, 1.0);
      return out;
    }

    // Chain of one-step operators at fixed outer frequency w:
    //   h_j(xi) = a F_j(w - xi) + a sum_{k<j} int dxi' h_{j-k}(xi') K(xi') F_k(xi' - xi),
    // a = gamma0 / (2 pi), so that G^(j)(w, xi) = root(w) xi h_j(xi).
    class Chain {
    public:
      Chain(const NaturalParams &p, const DriveModel &drive, double omega, const QuadSpec &q)
          : p_(p), kernel_(p.signed_gamma0()), a_(p.signed_gamma0() / (2.0 * pi)), omega_(omega),
            scale_(q.tail_scale * p.omega0()), depth_(q.max_depth), inner_tol_(q.rel_tol * 0.1),
            width_(1.0 / p.tau()) {
        for (int k = 1; k <= kOracleMaxOrder; ++k) {
          f_[k] = drive.fourier(k);
          for (const auto &t : f_[k])
            centers_[k].push_back(t.peak.center());
        }
      }

      Complex fk(int k, double x) const { return eval(f_[k], x); }
      Complex kernel(double x) const { return kernel_(x); }
      double a() const { return a_; }
      double omega() const { return omega_; }
      double scale() const { return scale_; }
      int depth() const { return depth_; }
      double inner_tol() const { return inner_tol_; }

      /// Peaks of h_j as a function of its argument: w - M omega0, |M| <= j.
      std::vector<Peak> h_peaks(int j) const {
        std::vector<Peak> out;
        for (int m = -j; m <= j; ++m)
          out.push_back({omega_ - m * p_.omega0(), width_});
        return out;
      }

      /// Peaks of x -> F_k(x - y).
      std::vector<Peak> shifted_peaks(int k, double y) const {
        std::vector<Peak> out;
        for (double c : centers_[k])
          out.push_back({y + c, width_});
        return out;
      }

      Complex h(int j, double xi) const {
        Complex v = a_ * fk(j, omega_ - xi);
        for (int k = 1; k < j; ++k) {
          auto peaks = h_peaks(j - k);
          const auto more = shifted_peaks(k, xi);
          peaks.insert(peaks.end(), more.begin(), more.end());
          const auto r = integrate([&](double x) { return h(j - k, x) * kernel_(x) * fk(k, x - xi); }, peaks,
                                   -inf, inf, scale_, inner_tol_, depth_);
          check(r, "h_" + std::to_string(j));
          v += a_ * r.value;
        }
        return v;
      }

      static void check(const Integral &r, const std::string &what) {
        if (!r.converged)
          throw QuadratureError(what + ": adaptive quadrature did not converge", r.error);
      }

    private:
      const NaturalParams &p_;
      RationalKernel kernel_;
      double a_;
      double omega_;
      double scale_;
      int depth_;
      double inner_tol_;
      double width_;
      PeakedSum f_[kOracleMaxOrder + 1];
      std::vector<double> centers_[kOracleMaxOrder + 1];
    };

  } // namespace

  Complex finite_tau_g(int j, double omega, double xi, const NaturalParams &p, const QuadSpec &quad,
                       DriveKind drive) {
    quad.validate();
    if (j < 1 || j > kOracleMaxOrder)
      throw ValidationError("j", "oracle supports orders 1 to " + std::to_string(kOracleMaxOrder));
    if (!(omega > 0.0) || !std::isfinite(omega) || !std::isfinite(xi))
      throw ValidationError("omega", "need finite w > 0 and finite xi");
    const Chain chain(p, DriveModel(DriveProfile(p), drive), omega, quad);
    return root_prefactor(p, omega) * xi * chain.h(j, xi);
  }

  OracleValue finite_tau_spectrum(double omega, const NaturalParams &p, int n, const QuadSpec &quad,
                                  DriveKind drive) {
    quad.validate();
    if (n < 1 || n > kOracleMaxOrder)
      throw ValidationError("order", "oracle supports N from 1 to " + std::to_string(kOracleMaxOrder));
    if (!(omega > 0.0) || !std::isfinite(omega))
      throw ValidationError("omega", "must be finite and > 0");
    const double nearest = std::round(omega / p.omega0()) * p.omega0();
    if (std::abs(omega - nearest) < 3.0 * (n + 1) / p.tau())
      throw ValidationError("omega", "must lie at least three peak widths from every multiple of omega0");

    const Chain c(p, DriveModel(DriveProfile(p), drive), omega, quad);
    const double g = p.gamma0();
    const double root2 = std::norm(root_prefactor(p, omega));
    // |root|^2 xi^2 / (|xi| (1 + xi^2 gamma0^2)) on xi < 0.
    const auto rho = [&](double xi) { return root2 * (-xi) / (1.0 + xi * xi * g * g); };
    const double tol = quad.rel_tol;

    OracleValue out;
    double error = 0.0;
    std::map<int, Complex> acc;
    auto add = [&](int order, const Integral &r, double weight, const char *what) {
      Chain::check(r, what);
      acc[order] += weight * r.value;
      error += std::pow(p.epsilon(), order) * std::abs(weight) * (r.error + tol * r.l1) / p.tau();
    };

    // Pairs with both kernels at most one integral deep: one outer integral.
    for (int j = 1; j <= std::min(n, 2); ++j)
      for (int k = j; k <= std::min(n, 2); ++k) {
        if (j + k > n + 1)
          continue;
        const auto r = integrate([&](double xi) { return rho(xi) * std::conj(c.h(j, xi)) * c.h(k, xi); },
                                 c.h_peaks(std::max(j, k)), -inf, 0.0, c.scale(), tol, c.depth());
        // (j, k) and (k, j) are complex conjugates of each other.
        if (j == k)
          add(j + k, r, 1.0, "outer");
        else
          add(j + k, {Complex(r.value.real(), 0.0), r.error, r.l1, r.converged}, 2.0, "outer");
      }

    // (1, 3) + (3, 1). h_3 holds a double integral; exchanging the order puts
    // the outer xi innermost:
    //   int rho conj(h_1) h_3 = a int rho conj(h_1) F_3(w - xi)
    //     + a sum_k int dxi' K(xi') h_{3-k}(xi') B_k(xi'),
    //   B_k(xi') = int_{xi<0} rho conj(h_1)(xi) F_k(xi' - xi).
    if (n >= 3) {
      const auto direct = integrate(
          [&](double xi) { return rho(xi) * std::conj(c.h(1, xi)) * c.a() * c.fk(3, c.omega() - xi); },
          c.h_peaks(3), -inf, 0.0, c.scale(), tol, c.depth());
      Chain::check(direct, "(1,3) direct");
      Complex total = direct.value;
      double err = direct.error + tol * direct.l1;
      double l1 = direct.l1;

      for (int k = 1; k <= 2; ++k) {
        const auto b = [&](double xp) {
          auto peaks = c.h_peaks(1);
          for (const auto &pk : c.shifted_peaks(k, 0.0))
            peaks.push_back({xp - pk.center, pk.width});
          const auto r = integrate(
              [&](double xi) { return rho(xi) * std::conj(c.h(1, xi)) * c.fk(k, xp - xi); }, peaks, -inf, 0.0,
              c.scale(), c.inner_tol(), c.depth());
          Chain::check(r, "B_" + std::to_string(k));
          return r.value;
        };
        const auto r = integrate([&](double xp) { return c.kernel(xp) * c.h(3 - k, xp) * b(xp); }, c.h_peaks(3),
                                 -inf, inf, c.scale(), tol, c.depth());
        Chain::check(r, "(1,3) exchanged");
        total += c.a() * r.value;
        err += std::abs(c.a()) * (r.error + tol * r.l1);
        l1 += std::abs(c.a()) * r.l1;
      }
      add(4, {Complex(total.real(), 0.0), err, 0.0, true}, 2.0, "(1,3)");
    }

    for (const auto &[order, v] : acc) {
      out.per_order[order] = v.real() / p.tau();
      out.value += std::pow(p.epsilon(), order) * v.real() / p.tau();
    }
    out.error = error;
    if (out.error > std::max(1e-3 * std::abs(out.value), quad.abs_floor))
      throw QuadratureError("finite-tau spectrum error estimate too large", out.error);
    return out;
  }

} // namespace dce
