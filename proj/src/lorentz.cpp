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

#include "dce/lorentz.hpp"

#include "dce/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace dce {

  using std::numbers::inv_pi;

  Lorentzian::Lorentzian(double center, double width) : center_(center), width_(width) {
    if (!std::isfinite(center))
      throw ValidationError("center", "must be finite");
    if (!std::isfinite(width) || !(width > 0.0))
      throw ValidationError("width", "must be finite and > 0");
  }

  double Lorentzian::operator()(double x) const noexcept {
    const double d = x - center_;
    return inv_pi * width_ / (d * d + width_ * width_);
  }

  PeakedSum::PeakedSum(std::vector<PeakedTerm> terms) : terms_(std::move(terms)) {
    for (const auto &t : terms_)
      if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()))
        throw ValidationError("coeff", "peaked term coefficient must be finite");
  }

  void PeakedSum::add(Complex coeff, Lorentzian peak) {
    if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag()))
      throw ValidationError("coeff", "peaked term coefficient must be finite");
    terms_.push_back({coeff, peak});
  }

  Complex PeakedSum::integral() const noexcept {
    Complex s{};
    for (const auto &t : terms_)
      s += t.coeff;
    return s;
  }

  Complex eval(const PeakedSum &s, double x) {
    Complex acc{};
    for (const auto &t : s)
      acc += t.coeff * t.peak(x);
    return acc;
  }

  double product_integral(const Lorentzian &a, const Lorentzian &b) noexcept {
    return Lorentzian(b.center(), a.width() + b.width())(a.center());
  }

  Lorentzian convolve(const Lorentzian &a, const Lorentzian &b) noexcept {
    return {a.center() + b.center(), a.width() + b.width()};
  }

  double default_coincidence_tol(const PeakedSum &s) {
    double w = std::numeric_limits<double>::infinity();
    for (const auto &t : s)
      w = std::min(w, t.peak.width());
    return s.empty() ? 0.0 : w / 10.0;
  }

  namespace {

    Complex sample(const SmoothFn &smooth, double x) {
      const Complex v = smooth(x);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw SingularEvaluationError("smooth factor is not finite at x = " + std::to_string(x));
      return v;
    }

  } // namespace

  Complex localize(const SmoothFn &smooth, const PeakedSum &peaked, double coincidence_tol) {
    if (peaked.empty())
      throw ValidationError("peaked", "localize needs at least one peak");
    if (!(coincidence_tol >= 0.0))
      throw ValidationError("coincidence_tol", "must be >= 0");

    // Group by center; the first center of a group is its sample point. Terms
    // are then summed in their original order.
    std::vector<std::size_t> order(peaked.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = i;
    const auto &terms = peaked.terms();
    std::stable_sort(order.begin(), order.end(),
                     [&](auto x, auto y) { return terms[x].peak.center() < terms[y].peak.center(); });

    std::vector<Complex> samples(terms.size());
    std::size_t i = 0;
    while (i < order.size()) {
      const double anchor = terms[order[i]].peak.center();
      const Complex v = sample(smooth, anchor);
      while (i < order.size() && terms[order[i]].peak.center() - anchor <= coincidence_tol)
        samples[order[i++]] = v;
    }
    Complex acc{};
    for (std::size_t k = 0; k < terms.size(); ++k)
      acc += terms[k].coeff * samples[k];
    return acc;
  }

  Complex localize(const SmoothFn &smooth, const PeakedSum &peaked) {
    return localize(smooth, peaked, default_coincidence_tol(peaked));
  }

  PairedSum pair_product(const PeakedSum &lhs, const PeakedSum &rhs) {
    PairedSum out;
    out.reserve(lhs.size() * rhs.size());
    for (const auto &l : lhs)
      for (const auto &r : rhs)
        out.push_back({std::conj(l.coeff) * r.coeff, l.peak, r.peak});
    return out;
  }

  double overlap_ratio(const PeakedPair &p) noexcept {
    const double w = p.a.width() + p.b.width();
    const double d = p.a.center() - p.b.center();
    return w * w / (d * d + w * w);
  }

  PairedSum drop_subleading(const PairedSum &pairs, double scale, double rel_cut) {
    if (!(scale > 0.0))
      throw ValidationError("scale", "omega0 * tau must be > 0");
    if (!(rel_cut >= 0.0))
      throw ValidationError("rel_cut", "must be >= 0");
    if (rel_cut == 0.0)
      return pairs;
    PairedSum kept;
    kept.reserve(pairs.size());
    for (const auto &p : pairs)
      if (overlap_ratio(p) > rel_cut)
        kept.push_back(p);
    return kept;
  }

  Complex localize(const SmoothFn &smooth, const PairedSum &pairs, double coincidence_tol) {
    if (!(coincidence_tol >= 0.0))
      throw ValidationError("coincidence_tol", "must be >= 0");
    Complex acc{};
    for (const auto &p : pairs) {
      const double area = product_integral(p.a, p.b);
      if (std::abs(p.a.center() - p.b.center()) <= coincidence_tol) {
        acc += p.coeff * area * sample(smooth, p.a.center());
        continue;
      }
      const double ha = p.b(p.a.center());
      const double hb = p.a(p.b.center());
      const double fa = ha / (ha + hb);
      acc += p.coeff * area * (fa * sample(smooth, p.a.center()) + (1.0 - fa) * sample(smooth, p.b.center()));
    }
    return acc;
  }

} // namespace dce
