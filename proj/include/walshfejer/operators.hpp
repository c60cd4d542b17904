#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "walshfejer/dyadic_index.hpp"
#include "walshfejer/grid.hpp"
#include "walshfejer/parallel.hpp"

namespace wf {

/// Walsh-Fourier coefficients of a grid function, with the partial sums and
/// Fejer means synthesized from them.
template <typename Scalar>
class FourierSeries {
 public:
  explicit FourierSeries(const Grid<Scalar>& f) : scale_(f.scale()), coefficients_(transform(f)) {}

  unsigned scale() const { return scale_; }
  const Vector<Scalar>& coefficients() const { return coefficients_; }

  /// S_n f = sum_{k<n} c_k w_k. For n >= 2^M this is f itself.
  Grid<Scalar> partial_sum(Natural n) const {
    Vector<Scalar> c = coefficients_;
    const Eigen::Index keep = clamp_order(n);
    c.tail(c.size() - keep).setZero();
    return synthesize(c);
  }

  /// sigma_n f = (1/n) sum_{j=1}^n S_j f = sum_{k<n} (1 - k/n) c_k w_k.
  Grid<Scalar> fejer_mean(Natural n) const {
    if (n == 0) throw std::domain_error("Fejer mean needs n >= 1");
    Vector<Scalar> c = Vector<Scalar>::Zero(coefficients_.size());
    const Eigen::Index keep = clamp_order(n);
    const auto order = static_cast<Scalar>(n);
    for (Eigen::Index k = 0; k < keep; ++k) {
      c(k) = coefficients_(k) * (order - static_cast<Scalar>(k)) / order;
    }
    return synthesize(c);
  }

 private:
  Eigen::Index clamp_order(Natural n) const {
    return static_cast<Eigen::Index>(std::min<Natural>(n, static_cast<Natural>(coefficients_.size())));
  }

  unsigned scale_;
  Vector<Scalar> coefficients_;
};

template <typename Scalar>
Grid<Scalar> partial_sum(const Grid<Scalar>& f, Natural n) {
  return FourierSeries<Scalar>(f).partial_sum(n);
}

template <typename Scalar>
Grid<Scalar> fejer_mean(const Grid<Scalar>& f, Natural n) {
  return FourierSeries<Scalar>(f).fejer_mean(n);
}

/// sigma_n f(x) = int f(t) K_n(x + t) dmu(t), evaluated directly against the
/// exact integer kernel n K_n. O(4^M); requires 1 <= n <= 2^M.
GridFunction fejer_mean_convolution(const GridFunction& f, Natural n);

/// f*(x) = max_{0 <= n <= M} |2^n int_{I_n(x)} f dmu|, from nested block averages.
template <typename Scalar>
Grid<Scalar> maximal_function(const Grid<Scalar>& f) {
  Vector<Scalar> out = f.values().cwiseAbs();
  Vector<Scalar> level = f.values();
  for (unsigned depth = f.scale(); depth-- > 0;) {
    // Averages over I_depth, indexed by residue mod 2^depth.
    const Eigen::Index half = Eigen::Index{1} << depth;
    level = ((level.head(half) + level.segment(half, half)) / Scalar{2}).eval();
    for (Eigen::Index x = 0; x < out.size(); ++x) {
      out(x) = std::max(out(x), std::abs(level(x & (half - 1))));
    }
  }
  return Grid<Scalar>(f.scale(), std::move(out));
}

/// ||f*||_p.
template <typename Scalar>
Scalar hardy_norm(const Grid<Scalar>& f, double p) {
  require_positive_exponent(p);
  return lp_quasinorm(maximal_function(f), p);
}

struct AtomCertificate {
  DyadicInterval interval;
  double p = 0.0;
  double mean = 0.0;       // int_I a dmu
  double sup = 0.0;        // ||a||_inf
  double sup_bound = 0.0;  // mu(I)^{-1/p}
  std::size_t points_outside_support = 0;
  std::vector<std::string> violations;

  bool valid() const { return violations.empty(); }
};

inline constexpr double kAtomMeanTolerance = 1e-12;

/// Checks supp(a) in I, zero mean on I, and ||a||_inf <= mu(I)^{-1/p}.
/// Violations are reported, not thrown.
template <typename Scalar>
AtomCertificate validate_atom(const Grid<Scalar>& a, double p, const DyadicInterval& interval) {
  require_positive_exponent(p);
  if (interval.scale() != a.scale()) throw std::invalid_argument("atom and interval scales differ");
  AtomCertificate cert{interval, p, 0.0, 0.0, 0.0, 0, {}};
  Vector<Scalar> inside = Vector<Scalar>::Zero(a.size());
  Scalar sup{0};
  for (Eigen::Index x = 0; x < a.size(); ++x) {
    const Scalar v = a[x];
    sup = std::max(sup, std::abs(v));
    if (interval.contains(static_cast<Natural>(x))) {
      inside(x) = v;
    } else if (v != Scalar{0}) {
      ++cert.points_outside_support;
    }
  }
  cert.mean = static_cast<double>(pairwise_sum(inside) / static_cast<Scalar>(a.size()));
  cert.sup = static_cast<double>(sup);
  cert.sup_bound = std::pow(interval.measure(), -1.0 / p);
  if (cert.points_outside_support != 0) {
    cert.violations.push_back("nonzero at " + std::to_string(cert.points_outside_support) +
                              " points outside the interval");
  }
  if (std::abs(cert.mean) > kAtomMeanTolerance) {
    cert.violations.push_back("mean over the interval is " + std::to_string(cert.mean));
  }
  if (cert.sup > cert.sup_bound * (1.0 + 1e-12)) {
    cert.violations.push_back("sup norm " + std::to_string(cert.sup) + " exceeds " + std::to_string(cert.sup_bound));
  }
  return cert;
}

/// Random p-atom on I with ||a||_inf = mu(I)^{-1/p}; deterministic in seed.
/// A one-point interval only supports the zero atom.
GridFunction random_atom(const DyadicInterval& interval, double p, std::uint64_t seed);

enum class WeightKind { card_squared, log_squared, variation_squared, custom };

class WeightSpec {
 public:
  explicit WeightSpec(WeightKind kind = WeightKind::card_squared);
  /// phi indexed by band |n|; must be positive and nondecreasing.
  static WeightSpec custom(std::vector<double> phi);

  WeightKind kind() const { return kind_; }
  const std::vector<double>& phi() const { return phi_; }

 private:
  WeightKind kind_;
  std::vector<double> phi_;
};

/// A strictly increasing index sequence with a weight rule. Band spectra
/// A_s are built from the sequence members in each band.
class MaximalOperatorSpec {
 public:
  MaximalOperatorSpec(std::vector<Natural> sequence, WeightSpec weight);

  const std::vector<Natural>& sequence() const { return sequence_; }
  const WeightSpec& weight_spec() const { return weight_; }
  const std::map<unsigned, BandSpectrum>& spectra() const { return spectra_; }

  /// Weight of a sequence member: r3(A_{|n|})^2, log2(n+1)^2, V(n)^2 or phi_{|n|}.
  double weight(Natural n) const;

 private:
  std::vector<Natural> sequence_;
  WeightSpec weight_;
  std::map<unsigned, BandSpectrum> spectra_;
};

/// x -> max_k |sigma_{n_k} f(x)| / w(n_k). Work is split over the sequence;
/// the max-reduction makes the result independent of the worker count.
template <typename Scalar>
Grid<Scalar> weighted_maximal(const Grid<Scalar>& f, const MaximalOperatorSpec& spec) {
  const FourierSeries<Scalar> series(f);
  const auto& seq = spec.sequence();
  std::vector<Scalar> weights;
  weights.reserve(seq.size());
  for (Natural n : seq) weights.push_back(static_cast<Scalar>(spec.weight(n)));

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(thread_count(), seq.size()));
  const std::size_t chunk = (seq.size() + workers - 1) / workers;
  std::vector<Vector<Scalar>> partial(workers, Vector<Scalar>::Zero(f.size()));
  parallel_for(workers, [&](std::size_t w) {
    const std::size_t last = std::min(seq.size(), (w + 1) * chunk);
    for (std::size_t k = w * chunk; k < last; ++k) {
      const Grid<Scalar> mean = series.fejer_mean(seq[k]);
      partial[w] = partial[w].cwiseMax((mean.values().cwiseAbs() / weights[k]).eval());
    }
  });
  Vector<Scalar> out = partial.front();
  for (std::size_t w = 1; w < workers; ++w) out = out.cwiseMax(partial[w]);
  return Grid<Scalar>(f.scale(), std::move(out));
}

/// {2^k}, {2^k + 1}, {2^k + 2^{floor(k/2)}} for k = 1..count.
std::array<std::vector<Natural>, 3> corollary2_sequences(unsigned count);

/// int over G \ I of (weighted maximal of a)^{1/2}. Throws std::invalid_argument
/// when a is not a 1/2-atom on I.
double atom_functional(const GridFunction& atom, const DyadicInterval& interval, const MaximalOperatorSpec& spec);

/// Every n in [1, 2^M).
std::vector<Natural> full_band_sequence(unsigned scale);

}  // namespace wf
