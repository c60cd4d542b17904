#pragma once

#include <map>
#include <span>
#include <vector>

#include "walshfejer/dyadic_index.hpp"
#include "walshfejer/grid.hpp"
#include "walshfejer/kernels.hpp"
#include "walshfejer/operators.hpp"

namespace wf {

/// Working precision of the divergence construction. Values reach about
/// 4^M, so the extra mantissa bits keep absolute errors far below 1e-10.
using Real = long double;
using ExtendedGrid = Grid<Real>;

/// sum_{i=0}^{floor(s/2)} 2^{s-2i}: the band-s member 1010...1 whose block
/// endpoints are s, s-2, s-4, ...
Natural alternating_bits(unsigned s);

/// Rule for the weight phi_s attached to band s.
class PhiRule {
 public:
  static PhiRule constant(double value);
  /// phi_s = r3(A_s)^2 for the family's band spectrum.
  static PhiRule card_squared();
  /// phi_s = values[s].
  static PhiRule values(std::vector<double> phi);

  Real at(unsigned band, std::size_t card) const;

 private:
  enum class Kind { constant, card_squared, values };
  PhiRule(Kind kind, std::vector<double> values) : kind_(kind), values_(std::move(values)) {}

  Kind kind_;
  std::vector<double> values_;
};

/// The index family, grouped into bands, and the band weights phi.
class CounterexampleSpec {
 public:
  CounterexampleSpec(std::vector<Natural> family, PhiRule phi);
  /// One alternating-bits member per band s in [first_band, last_band].
  static CounterexampleSpec alternating(unsigned first_band, unsigned last_band, PhiRule phi);

  const std::vector<Natural>& family() const { return family_; }
  std::vector<unsigned> bands() const;
  const BandSpectrum& spectrum(unsigned band) const;
  Real phi(unsigned band) const;
  /// lambda_s = phi_s^{1/2} / r3(A_s).
  Real lambda(unsigned band) const;
  /// Family members lying in band s.
  std::span<const Natural> members(unsigned band) const;
  /// sum over bands below M of phi_s^{1/4} / r3(A_s)^{1/2}.
  Real condition_sum(unsigned scale) const;

 private:
  std::vector<Natural> family_;
  PhiRule phi_;
  std::map<unsigned, BandSpectrum> spectra_;
};

struct AtomTerm {
  unsigned band = 0;
  Real lambda = 0;
  ExtendedGrid atom;  // 2^s (D_{2^{s+1}} - D_{2^s})
  AtomCertificate certificate;
};

/// F = sum of lambda_s a_s over the family's bands s < M.
struct MartingaleApprox {
  unsigned scale = 0;
  CounterexampleSpec spec;
  ExtendedGrid function;
  std::vector<AtomTerm> terms;

  const AtomTerm* term(unsigned band) const;
  /// sum_k lambda_k^{1/2}, the atomic quasi-norm bound on ||F||_{H_{1/2}}^{1/2}.
  Real atomic_sum() const;
};

/// An empty family gives F = 0; a nonempty family with no band below M throws.
MartingaleApprox build(const CounterexampleSpec& spec, unsigned scale);

inline constexpr double kCounterexampleTolerance = 1e-10;

struct CoefficientReport {
  Real max_abs_error = 0;
  std::vector<Natural> mismatched;

  bool passed() const { return mismatched.empty(); }
};

/// Compares the transform of F with 2^s phi_s^{1/2} / r3(A_s) on each band
/// [2^s, 2^{s+1}) and 0 elsewhere.
CoefficientReport coefficients_check(const MartingaleApprox& m);

struct FejerDecomposition {
  ExtendedGrid first;   // (2^s / n) sigma_{2^s} F
  ExtendedGrid second;  // ((n - 2^s) / n) S_{2^s} F
  ExtendedGrid third;   // (c_s / n) sum_{j=2^s+1}^{n} (D_j - D_{2^s})

  ExtendedGrid sum() const;
};

/// Splits sigma_n F for 2^s <= n <= 2^{s+1}, where s is a band of F.
FejerDecomposition fejer_decomposition(const MartingaleApprox& m, unsigned band, Natural n);

/// (c_s / n) w_{2^s} (n - 2^s) K_{n - 2^s}: the third term after the shift
/// D_{j+2^s} = D_{2^s} + w_{2^s} D_j.
ExtendedGrid third_term_via_shift(const MartingaleApprox& m, unsigned band, Natural n);

struct LowerBoundReport {
  Natural n = 0;
  unsigned band = 0;
  Endpoint kind = Endpoint::lower;
  unsigned endpoint = 0;
  Real measure = 0;
  Real integral = 0;  // int_E |sigma_n F / phi_s|^{1/2} dmu
  Real bound = 0;     // mu(E) 2^{(2u-6)/2} / (sqrt(2) r3^{1/2} phi_s^{1/4})

  bool passed() const { return integral >= bound; }
};

/// Lower bound on E_u for an endpoint u of a block of n - 2^s.
LowerBoundReport lower_bound_check(const MartingaleApprox& m, unsigned band, Natural n, Endpoint kind,
                                   unsigned endpoint);

/// Every family member n > 2^s in every band s of F and every block endpoint
/// of n - 2^s whose set is resolvable at scale M.
std::vector<LowerBoundReport> lower_bound_sweep(const MartingaleApprox& m);

struct RatioPoint {
  unsigned scale = 0;
  double ratio = 0;       // sqrt(sup_half / hardy_half)
  double hardy_half = 0;  // ||F||_{H_{1/2}}
  double sup_half = 0;    // || max_n |sigma_n F| / phi_{|n|} ||_{1/2}
};

/// The maximum runs over the family members in the bands of F.
RatioPoint ratio_point(const MartingaleApprox& m);
/// scales must be strictly ascending.
std::vector<RatioPoint> ratio_curve(const CounterexampleSpec& spec, std::span<const unsigned> scales);

}  // namespace wf
