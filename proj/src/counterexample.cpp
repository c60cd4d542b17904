#include "walshfejer/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "walshfejer/parallel.hpp"

namespace wf {

Natural alternating_bits(unsigned s) {
  if (s > 62) throw std::out_of_range("alternating-bits band exceeds 62");
  Natural n = 0;
  for (unsigned i = 0; 2 * i <= s; ++i) n |= Natural{1} << (s - 2 * i);
  return n;
}

PhiRule PhiRule::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw std::invalid_argument("phi must be positive");
  return {Kind::constant, {value}};
}

PhiRule PhiRule::card_squared() { return {Kind::card_squared, {}}; }

PhiRule PhiRule::values(std::vector<double> phi) {
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!(phi[i] > 0.0) || !std::isfinite(phi[i])) throw std::invalid_argument("phi must be positive");
    if (i > 0 && phi[i] < phi[i - 1]) throw std::invalid_argument("phi must be nondecreasing");
  }
  return {Kind::values, std::move(phi)};
}

Real PhiRule::at(unsigned band, std::size_t card) const {
  switch (kind_) {
    case Kind::constant:
      return values_.front();
    case Kind::card_squared:
      return static_cast<Real>(card) * static_cast<Real>(card);
    case Kind::values:
      if (band >= values_.size()) throw std::out_of_range("phi has no value for band " + std::to_string(band));
      return values_[band];
  }
  throw std::logic_error("unknown phi rule");
}

CounterexampleSpec::CounterexampleSpec(std::vector<Natural> family, PhiRule phi)
    : family_(std::move(family)), phi_(std::move(phi)) {
  std::sort(family_.begin(), family_.end());
  if (std::adjacent_find(family_.begin(), family_.end()) != family_.end()) {
    throw std::invalid_argument("family contains a repeated index");
  }
  std::map<unsigned, std::vector<Natural>> by_band;
  for (Natural n : family_) {
    if (n == 0) throw std::invalid_argument("family indices must be at least 1");
    by_band[lead(n)].push_back(n);
  }
  for (const auto& [band, members] : by_band) spectra_.emplace(band, band_spectrum(band, members));
  Real previous = 0;
  for (const auto& [band, spectrum] : spectra_) {
    const Real value = phi_.at(band, spectrum.r3());
    if (value < previous) throw std::invalid_argument("phi must be nondecreasing across the family's bands");
    previous = value;
  }
}

CounterexampleSpec CounterexampleSpec::alternating(unsigned first_band, unsigned last_band, PhiRule phi) {
  std::vector<Natural> family;
  for (unsigned s = first_band; s <= last_band; ++s) family.push_back(alternating_bits(s));
  return {std::move(family), std::move(phi)};
}

std::vector<unsigned> CounterexampleSpec::bands() const {
  std::vector<unsigned> out;
  for (const auto& entry : spectra_) out.push_back(entry.first);
  return out;
}

const BandSpectrum& CounterexampleSpec::spectrum(unsigned band) const {
  const auto it = spectra_.find(band);
  if (it == spectra_.end()) throw std::out_of_range("family has no member in band " + std::to_string(band));
  return it->second;
}

Real CounterexampleSpec::phi(unsigned band) const { return phi_.at(band, spectrum(band).r3()); }

Real CounterexampleSpec::lambda(unsigned band) const {
  return std::sqrt(phi(band)) / static_cast<Real>(spectrum(band).r3());
}

std::span<const Natural> CounterexampleSpec::members(unsigned band) const { return spectrum(band).members; }

Real CounterexampleSpec::condition_sum(unsigned scale) const {
  Real sum = 0;
  for (const auto& [band, spectrum] : spectra_) {
    if (band >= scale) break;
    sum += std::pow(phi(band), Real{0.25}) / std::sqrt(static_cast<Real>(spectrum.r3()));
  }
  return sum;
}

const AtomTerm* MartingaleApprox::term(unsigned band) const {
  const auto it = std::find_if(terms.begin(), terms.end(), [band](const AtomTerm& t) { return t.band == band; });
  return it == terms.end() ? nullptr : &*it;
}

Real MartingaleApprox::atomic_sum() const {
  Real sum = 0;
  for (const AtomTerm& t : terms) sum += std::sqrt(t.lambda);
  return sum;
}

MartingaleApprox build(const CounterexampleSpec& spec, unsigned scale) {
  MartingaleApprox m{scale, spec, ExtendedGrid(scale), {}};
  if (spec.family().empty()) return m;
  for (unsigned s : spec.bands()) {
    if (s >= scale) break;
    const auto wide = dirichlet(Natural{1} << (s + 1), scale).values.values();
    const auto narrow = dirichlet(Natural{1} << s, scale).values.values();
    const Vector<std::int64_t> exact = static_cast<std::int64_t>(Natural{1} << s) * (wide - narrow);
    ExtendedGrid atom(scale, exact.cast<Real>());
    AtomCertificate cert = validate_atom(atom, 0.5, DyadicInterval::at_zero(s, scale));
    const Real lambda = spec.lambda(s);
    m.function.values() += lambda * atom.values();
    m.terms.push_back({s, lambda, std::move(atom), std::move(cert)});
  }
  if (m.terms.empty()) {
    throw std::invalid_argument("no family band lies below the scale " + std::to_string(scale));
  }
  return m;
}

CoefficientReport coefficients_check(const MartingaleApprox& m) {
  const Vector<Real> c = transform(m.function);
  Vector<Real> expected = Vector<Real>::Zero(c.size());
  for (const AtomTerm& t : m.terms) {
    const auto first = Eigen::Index{1} << t.band;
    const Real height = static_cast<Real>(first) * std::sqrt(m.spec.phi(t.band)) /
                        static_cast<Real>(m.spec.spectrum(t.band).r3());
    expected.segment(first, first).setConstant(height);
  }
  CoefficientReport report;
  for (Eigen::Index j = 0; j < c.size(); ++j) {
    const Real err = std::abs(c(j) - expected(j));
    report.max_abs_error = std::max(report.max_abs_error, err);
    if (err > kCounterexampleTolerance) report.mismatched.push_back(static_cast<Natural>(j));
  }
  return report;
}

ExtendedGrid FejerDecomposition::sum() const {
  return {first.scale(), (first.values() + second.values() + third.values()).eval()};
}

namespace {

Real band_coefficient(const MartingaleApprox& m, unsigned band) {
  return static_cast<Real>(Natural{1} << band) * std::sqrt(m.spec.phi(band)) /
         static_cast<Real>(m.spec.spectrum(band).r3());
}

void require_band_index(const MartingaleApprox& m, unsigned band, Natural n) {
  if (m.term(band) == nullptr) throw std::invalid_argument("band " + std::to_string(band) + " carries no atom");
  const Natural start = Natural{1} << band;
  if (n < start || n > 2 * start) {
    throw std::out_of_range("index " + std::to_string(n) + " outside [2^s, 2^{s+1}] for s = " + std::to_string(band));
  }
}

}  // namespace

FejerDecomposition fejer_decomposition(const MartingaleApprox& m, unsigned band, Natural n) {
  require_band_index(m, band, n);
  const Natural start = Natural{1} << band;
  const FourierSeries<Real> series(m.function);
  const Real order = static_cast<Real>(n);
  const Real offset = static_cast<Real>(n - start);

  FejerDecomposition d;
  d.first = series.fejer_mean(start);
  d.first.values() *= static_cast<Real>(start) / order;
  d.second = series.partial_sum(start);
  d.second.values() *= offset / order;

  // sum_{j=2^s+1}^{n} (D_j - D_{2^s}) = n K_n - 2^s K_{2^s} - (n - 2^s) D_{2^s}, exactly.
  const Vector<std::int64_t> dirichlet_sum =
      fejer_scaled(n, m.scale).values.values() - fejer_scaled(start, m.scale).values.values() -
      static_cast<std::int64_t>(n - start) * dirichlet(start, m.scale).values.values();
  d.third = ExtendedGrid(m.scale, (band_coefficient(m, band) / order * dirichlet_sum.cast<Real>()).eval());
  return d;
}

ExtendedGrid third_term_via_shift(const MartingaleApprox& m, unsigned band, Natural n) {
  require_band_index(m, band, n);
  const Natural start = Natural{1} << band;
  if (n == start) return ExtendedGrid(m.scale);
  const Vector<std::int64_t> shifted =
      walsh_grid(start, m.scale).values().cwiseProduct(fejer_scaled(n - start, m.scale).values.values());
  return {m.scale, (band_coefficient(m, band) / static_cast<Real>(n) * shifted.cast<Real>()).eval()};
}

LowerBoundReport lower_bound_check(const MartingaleApprox& m, unsigned band, Natural n, Endpoint kind,
                                   unsigned endpoint) {
  require_band_index(m, band, n);
  const Natural start = Natural{1} << band;
  if (n == start) throw std::invalid_argument("n - 2^s must be positive");
  const BlockDecomposition split = blocks(n - start);
  const bool is_endpoint = std::any_of(split.begin(), split.end(), [&](const Block& b) {
    return kind == Endpoint::lower ? b.lower == endpoint : b.upper == endpoint;
  });
  if (!is_endpoint) throw std::invalid_argument("not a block endpoint of n - 2^s");

  const DyadicInterval set =
      kind == Endpoint::lower ? lower_endpoint_set(endpoint, m.scale) : upper_endpoint_set(endpoint, m.scale);
  const Real phi = m.spec.phi(band);
  const ExtendedGrid mean = FourierSeries<Real>(m.function).fejer_mean(n);

  Vector<Real> roots = Vector<Real>::Zero(mean.size());
  for (Natural x : set.members()) {
    const auto i = static_cast<Eigen::Index>(x);
    roots(i) = std::sqrt(std::abs(mean[i]) / phi);
  }
  LowerBoundReport r{n, band, kind, endpoint};
  r.measure = static_cast<Real>(set.measure());
  r.integral = pairwise_sum(roots) / static_cast<Real>(mean.size());
  const auto card = static_cast<Real>(m.spec.spectrum(band).r3());
  r.bound = r.measure * std::pow(Real{2}, (2 * static_cast<Real>(endpoint) - 6) / 2) /
            (std::sqrt(Real{2}) * std::sqrt(card) * std::pow(phi, Real{0.25}));
  return r;
}

std::vector<LowerBoundReport> lower_bound_sweep(const MartingaleApprox& m) {
  std::vector<LowerBoundReport> out;
  for (const AtomTerm& t : m.terms) {
    const Natural start = Natural{1} << t.band;
    for (Natural n : m.spec.members(t.band)) {
      if (n == start) continue;
      for (const Block& b : blocks(n - start)) {
        out.push_back(lower_bound_check(m, t.band, n, Endpoint::lower, b.lower));
        if (b.upper + 3 <= m.scale) out.push_back(lower_bound_check(m, t.band, n, Endpoint::upper, b.upper));
      }
    }
  }
  return out;
}

RatioPoint ratio_point(const MartingaleApprox& m) {
  const FourierSeries<Real> series(m.function);
  Vector<Real> sup = Vector<Real>::Zero(m.function.size());
  for (const AtomTerm& t : m.terms) {
    const Real phi = m.spec.phi(t.band);
    for (Natural n : m.spec.members(t.band)) {
      sup = sup.cwiseMax((series.fejer_mean(n).values().cwiseAbs() / phi).eval());
    }
  }
  const Real sup_half = lp_quasinorm(ExtendedGrid(m.scale, std::move(sup)), 0.5);
  const Real hardy_half = hardy_norm(m.function, 0.5);
  RatioPoint p;
  p.scale = m.scale;
  p.sup_half = static_cast<double>(sup_half);
  p.hardy_half = static_cast<double>(hardy_half);
  p.ratio = hardy_half > 0 ? static_cast<double>(std::sqrt(sup_half / hardy_half)) : 0.0;
  return p;
}

std::vector<RatioPoint> ratio_curve(const CounterexampleSpec& spec, std::span<const unsigned> scales) {
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i] <= scales[i - 1]) throw std::invalid_argument("scales must be strictly ascending");
  }
  std::vector<RatioPoint> out(scales.size());
  parallel_for(scales.size(), [&](std::size_t i) { out[i] = ratio_point(build(spec, scales[i])); });
  return out;
}

}  // namespace wf
