#include "walshfejer/operators.hpp"

#include <random>

#include "walshfejer/kernels.hpp"

namespace wf {

GridFunction fejer_mean_convolution(const GridFunction& f, Natural n) {
  const ScaledKernel kernel = fejer_scaled(n, f.scale());
  const Eigen::Index size = f.size();
  const double norm = static_cast<double>(n) * static_cast<double>(size);
  Vector<double> out(size);
  parallel_for(static_cast<std::size_t>(size), [&](std::size_t xi) {
    const auto x = static_cast<Eigen::Index>(xi);
    double acc = 0.0;
    for (Eigen::Index t = 0; t < size; ++t) {
      acc += f[t] * static_cast<double>(kernel.values[x ^ t]);
    }
    out(x) = acc / norm;
  });
  return {f.scale(), std::move(out)};
}

GridFunction random_atom(const DyadicInterval& interval, double p, std::uint64_t seed) {
  require_positive_exponent(p);
  GridFunction atom(interval.scale());
  const std::vector<Natural> members = interval.members();
  if (members.size() < 2) return atom;

  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> draw(-1.0, 1.0);
  Vector<double> v(static_cast<Eigen::Index>(members.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = draw(engine);
  v.array() -= pairwise_sum(v) / static_cast<double>(v.size());

  const double peak = v.cwiseAbs().maxCoeff();
  if (peak == 0.0) return atom;
  // Normalizing first makes the peak exactly +-1, so it lands exactly on the bound.
  v /= peak;
  v *= std::pow(interval.measure(), -1.0 / p);
  for (Eigen::Index i = 0; i < v.size(); ++i) atom[static_cast<Eigen::Index>(members[static_cast<std::size_t>(i)])] = v(i);
  return atom;
}

WeightSpec::WeightSpec(WeightKind kind) : kind_(kind) {
  if (kind == WeightKind::custom) throw std::invalid_argument("use WeightSpec::custom to supply phi");
}

WeightSpec WeightSpec::custom(std::vector<double> phi) {
  if (phi.empty()) throw std::invalid_argument("custom weight needs at least one value");
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (!(phi[i] > 0.0) || !std::isfinite(phi[i])) throw std::invalid_argument("custom weights must be positive");
    if (i > 0 && phi[i] < phi[i - 1]) throw std::invalid_argument("custom weights must be nondecreasing");
  }
  WeightSpec spec(WeightKind::card_squared);
  spec.kind_ = WeightKind::custom;
  spec.phi_ = std::move(phi);
  return spec;
}

MaximalOperatorSpec::MaximalOperatorSpec(std::vector<Natural> sequence, WeightSpec weight)
    : sequence_(std::move(sequence)), weight_(std::move(weight)) {
  if (sequence_.empty()) throw std::invalid_argument("maximal operator needs a nonempty sequence");
  for (std::size_t i = 0; i < sequence_.size(); ++i) {
    if (sequence_[i] == 0) throw std::invalid_argument("sequence indices must be at least 1");
    if (i > 0 && sequence_[i] <= sequence_[i - 1]) throw std::invalid_argument("sequence must be strictly increasing");
  }
  std::map<unsigned, std::vector<Natural>> by_band;
  for (Natural n : sequence_) by_band[lead(n)].push_back(n);
  for (const auto& [band, members] : by_band) spectra_.emplace(band, band_spectrum(band, members));
  if (weight_.kind() == WeightKind::custom && lead(sequence_.back()) >= weight_.phi().size()) {
    throw std::invalid_argument("custom weight does not cover band " + std::to_string(lead(sequence_.back())));
  }
}

double MaximalOperatorSpec::weight(Natural n) const {
  if (n == 0) throw std::domain_error("weights are defined for n >= 1");
  switch (weight_.kind()) {
    case WeightKind::card_squared: {
      const auto it = spectra_.find(lead(n));
      if (it == spectra_.end()) throw std::invalid_argument("no sequence member in the band of " + std::to_string(n));
      const auto card = static_cast<double>(it->second.r3());
      return card * card;
    }
    case WeightKind::log_squared: {
      const double l = std::log2(static_cast<double>(n) + 1.0);
      return l * l;
    }
    case WeightKind::variation_squared: {
      const auto v = static_cast<double>(variation(n));
      return v * v;
    }
    case WeightKind::custom: {
      const unsigned band = lead(n);
      if (band >= weight_.phi().size()) throw std::out_of_range("custom weight does not cover band " + std::to_string(band));
      return weight_.phi()[band];
    }
  }
  throw std::logic_error("unknown weight kind");
}

std::array<std::vector<Natural>, 3> corollary2_sequences(unsigned count) {
  if (count == 0 || count > 62) throw std::out_of_range("sequence length must be in 1..62");
  std::array<std::vector<Natural>, 3> out;
  for (unsigned k = 1; k <= count; ++k) {
    const Natural p = Natural{1} << k;
    out[0].push_back(p);
    out[1].push_back(p + 1);
    out[2].push_back(p + (Natural{1} << (k / 2)));
  }
  return out;
}

double atom_functional(const GridFunction& atom, const DyadicInterval& interval, const MaximalOperatorSpec& spec) {
  const AtomCertificate cert = validate_atom(atom, 0.5, interval);
  if (!cert.valid()) throw std::invalid_argument("not a 1/2-atom: " + cert.violations.front());
  const GridFunction sup = weighted_maximal(atom, spec);
  Vector<double> roots = Vector<double>::Zero(sup.size());
  for (Eigen::Index x = 0; x < sup.size(); ++x) {
    if (!interval.contains(static_cast<Natural>(x))) roots(x) = std::sqrt(sup[x]);
  }
  return pairwise_sum(roots) / static_cast<double>(sup.size());
}

std::vector<Natural> full_band_sequence(unsigned scale) {
  std::vector<Natural> out;
  for (Natural n = 1; n < (Natural{1} << checked_scale(scale)); ++n) out.push_back(n);
  return out;
}

}  // namespace wf
