#ifndef NHF_RANDOM_HPP
#define NHF_RANDOM_HPP

#include <cstdint>
#include <random>

#include "nhf/types.hpp"

namespace nhf {

/// Seeded generator shared by the instance generator and every sampling
/// verifier. The raw engine is std::mt19937_64, whose output sequence is fixed
/// by the standard; the conversions to doubles below are done by hand so that
/// generated corpora do not depend on the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent stream for a sub-task, derived with SplitMix64.
  static Rng stream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller.
  double normal();
  int integer(int lo, int hi);  // inclusive bounds

  /// Gaussian scalar; complex draws have E|z|^2 = 1.
  Scalar scalar(Field field);
  Vector gaussian_vector(Eigen::Index size, Field field);
  Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Field field);
  /// Uniform on the unit sphere (real or complex).
  Vector unit_vector(Eigen::Index size, Field field);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace nhf

#endif  // NHF_RANDOM_HPP
