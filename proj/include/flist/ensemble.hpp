#pragma once

#include <complex>
#include <vector>

namespace flist {

struct Pole {
  std::complex<double> k;
  std::complex<double> c;
};

// Reflectionless discrete data.  Only first-quadrant representatives are
// stored; the symmetry partner -k_j (same norming constant) is produced by
// expanded().
class SolitonEnsemble {
public:
  SolitonEnsemble() = default;
  explicit SolitonEnsemble(std::vector<Pole> reps);

  const std::vector<Pole>& representatives() const { return reps_; }
  std::size_t n() const { return reps_.size(); }
  bool empty() const { return reps_.empty(); }
  // All 2N poles: representatives first, then partners in the same order.
  std::vector<Pole> expanded() const;
  // Minimum distance from {k_j, conj(k_j)} to the cross R u iR.
  double rho() const;

private:
  std::vector<Pole> reps_;
};

// Velocity of the soliton carried by a pole of modulus |k|.
double soliton_velocity(double alpha, double beta, std::complex<double> k);

}  // namespace flist
