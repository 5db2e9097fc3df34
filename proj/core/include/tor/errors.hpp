#pragma once

#include <stdexcept>
#include <string>

namespace tor {

// Kernel evaluated outside its admissible parameter region (sigma at the
// logarithmic singularity, or a corrupted negative radicand).
class KernelDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The 2x2 coefficient matrix of the adjoint-recovery system is numerically
// singular; the geometry is degenerate and should have been dispatched to
// the one-dimensional branch.
class SingularRecovery : public std::runtime_error {
 public:
  explicit SingularRecovery(double det)
      : std::runtime_error("adjoint recovery matrix is singular (det = " +
                           std::to_string(det) + ")"),
        det_(det) {}
  double det() const { return det_; }

 private:
  double det_;
};

// Newton failed from every seed. Carries the best residual norm seen so the
// caller can tell a near-miss from garbage.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(const std::string& what, double best_residual, int seeds_tried)
      : std::runtime_error(what),
        best_residual_(best_residual),
        seeds_tried_(seeds_tried) {}
  double best_residual() const { return best_residual_; }
  int seeds_tried() const { return seeds_tried_; }

 private:
  double best_residual_;
  int seeds_tried_;
};

}  // namespace tor
