#pragma once

#include <vector>

#include "cvrob/fock.hpp"

namespace cvrob {

// Completely positive map held as Kraus operators K_i : C^din -> C^dout.
class Channel {
 public:
  static Channel from_kraus(std::vector<Matrix> kraus);
  // Column-stacking convention: vec(Lambda(X)) = S vec(X).
  static Channel from_superoperator(const Matrix& s, int din, int dout);
  static Channel identity(int d);
  static Channel unitary(const Matrix& u);
  // Full dephasing in the Fock / computational basis.
  static Channel dephasing(int d);
  // |i> -> |perm[i]>
  static Channel permutation(const std::vector<int>& perm);

  int input_dim() const { return din_; }
  int output_dim() const { return dout_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }

  Matrix apply(const Matrix& rho) const;
  Matrix adjoint_apply(const Matrix& x) const;
  Matrix superoperator() const;
  // sum_ij |i><j| (x) Lambda(|i><j|), input factor first.
  Matrix choi() const;
  bool is_cptp(double eps = tol::kPsd) const;

 private:
  std::vector<Matrix> kraus_;
  int din_ = 0;
  int dout_ = 0;
};

}  // namespace cvrob
