#pragma once
// Nodal state storage for the 9-component velocity-stress vector
// (vx, vy, vz, sxx, syy, szz, sxy, sxz, syz), stored component-major per
// element so each scalar field is contiguous for the tensor kernels.

#include <cstddef>
#include <vector>

namespace elastodg {

constexpr int kComps = 9;

class StateField {
 public:
  StateField() = default;
  StateField(int nelem, int npe)
      : nelem_(nelem), npe_(npe), data_((std::size_t)nelem * kComps * npe, 0.0) {}

  int nelem() const { return nelem_; }
  int npe() const { return npe_; }
  double* comp(int e, int c) {
    return data_.data() + ((std::size_t)e * kComps + c) * npe_;
  }
  const double* comp(int e, int c) const {
    return data_.data() + ((std::size_t)e * kComps + c) * npe_;
  }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  void set_zero() { std::fill(data_.begin(), data_.end(), 0.0); }

 private:
  int nelem_ = 0, npe_ = 0;
  std::vector<double> data_;
};

inline void axpy_state(StateField& y, double a, const StateField& x) {
  const std::size_t n = y.raw().size();
  double* yd = y.raw().data();
  const double* xd = x.raw().data();
  for (std::size_t i = 0; i < n; ++i) yd[i] += a * xd[i];
}

inline void scale_state(StateField& y, double a) {
  for (double& v : y.raw()) v *= a;
}

}  // namespace elastodg
