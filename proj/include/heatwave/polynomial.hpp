#pragma once

#include <complex>
#include <span>
#include <vector>

namespace heatwave {

using cplx = std::complex<double>;

/// Horner evaluation; coefficients in descending powers.
cplx poly_eval(std::span<const cplx> coeffs, cplx z);

/// Roots of a monic polynomial of degree 1..4, coefficients in descending
/// powers with coeffs[0] == 1.
///
/// Simultaneous (Durand-Kerner) iteration started from a perturbed circle of
/// radius given by the Fujiwara bound, followed by Newton polishing of each
/// root. The result is accepted when every root has backward error
/// |p(z)| / sum |a_i| |z|^i below 1e-10; otherwise NumericalError is thrown
/// with the residuals.
std::vector<cplx> solve_roots(std::span<const cplx> coeffs);

}  // namespace heatwave
