#pragma once

// Auxiliary integral functions underlying every closed-form moment in the
// model:
//
//   psi(k,t)        = int_0^t exp(-k u) du
//   theta(k,t)      = int_0^t psi(k,s) ds
//   upsilon(k,t)    = int_0^t psi(k,s)^2 ds
//   gamma_fn(k,a,t) = int_0^t exp(-a s) psi(k,s) ds
//   lambda_fn(k,a,t)= int_0^t psi(a,s) psi(k,s) ds
//
// All five are continuous in the decay arguments, including through zero,
// and are evaluated with series branches near the cancellation-prone
// limits so that relative accuracy stays near machine precision.
// Negative decays (exploding processes) are accepted; the integrals remain
// well defined.

namespace fcm {

double psi(double kappa, double t);
double theta(double kappa, double t);
double upsilon(double kappa, double t);
double gamma_fn(double kappa, double alpha, double t);
double lambda_fn(double kappa, double alpha, double t);

}  // namespace fcm
