#pragma once

#include <vector>

#include "nnoma/params.hpp"

namespace nnoma {

/// Interference-plus-noise seen by the CoMP user: a PPP of density `lambda`
/// outside the disc of radius `r_min`, Rayleigh fading, path loss r^alpha,
/// plus a noise floor `inv_rho` (= 1/rho).
struct InterferenceField {
  double lambda = 0;
  double inv_rho = 0;
  double r_min = 0;
  double alpha = 4;
};

/// Field with the CoMP-user geometry: lambda_c, 1/rho, R_D, alpha.
InterferenceField comp_interference(const SystemParams& p);

/// Gauss hypergeometric 2F1(a, 1; c; z) for z <= 0, by its power series for
/// |z| < 1/2 and after the Pfaff transformation otherwise.
double hyp2f1_b1(double a, double c, double z);

/// tau(mu) = log E[exp(-mu (I + 1/rho))], from the integral representation
///   -mu/rho - 2 pi lambda int_{r_min}^inf mu r / (r^alpha + mu) dr.
double tau(double mu, const InterferenceField& f);

/// tau(mu) from the hypergeometric closed form (cross-check of tau()).
double tau_hypergeometric(double mu, const InterferenceField& f);

/// tau^{(k)}(mu) for k = 1..max_order (index k-1).
std::vector<double> tau_derivatives(double mu, int max_order, const InterferenceField& f);

/// L^{(i)}(mu) for i = 0..max_order with L = exp(tau), via
///   L^{(i)} = sum_{j<i} C(i-1, j) tau^{(i-j)} L^{(j)}.
/// Raw derivatives scale like mu^{-i}; use scaled_laplace_terms() for high orders.
std::vector<double> laplace_derivatives(double mu, int max_order, const InterferenceField& f);

/// a_j = (-mu)^j L^{(j)}(mu) / j! for j = 0..max_order.
///
/// a_j = E[(mu Y)^j e^{-mu Y} / j!] with Y = I + 1/rho, i.e. the expected
/// Poisson(mu Y) probability of j, so every a_j >= 0 and sum_j a_j = 1. The
/// recursion j a_j = sum_k k b_k a_{j-k} with b_k = (-mu)^k tau^{(k)} / k! >= 0
/// has no cancellation.
std::vector<double> scaled_laplace_terms(double mu, int max_order, const InterferenceField& f);

}  // namespace nnoma
