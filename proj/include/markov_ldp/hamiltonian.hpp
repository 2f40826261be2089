#pragma once

// Nonlinear operator stack of a finite jump process:
//   Hf(x)   = sum_y r(x,y) (e^{f(y)-f(x)} - 1)          (= e^{-f} Q e^{f})
//   A^g     = generator with rates r(x,y) e^{g(y)-g(x)}
//   Lg      = A^g g - Hg
//   V(t)f   = log e^{tQ} e^{f}
//   R(l)f   = log (I - l Q)^{-1} e^{f}

#include "markov_ldp/markov_core.hpp"

namespace ldp {

Potential apply_hamiltonian(const Generator& q, const Potential& f);

// Same operator through the conjugation e^{-f} Q e^{f}; kept as an independent route.
Potential apply_hamiltonian_conjugated(const Generator& q, const Potential& f);

Generator tilted_generator(const Generator& q, const Potential& g);

// A^g f = e^{-g} Q (f e^{g}) - (e^{-g} Q e^{g}) f, without forming the tilted rate matrix.
Potential apply_tilted_conjugated(const Generator& q, const Potential& g, const Potential& f);

Potential apply_generator(const Generator& q, const Potential& f);

Potential pre_lagrangian(const Generator& q, const Potential& g);

Potential v_apply(const Generator& q, const Potential& f, double t);

// V(t) with a precomputed transition matrix; used inside optimization loops.
Eigen::VectorXd log_expectation(const Eigen::MatrixXd& transition, const Eigen::VectorXd& f);

Potential nonlinear_resolvent(const Generator& q, const Potential& f, double lambda);

// R(1/n) applied floor(n t) times.
Potential resolvent_iterate(const Generator& q, const Potential& f, double t, int n);

// Radius of the sup-norm ball on which ||Hg|| <= 1: 0.5 log(1/||r|| + 1).
double barrel_radius(const Generator& q);

} // namespace ldp
