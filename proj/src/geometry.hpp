#pragma once

// Hyperplane projections under a chosen norm and nearest points on faces of P.

#include "model.hpp"

#include <Eigen/Dense>

namespace invlp {

struct ProjectionResult {
  Eigen::VectorXd point;
  Eigen::VectorXd eps;  // x_hat - point
  double distance = 0.0;
};

/// Dual of `norm` evaluated at v (l1 <-> linf, l2 <-> l2).
double dual_norm(Norm norm, const Eigen::VectorXd& v);

/// A unit vector u (in `norm`) with u'a = dual_norm(norm, a). Throws ZeroVector.
Eigen::VectorXd unit_maximizer(Norm norm, const Eigen::VectorXd& a);

/// Nearest point to x_hat on {x : a'x = b} measured in loss_norm. The signed
/// distance is (a'x_hat - b) / ||a||_dual.
ProjectionResult project_to_hyperplane(const Eigen::VectorXd& x_hat, const Eigen::VectorXd& a, double b,
                                       Norm loss_norm);

/// Nearest point to x_hat (in the p-norm) on {x in P : a'x = beta}. `distance`
/// is ||x_hat - point||_p. Throws EmptyFace when that set is empty.
ProjectionResult project_onto_face(const ForwardProblem& fp, const Eigen::VectorXd& x_hat, const Eigen::VectorXd& a,
                                   double beta, Norm p);

/// project_onto_face for the face of P cut out by row i.
ProjectionResult feasible_project(const ForwardProblem& fp, const Eigen::VectorXd& x_hat, Eigen::Index row, Norm p);

}  // namespace invlp
