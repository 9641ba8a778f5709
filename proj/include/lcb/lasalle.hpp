#pragma once

#include <vector>

#include <Eigen/Core>

#include "lcb/control_law.hpp"

namespace lcb {

struct KL {
  double K = 0.0;
  double L = 0.0;
};

/// K = (b_x - gamma c_x) delta - (b delta_x + c delta_y)/2, L = b v_x + c v_y, from the
/// controller's field gradients. Throws OutOfDomain.
KL K_L_values(const Controller& ctrl, double x, double y);

/// Same quantities at a grid node with central differences of the nodal fields.
KL K_L_node(const Controller& ctrl, int i, int j);

struct L1Check {
  double forbidden_ratio = 0.0;
  double ratio = 0.0;  ///< s'(0)/s(0)
  bool ok = false;
};
L1Check l1_check(const SystemSpec2D& sys, double gamma0, const BoundaryData& boundary,
                 double tol = kDefaultTol);

struct L2Check {
  double forbidden = 0.0;
  bool ok = false;
};
/// Propagates SingularQuotient and GbcViolation.
L2Check l2_from_M(const SystemSpec2D& sys, double gamma0, double s0, double r2,
                  double tol = kDefaultTol);

struct ChainSample {
  double x, y, px, py;
  double distance;  ///< Euclidean norm of the state
};

struct ChainOptions {
  double tol = 1e-3;           ///< membership tolerance for the S_n equations
  double chain_radius = 5e-2;
  int n_px = 41;
  double px_max = 1.0;
  double grad_tol = 1e-6;      ///< |grad L(0)| must exceed this
};

struct LaSalleReport {
  double K0 = 0.0;
  Eigen::Vector2d gradL0 = Eigen::Vector2d::Zero();
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  L1Check l1;
  L2Check l2;
  bool l1_ok = false, l2_ok = false, gradL0_nonzero = false;
  std::size_t s0_count = 0, s1_count = 0, s2_count = 0, s3_count = 0;
  std::vector<ChainSample> chain_samples;  ///< the S3-flagged samples
  double max_chain_distance = 0.0;
  double tol = 0.0, chain_radius = 0.0;
  bool verdict = false;
};

/**
 * Samples the slice p_y = -gamma p_x over the field nodes and n_px momenta,
 * flags S1, S2, S3 membership and combines the result with the scalar
 * certificates. Throws InconclusiveScan when no sample passes S1.
 */
LaSalleReport chain_scan(const Controller& ctrl, const ChainOptions& opt = {});

}  // namespace lcb
