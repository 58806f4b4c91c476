#pragma once

#include "ergocert/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ergocert::analysis::detail {

Certificate make(Framework f, Property p);

/// LP {v >= 1, M^T v <= -1, E^T v = 0}; E may have zero columns.
std::optional<Vector> stability_witness(const Matrix& M, const Matrix& E, const linopt::SolverOptions& opts);

struct OcCore {
  bool holds = false;
  double mu = 0.0;
  Vector w;
  bool rank_row = false;
  bool graph = false;
};
/// mu = 0 when M is Hurwitz, lambda_PF(M) + 1 otherwise; w solves w^T (M - mu I) = -e_out^T.
OcCore oc_core(const Matrix& M, int input, int output, const linopt::SolverOptions& opts);

/// Fills w, mu_shift, verdict and the cross-check caveats of an OC certificate.
void apply_oc(Certificate& c, const OcCore& core, const std::vector<std::string>* names = nullptr);

/// Joint LP {v >= 1, Ms^T v <= -1; w >= 0, w_in >= 1, t >= 1, (Mc - mu I)^T w + t e_out = 0}.
/// Returns v and w / t.
struct JointWitness {
  Vector v;
  Vector w;
};
std::optional<JointWitness> aic_lp(const Matrix& Ms, const Matrix& Mc, double mu, int input, int output,
                                   const linopt::SolverOptions& opts);

/// Bimolecular reduction of an arbitrary affine d x d matrix.
BimolecularReduction reduce_affine(const model::AffineMatrix& A, const Matrix& Sb);

/// Uniform point in a box from a 64-bit generator (53-bit mantissa draws).
std::vector<double> random_point(const std::vector<poly::Interval>& box, unsigned long long& state);

std::string species_name(const std::vector<std::string>* names, int i);
std::string format_cycle(const std::vector<int>& cycle, const std::vector<std::string>* names);
std::string format_point(const std::vector<std::string>& symbols, const std::vector<double>& point);

/// Points of a regular grid over a box, per_dim points on each non-degenerate side.
std::vector<std::vector<double>> grid(const std::vector<poly::Interval>& box, int per_dim);

inline constexpr const char* kIrreducibleCaveat =
    "state-space irreducibility is not checked; the verdict assumes it";

}  // namespace ergocert::analysis::detail
