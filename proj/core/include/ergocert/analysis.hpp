#pragma once

// Certification of ergodicity, output controllability and antithetic integral
// control (AIC) under nominal, interval, robust, sign and structural models of
// the rate parameters.

#include "ergocert/linopt.hpp"
#include "ergocert/model.hpp"
#include "ergocert/poly.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ergocert::analysis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class Framework { Nominal, Interval, Robust, Sign, Structural };
enum class Property { Ergodicity, ErgodicityBimolecular, OutputControllability, AIC };
enum class Verdict { Holds, Fails, Unknown };

const char* to_string(Framework f);
const char* to_string(Property p);
const char* to_string(Verdict v);
Framework parse_framework(std::string_view s);  // throws PreconditionError
Property parse_property(std::string_view s);
Verdict parse_verdict(std::string_view s);

inline constexpr Framework kAllFrameworks[] = {Framework::Nominal, Framework::Interval, Framework::Robust,
                                               Framework::Sign, Framework::Structural};

/// Antithetic controller: actuated species receives k*Z1, controlled species feeds Z2.
struct ControlSpec {
  int actuated = 0;
  int controlled = 0;
  double mu = 1.0;
  double theta = 1.0;
  double eta = 1.0;
  double k = 1.0;

  void validate(int d) const;  // throws PreconditionError
};

/// Witness v(rho) at one parameter point of a robust family.
struct RobustSample {
  std::vector<double> point;
  Vector v;
};

struct Certificate {
  Framework framework = Framework::Nominal;
  Property property = Property::Ergodicity;
  Verdict verdict = Verdict::Unknown;

  std::optional<Vector> v;      // stability witness, v > 0, v^T M < 0
  std::optional<Vector> w;      // controllability witness, w >= 0, w_1 > 0
  std::optional<Vector> v_aux;  // second witness (structural v_d, reduced bimolecular v~)
  std::optional<double> mu_shift;
  std::optional<double> alpha;
  std::optional<double> setpoint_bound;

  std::vector<std::string> caveats;
  std::map<std::string, Matrix> matrices;  // evaluated test matrices by name
  std::map<std::string, std::string> notes;
  std::string counterexample;               // empty unless Fails
  std::vector<double> counterexample_point;  // parameter values, sample_symbols order

  std::vector<std::string> sample_symbols;
  std::vector<RobustSample> samples;

  int actuated = -1;
  int controlled = -1;
  bool irreducible_asserted = false;
  std::string network_hash;

  bool holds() const { return verdict == Verdict::Holds; }
};

// ---------------------------------------------------------------------------
// graph helpers (edge m -> n whenever M(n, m) != 0, m != n)

bool graph_path(const Matrix& m, int from, int to);
/// A directed cycle of the off-diagonal digraph (node list, first == last), or empty.
std::vector<int> find_cycle(const Matrix& m);

// ---------------------------------------------------------------------------
// nominal

Certificate ergodicity_nominal(const Matrix& A, const linopt::SolverOptions& opts = {});
/// Sufficient condition for bimolecular networks; infeasibility gives Unknown.
Certificate ergodicity_bimolecular_nominal(const Matrix& A, const Matrix& Sb, const linopt::SolverOptions& opts = {});

/// Rank-row criterion: some c^T M^k b, k < d, is nonzero.
bool oc_rank_row(const Matrix& M, int input, int output);
Certificate output_controllability(const Matrix& A, int input, int output, const linopt::SolverOptions& opts = {});
Certificate output_controllability(const Matrix& A, const ControlSpec& spec, const linopt::SolverOptions& opts = {});

struct SetpointBound {
  double bound = 0.0;
  double alpha = 0.0;
  Vector v;
};
/// Threshold on mu/theta: v^T b0 / (alpha v_l) with v^T (A + alpha I) <= 0.
SetpointBound setpoint_bound_nominal(const Matrix& A, const Vector& b0, int controlled,
                                     const linopt::SolverOptions& opts = {});

Certificate aic_nominal(const Matrix& A, const ControlSpec& spec, const Vector* b0 = nullptr,
                        const linopt::SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// interval

Certificate ergodicity_interval(const model::IntervalMatrix& iv, const linopt::SolverOptions& opts = {});
Certificate ergodicity_interval_bimolecular(const model::IntervalMatrix& iv, const Matrix& Sb,
                                            const linopt::SolverOptions& opts = {});
Certificate output_controllability_interval(const model::IntervalMatrix& iv, const ControlSpec& spec,
                                            const linopt::SolverOptions& opts = {});
/// Bound (18) with q = 1, maximised over a grid of Delta in [0, A+ - A-].
SetpointBound setpoint_bound_interval(const model::IntervalMatrix& iv, const Vector& b0_upper, int controlled);
Certificate aic_interval(const model::IntervalMatrix& iv, const ControlSpec& spec, const Vector* b0_upper = nullptr,
                         const linopt::SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// robust

/// A(rho) with degradation and catalytic rates fixed at their worst-case bounds
/// and the conversion rates left symbolic over their box.
struct RobustFamily {
  model::AffineMatrix upper;  // A(dg-, ct+, rho_cv)
  model::AffineMatrix lower;  // A(dg+, ct-, rho_cv)
  std::vector<std::string> cv;
  std::vector<poly::Interval> box;
  std::optional<Vector> b0_upper;  // absent when a zeroth-order rate is unbounded
  Matrix Sb;
  std::vector<std::string> warnings;

  Matrix upper_at(const std::vector<double>& point) const;
  Matrix lower_at(const std::vector<double>& point) const;
  std::vector<double> midpoint() const;
};

RobustFamily reduce_to_cv(const model::CharacteristicModel& cm, const std::map<std::string, model::Domain>& domains);

struct RobustOptions {
  int adjugate_samples = 100;
  int grid_per_dim = 5;
  unsigned long long seed = 0x5eed;
  poly::PositivityOptions positivity;
  linopt::SolverOptions lp;
};

Certificate ergodicity_robust(const RobustFamily& family, const RobustOptions& opts = {});
Certificate ergodicity_robust_bimolecular(const RobustFamily& family, const RobustOptions& opts = {});
Certificate output_controllability_robust(const RobustFamily& family, const ControlSpec& spec,
                                          const linopt::SolverOptions& opts = {});
Certificate aic_robust(const RobustFamily& family, const ControlSpec& spec, const RobustOptions& opts = {});

/// v(rho)^T = (-1)^(d+1) 1^T Adj(A+(rho)), one polynomial per entry.
std::vector<poly::MultiPoly> adjugate_witness(const model::AffineMatrix& family);

// ---------------------------------------------------------------------------
// sign

Certificate ergodicity_sign(const model::SignMatrix& s, const linopt::SolverOptions& opts = {});
Certificate output_controllability_sign(const model::SignMatrix& s, const ControlSpec& spec,
                                        const linopt::SolverOptions& opts = {});
Certificate aic_sign(const model::SignMatrix& s, const ControlSpec& spec, const linopt::SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// structural

struct StructuralTests {
  bool hypothesis = false;  // each conversion column is e_j - e_i
  Matrix A1;                // A(dg = 1, cv = 1, ct = 0)
  bool a1_hurwitz = false;
  Vector v_c;
  Matrix N;       // -W_ct A1^{-1} S_ct >= 0
  bool f_holds = false;  // zero diagonal and acyclic
  bool g_holds = false;  // LP on sgn(N) - I
  Vector v_d;
  std::vector<int> catalytic_cycle;  // indices into the catalytic block when f fails
};

StructuralTests structural_tests(const model::CharacteristicModel& cm, const linopt::SolverOptions& opts = {});

Certificate ergodicity_structural(const model::CharacteristicModel& cm, const linopt::SolverOptions& opts = {});
Certificate output_controllability_structural(const model::CharacteristicModel& cm, const ControlSpec& spec,
                                              const linopt::SolverOptions& opts = {});
Certificate aic_structural(const model::CharacteristicModel& cm, const ControlSpec& spec,
                           const linopt::SolverOptions& opts = {});
Certificate ergodicity_structural_bimolecular(const model::CharacteristicModel& cm,
                                              const linopt::SolverOptions& opts = {});

// ---------------------------------------------------------------------------
// bimolecular reduction: v = P^T v~ with P Sb = 0

/// Full-row-rank P with P Sb = 0, from the reduced row echelon form of Sb^T.
Matrix left_annihilator(const Matrix& Sb);

struct BimolecularReduction {
  Matrix perp;                 // P, r x d
  model::AffineMatrix reduced; // P A restricted to kept columns, r x r when exact
  std::vector<int> kept;       // kept columns of P A
  std::vector<int> dropped;    // columns that are negative for every positive rate vector
  bool exact = false;          // P is a 0/1 partition and the kept block is square and Metzler
};

BimolecularReduction reduce_bimolecular(const model::CharacteristicModel& cm);

// ---------------------------------------------------------------------------
// network-level driver

struct Problem {
  model::ReactionNetwork net;
  model::StoichiometricDecomposition dec;
  model::CharacteristicModel cm;
  std::string hash;  // SHA-256 of the canonical network source

  static Problem from(model::ReactionNetwork net);

  /// Values of Fixed first- and zeroth-order rates (nominal framework).
  std::map<std::string, double> nominal_values() const;
  Matrix nominal_A() const;
  Vector nominal_b0() const;
};

struct AnalysisOptions {
  bool assert_irreducible = false;
  RobustOptions robust;
};

Certificate ergodicity(const Problem& p, Framework f, const AnalysisOptions& opts = {});
Certificate output_controllability(const Problem& p, Framework f, const ControlSpec& spec,
                                   const AnalysisOptions& opts = {});
Certificate aic(const Problem& p, Framework f, const ControlSpec& spec, const AnalysisOptions& opts = {});

/// Ergodicity, plus output controllability and AIC when a control spec is given.
std::vector<Certificate> analyze(const Problem& p, Framework f, const std::optional<ControlSpec>& spec,
                                 const AnalysisOptions& opts = {});

// ---------------------------------------------------------------------------
// independent checking

struct VerifyResult {
  bool ok = false;
  double residual = 0.0;
  std::string message;
};

/// Re-derives the test matrices from the network and checks the witnesses with
/// plain matrix-vector arithmetic. Non-Holds certificates carry nothing to check.
VerifyResult verify(const Certificate& cert, const Problem& p, double tol = 1e-8);

// ---------------------------------------------------------------------------
// serialisation

std::string to_json(const Certificate& cert, int indent = 2);
Certificate certificate_from_json(std::string_view text);
/// Report envelope {"meta": ..., "certificates": [...]}.
std::string report_json(const std::vector<Certificate>& certs, const std::map<std::string, std::string>& meta);
std::vector<Certificate> certificates_from_report(std::string_view text);

}  // namespace ergocert::analysis
