#pragma once

// Reaction networks: the text format, stoichiometric bookkeeping, and the
// symbolic first-moment model (characteristic matrix and offset vector).

#include <Eigen/Dense>

#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ergocert::model {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IntMatrix = Eigen::MatrixXi;

/// Admissible values of one rate parameter.
struct Domain {
  enum class Kind { Fixed, Interval, PositiveUnbounded };

  Kind kind = Kind::PositiveUnbounded;
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Domain fixed(double value);
  static Domain interval(double lo, double hi, bool lo_closed = true, bool hi_closed = true);
  static Domain positive();

  bool bounded() const { return kind != Kind::PositiveUnbounded; }
  // Bounds of the closure; only meaningful when bounded().
  double lower() const { return lo; }
  double upper() const { return hi; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool closed() const { return kind != Kind::Interval || (lo_closed && hi_closed); }

  std::string to_string() const;
  bool operator==(const Domain&) const = default;
};

/// (species index, multiplicity) pairs sorted by species index.
using Complex = std::vector<std::pair<int, int>>;

struct Reaction {
  Complex reactants;
  Complex products;
  std::string rate;
  std::size_t line = 0;

  /// Total reactant multiplicity: 0, 1 or 2.
  int order() const;
};

struct ReactionNetwork {
  std::vector<std::string> species;  // source order of first appearance
  std::vector<Reaction> reactions;
  std::map<std::string, Domain> domains;

  int d() const { return static_cast<int>(species.size()); }
  int K() const { return static_cast<int>(reactions.size()); }
  int species_index(std::string_view name) const;  // -1 when absent
  Eigen::VectorXi stoichiometry(int k) const;       // products - reactants
  const Domain& domain(const std::string& symbol) const;
};

/// Parses the line-oriented reaction format:
///
///     # comment
///     0 -> X1 @ kb            reaction: complex "->" complex "@" rate
///     X1 + X2 -> 2 X2 @ kinf
///     kb = 2.0                fixed value
///     kd in [1, 2]            interval; '(' / ')' mark open endpoints
///     kinf > 0                arbitrary positive value
ReactionNetwork parse_network(std::string_view text);
ReactionNetwork load_network(const std::filesystem::path& path);

/// Renders a network back into the text format (parse_network round-trips it).
std::string to_source(const ReactionNetwork& net);

enum class ReactionClass { Zeroth, Degradation, Catalytic, Conversion, Bimolecular };
const char* to_string(ReactionClass c);

/// Column-block view of the stoichiometry matrix. First-order reactions are
/// classified by the sign pattern of their stoichiometric column alone.
struct StoichiometricDecomposition {
  std::vector<std::string> species;
  std::vector<std::string> rates;     // rate symbol of each column
  IntMatrix S;                        // d x K, columns in source order
  std::vector<ReactionClass> classes;
  std::vector<int> s0, dg, ct, cv, sb;  // column indices, source order within each block
  std::vector<int> reactant;            // first-order reactant species per column, -1 otherwise
  std::vector<std::pair<int, int>> bimolecular_reactants;  // per sb column

  int d() const { return static_cast<int>(S.rows()); }
  std::vector<int> first_order() const;  // dg, ct, cv concatenated
  IntMatrix block(const std::vector<int>& cols) const;
  IntMatrix S0() const { return block(s0); }
  IntMatrix Su() const { return block(first_order()); }
  IntMatrix Sb() const { return block(sb); }
  IntMatrix Sdg() const { return block(dg); }
  IntMatrix Sct() const { return block(ct); }
  IntMatrix Scv() const { return block(cv); }
  /// n_ct x d matrix whose row a selects the reactant of catalytic reaction a.
  Matrix Wct() const;
};

StoichiometricDecomposition decompose(const ReactionNetwork& net);

bool has_conversion(const StoichiometricDecomposition& dec);

/// Matrix whose entries are affine in a list of named symbols:
/// M(rho) = constant + sum_k rho_k * coefficient_k.
class AffineMatrix {
 public:
  AffineMatrix() = default;
  AffineMatrix(int rows, int cols);
  explicit AffineMatrix(Matrix constant);

  int rows() const { return static_cast<int>(constant_.rows()); }
  int cols() const { return static_cast<int>(constant_.cols()); }
  const Matrix& constant() const { return constant_; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const Matrix& coefficient(std::size_t k) const { return coefficients_[k]; }
  int symbol_index(std::string_view symbol) const;  // -1 when absent

  void add_constant(const Matrix& m);
  void add_term(const std::string& symbol, const Matrix& coefficient);

  /// Evaluation with values listed in symbols() order.
  Matrix evaluate(std::span<const double> values) const;
  Matrix evaluate(const std::function<double(const std::string&)>& value_of) const;
  Matrix evaluate(const std::map<std::string, double>& values) const;

  /// Fixes the listed symbols; the others stay symbolic.
  AffineMatrix substitute(const std::map<std::string, double>& values) const;
  /// L * M(rho), symbol by symbol.
  AffineMatrix left_multiply(const Matrix& left) const;
  AffineMatrix select_columns(const std::vector<int>& cols) const;

  /// Affine form of entry (i, j): constant plus nonzero (symbol index, coefficient) terms.
  std::pair<double, std::vector<std::pair<int, double>>> entry(int i, int j) const;

 private:
  Matrix constant_;
  std::vector<std::string> symbols_;
  std::vector<Matrix> coefficients_;
};

/// First-moment model: A(rho_u) = S_u W(rho_u), b0(rho_0) = S_0 w0(rho_0).
struct CharacteristicModel {
  std::vector<std::string> species;
  AffineMatrix A;   // d x d, symbols = first-order rates
  AffineMatrix b0;  // d x 1, symbols = zeroth-order rates
  std::vector<std::string> zeroth_symbols;
  std::vector<std::string> dg_symbols;
  std::vector<std::string> ct_symbols;
  std::vector<std::string> cv_symbols;
  std::vector<std::string> bimolecular_symbols;
  Matrix Sb;   // d x n_b
  Matrix Sct;  // d x n_ct
  Matrix Scv;  // d x n_cv
  Matrix Wct;  // n_ct x d

  int d() const { return A.rows(); }
  bool bimolecular() const { return Sb.cols() > 0; }
};

CharacteristicModel characteristic_model(const StoichiometricDecomposition& dec);

/// Open iff no nonzero z >= 0 satisfies z^T S = 0. Decided by the LP
/// max 1^T z s.t. z^T S = 0, 0 <= z <= 1; a non-open network returns the maximizer.
struct OpenTest {
  bool open = true;
  Vector witness;
};
OpenTest is_open(const StoichiometricDecomposition& dec);

enum class Sign : signed char { Negative = -1, Zero = 0, Positive = 1 };

class SignMatrix {
 public:
  SignMatrix() = default;
  SignMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols, Sign::Zero) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Sign operator()(int i, int j) const { return data_[i * cols_ + j]; }
  Sign& operator()(int i, int j) { return data_[i * cols_ + j]; }

  /// sgn(.) as a real matrix with entries in {-1, 0, 1}.
  Matrix to_real() const;
  std::string to_string() const;
  bool operator==(const SignMatrix&) const = default;

  static SignMatrix of(const Matrix& m, double tol = 0.0);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Sign> data_;
};

enum class MixedEntryPolicy {
  Reject,           // throw SignPatternError
  ResolveNegative,  // report the entry and treat it as negative
};

/// Sign of every entry when all symbols are positive. Entries whose affine form
/// mixes positive and negative coefficients have no definite sign.
SignMatrix sign_pattern(const AffineMatrix& m, MixedEntryPolicy policy = MixedEntryPolicy::Reject,
                        std::vector<std::pair<int, int>>* mixed = nullptr);

/// Entrywise bounds of an affine matrix over a box of bounded domains.
struct IntervalMatrix {
  Matrix lower;
  Matrix upper;
  std::vector<std::pair<int, int>> lower_not_attained;  // bound sits on an open endpoint
  std::vector<std::pair<int, int>> upper_not_attained;
  std::vector<std::string> warnings;
};

IntervalMatrix interval_bounds(const AffineMatrix& m, const std::map<std::string, Domain>& domains);

/// JSON dump: species, S, blocks, A and b0 as constant + per-symbol coefficient matrices.
std::string canonical_dump(const StoichiometricDecomposition& dec, const CharacteristicModel& model);

}  // namespace ergocert::model
