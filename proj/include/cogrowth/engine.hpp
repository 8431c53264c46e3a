#pragma once

// Coset-labelled words and the cogrowth engines. For a datum G >= H with
// cosets 1..d, the letter sigma(i, j) stands for generator x_i read while in
// coset j; its H-part and next coset come from the table. A word w over X
// maps to phi(w), which picks each letter's coset from the prefix before it,
// and mu forgets the coset again. Four independent ways to count words of R
// that evaluate to 1:
//
//   cogrowth_oracle      enumerate X-words of R and evaluate them
//   cogrowth_dp          layered count over (L_R state, reduced free word, Z^n vector)
//   theorem_a_pipeline   letter-count series g(x, z) of D_R, filtered by the
//                        solution set of the abelian system, and (at small
//                        lengths) the literal diagonal of g f_Z prod 1/(1 - x_j y_j)
//   theorem_b_pipeline   (m = 0) the same diagonal with g replaced by the
//                        N-rational series of L_R

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogrowth/automata.hpp"
#include "cogrowth/bigint.hpp"
#include "cogrowth/group_model.hpp"
#include "cogrowth/semilinear.hpp"
#include "cogrowth/series.hpp"

namespace cogrowth {

struct SigmaLetter {
  std::size_t generator = 0;
  Coset coset = 1;
  HElement h;
  Coset next = 1;
};

struct SigmaAlphabet {
  std::size_t cosets = 1;
  std::vector<SigmaLetter> letters;  // sigma_index order
  std::vector<std::size_t> mu;       // letter -> generator
  std::vector<std::string> names;

  std::size_t size() const noexcept { return letters.size(); }
};

/// Throws std::domain_error when a table cell is missing.
SigmaAlphabet sigma_alphabet(const GroupDatum& g);

/// Throws std::invalid_argument on a generator index out of range.
Word phi_encode(const GroupDatum& g, std::span<const std::size_t> w);
/// Throws std::invalid_argument on a letter out of range.
GenWord mu_decode(const SigmaAlphabet& sigma, std::span<const std::size_t> u);

/// Columns are the Z^n parts of the letters. With n = 0 the system is one
/// zero row, so every vector solves it.
DioSystem sigma_system(const SigmaAlphabet& sigma);

/// Accepts phi(w) for w in R with w in H. Throws std::invalid_argument when
/// R is not over the generator names of g.
Dfa l_r_automaton(const GroupDatum& g, const Dfa& language);

/// u is accepted by L_R and its free parts multiply to 1.
bool d_r_membership(const GroupDatum& g, const Dfa& language, std::span<const std::size_t> u);

struct CogrowthReport {
  std::string group_id;
  std::string language_id;
  std::string engine;
  std::vector<BigInt> coefficients;  // c_0..c_faithful
  std::size_t faithful_degree = 0;
};

/// Header `# group=.. language=.. engine=.. faithful=..` then `n<TAB>c_n` rows.
std::string format_report(const CogrowthReport& r);

struct EngineOptions {
  std::string language_id = "custom";
  /// Largest number of live configurations in one layer before giving up.
  std::size_t max_configurations = std::size_t{1} << 24;
  /// Discard configurations that cannot return to the identity in time.
  bool prune = true;
  /// Length up to which theorem_a_pipeline also forms the literal diagonal;
  /// chosen from the alphabet size when unset.
  std::optional<std::size_t> literal_degree;
};

/// Thrown when a layered engine exceeds EngineOptions::max_configurations.
struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

CogrowthReport cogrowth_oracle(const GroupDatum& g, const Dfa& language, std::size_t N,
                               const EngineOptions& options = {});
CogrowthReport cogrowth_dp(const GroupDatum& g, const Dfa& language, std::size_t N,
                           const EngineOptions& options = {});

/// Letter-count series of D_R over (sigma letters, z), exact for z-degree <= N.
TruncatedSeries d_r_series(const GroupDatum& g, const Dfa& language, std::size_t N,
                           const EngineOptions& options = {});

struct TheoremAPaths {
  std::vector<BigInt> filtered;  // 0..N
  std::vector<BigInt> literal;   // 0..literal degree
};

/// Both computations without comparing them.
TheoremAPaths theorem_a_paths(const GroupDatum& g, const Dfa& language, std::size_t N, std::size_t literal_degree,
                              const EngineOptions& options = {});

/// Coefficients from the filtered path. Throws std::logic_error when the
/// literal diagonal disagrees on its range.
CogrowthReport theorem_a_pipeline(const GroupDatum& g, const Dfa& language, std::size_t N,
                                  const EngineOptions& options = {});

/// Factors of the product diagonalized by theorem_b_pipeline, each evaluated
/// inside a box of side N.
struct TheoremBFactors {
  NRationalExpr language_expr;  // over (x, z)
  NRationalExpr solution_expr;  // over y
  TruncatedSeries language_series;
  TruncatedSeries solution_series;
  TruncatedSeries pair_series;  // 1/(1 - x y)
  SemilinearDecomposition decomposition;
};

/// Throws std::invalid_argument when m != 0.
TheoremBFactors theorem_b_factors(const GroupDatum& g, const Dfa& language, std::size_t N);

/// Throws std::invalid_argument when m != 0 and std::logic_error when an
/// intermediate coefficient is negative.
CogrowthReport theorem_b_pipeline(const GroupDatum& g, const Dfa& language, std::size_t N,
                                  const EngineOptions& options = {});

}  // namespace cogrowth
