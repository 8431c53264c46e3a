#pragma once

// Finite descriptions of groups G that contain H = Z^n x F_m as a finite-index
// normal subgroup. A GroupDatum fixes a generating set X, right coset
// representatives t_1 = 1, ..., t_d, and for every pair (generator x_i, coset
// t_j) the element h in H with t_j x_i = h t_k together with the coset k.
// Reading a word left to right through this table factors its value as a
// product of H-elements followed by a coset representative.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cogrowth {

/// Letter of F_m: +k stands for s_k and -k for s_k^-1 (k >= 1).
using FreeLetter = std::int32_t;

/// Freely reduced word over s_1..s_m.
class FreeWord {
 public:
  FreeWord() = default;

  /// Freely reduces `letters`. Throws std::invalid_argument on a zero letter.
  static FreeWord reduce(std::vector<FreeLetter> letters);
  static FreeWord generator(FreeLetter letter);

  const std::vector<FreeLetter>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Largest generator index used (0 for the empty word).
  FreeLetter max_generator() const noexcept;

  /// Right multiplication by one letter, cancelling if it meets its inverse.
  void push_back(FreeLetter letter);
  FreeWord inverse() const;

  /// `s2s1^-1` style; empty string for the identity.
  std::string to_string() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord&, const FreeWord&) = default;

 private:
  std::vector<FreeLetter> letters_;
};

FreeWord operator*(const FreeWord& a, const FreeWord& b);

/// Parses `s2s1^-1` (optionally comma separated). Empty text is the identity.
FreeWord parse_free_word(std::string_view text);

/// Element of Z^n x F_m.
struct HElement {
  std::vector<std::int64_t> abelian;
  FreeWord free;

  static HElement identity(std::size_t n) { return {std::vector<std::int64_t>(n, 0), {}}; }
  bool is_identity() const noexcept;
  std::string to_string() const;

  friend bool operator==(const HElement&, const HElement&) = default;
  friend auto operator<=>(const HElement&, const HElement&) = default;
};

/// Throws std::invalid_argument when the abelian ranks differ.
HElement h_mul(const HElement& a, const HElement& b);
HElement h_inverse(const HElement& a);

/// 1-based coset index; coset 1 is H itself.
using Coset = std::uint32_t;

struct CocycleCell {
  HElement h;
  Coset next = 1;

  friend bool operator==(const CocycleCell&, const CocycleCell&) = default;
};

/// Word over the generating set X as 0-based generator indices.
using GenWord = std::vector<std::size_t>;

class GroupDatum {
 public:
  /// `table[i][j-1]` is the cell for generator i and coset j; cells may be
  /// missing, which validate() reports. Structural errors (bad ranks, coset
  /// out of range, malformed involution) throw std::invalid_argument.
  GroupDatum(std::string id, std::size_t n, std::size_t m, std::vector<std::string> generators,
             std::vector<std::optional<std::size_t>> involution, std::size_t d,
             std::vector<std::vector<std::optional<CocycleCell>>> table,
             std::vector<GenWord> relators);

  const std::string& id() const noexcept { return id_; }
  std::size_t abelian_rank() const noexcept { return n_; }
  std::size_t free_rank() const noexcept { return m_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  std::size_t coset_count() const noexcept { return d_; }

  const std::string& generator_name(std::size_t i) const { return generators_.at(i); }
  const std::vector<std::string>& generator_names() const noexcept { return generators_; }
  std::optional<std::size_t> involution(std::size_t i) const { return involution_.at(i); }
  bool has_full_involution() const noexcept;

  /// Throws std::domain_error when the cell is undefined.
  const CocycleCell& cell(std::size_t generator, Coset coset) const;
  const std::optional<CocycleCell>& cell_if(std::size_t generator, Coset coset) const;

  const std::vector<GenWord>& relators() const noexcept { return relators_; }

  std::optional<std::size_t> find_generator(std::string_view name) const;
  /// Space-separated generator names. Throws std::invalid_argument on an unknown letter.
  GenWord parse_word(std::string_view text) const;
  std::string format_word(std::span<const std::size_t> word) const;

  GroupDatum with_id(std::string id) const;

 private:
  std::string id_;
  std::size_t n_;
  std::size_t m_;
  std::vector<std::string> generators_;
  std::vector<std::optional<std::size_t>> involution_;
  std::size_t d_;
  std::vector<std::vector<std::optional<CocycleCell>>> table_;
  std::vector<GenWord> relators_;
};

/// H-part and coset reached after reading a prefix.
struct EvalState {
  HElement h;
  Coset coset = 1;

  bool is_identity() const noexcept { return coset == 1 && h.is_identity(); }
  friend bool operator==(const EvalState&, const EvalState&) = default;
};

EvalState initial_state(const GroupDatum& g);
/// Continues `state` through `word`.
EvalState evaluate_from(const GroupDatum& g, EvalState state, std::span<const std::size_t> word);
EvalState evaluate(const GroupDatum& g, std::span<const std::size_t> word);
bool is_trivial(const GroupDatum& g, std::span<const std::size_t> word);

struct ValidationIssue {
  std::string check;
  std::string message;
  std::string witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> errors;
  std::vector<std::string> warnings;

  bool ok() const noexcept { return errors.empty(); }
  std::string to_string() const;
};

/// Checks relators, involution pairs, table totality and coset reachability.
/// These are necessary conditions only.
ValidationReport validate(const GroupDatum& g);

// Built-in data. Generators come in inverse pairs `x`, `x^-1`.

/// Z^n on generators a, b, c, ... with H = G.
GroupDatum free_abelian(std::size_t n);
/// F_m on generators a, b, c, ... with H = G.
GroupDatum free_group(std::size_t m);
/// BS(N,N) = <a, t | t a^N t^-1 = a^N> with H = <a^N> x <t, a t a^-1, ..., a^{N-1} t a^{1-N}>
/// and cosets 1, a, ..., a^{N-1}.
GroupDatum bs_group(std::size_t N);
/// Z/2 * Z/2 on r, r^-1, s with H = <r> and cosets 1, s.
GroupDatum dihedral_infinite();

}  // namespace cogrowth
