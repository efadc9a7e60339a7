#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "rydeit/params.hpp"

namespace rydeit {

enum class Band { ground, rydberg, excited };

/// Occupation triple (n_g, n_r, n_e).
struct FockState {
  std::int64_t n_g = 0;
  std::int64_t n_r = 0;
  std::int64_t n_e = 0;

  std::int64_t total() const { return n_g + n_r + n_e; }
  std::int64_t& operator[](Band b);
  std::int64_t operator[](Band b) const;

  auto operator<=>(const FockState&) const = default;
};

/// All triples with n_g + n_r + n_e = m in descending lexicographic order of
/// (n_g, n_r, n_e): (m,0,0), (m-1,1,0), (m-1,0,1), (m-2,2,0), ... The position
/// of a triple is closed-form, so lookup needs no hash table.
class FockBasis {
 public:
  explicit FockBasis(std::int64_t m);

  std::int64_t m() const { return m_; }
  std::size_t size() const { return states_.size(); }
  const std::vector<FockState>& states() const { return states_; }
  const FockState& operator[](std::size_t i) const { return states_[i]; }

  /// Position of the state, or nullopt if it does not belong to this basis.
  std::optional<std::size_t> index(const FockState& s) const;

  static std::size_t dimension(std::int64_t m);

 private:
  std::int64_t m_;
  std::vector<FockState> states_;
};

FockBasis enumerate_basis(std::int64_t m);

struct Hop {
  FockState dst;
  double amplitude;
};

/// Moves one particle from `from` to `to`: a_to^dag a_from |src>.
/// Returns nullopt when the source band is empty.
std::optional<Hop> hopping_amplitude(const FockState& src, Band from, Band to);

/// Diagonal of the dressed Hamiltonian:
/// delta n_g + U/2 n_r (n_r - 1) - i Gamma_R n_r - i Gamma_e n_e.
Complex diagonal_energy(const FockState& state, const ModelParams& params);

}  // namespace rydeit
