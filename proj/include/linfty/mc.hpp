#ifndef LINFTY_MC_HPP
#define LINFTY_MC_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linfty/linf.hpp"

namespace linfty {

/// Maurer-Cartan candidate: a degree-1 element of V (stored in V[1], where it
/// has degree 0) together with its decomposition by ideal-filtration weight.
struct MCElement {
  CLinfPtr host;
  MElement alpha;
  std::map<int, MElement> parts;  // filtration decomposition, weight -> component
};

/// Splits a module element by the ideal weight of its coefficient monomials.
std::map<int, MElement> filtration_parts(const MElement& x);

/// Coefficientwise base differential (the Leibniz part of the extended l_1).
MElement base_differential(const CurvedLinf& L, const MElement& x);

/// d_A(alpha) + l_0 + sum_{k>=1} l_k(alpha,...,alpha)/k!; requires alpha of
/// degree 1 in V (degree 0 in V[1]).
MElement mc_defect(const CurvedLinf& L, const MElement& alpha);
bool is_mc(const CurvedLinf& L, const MElement& alpha);

/// Linearization of the defect at `gamma`:
/// d_A(x) + sum_{j>=0} l_{j+1}(gamma^j, x)/j!.
MElement defect_linearization(const CurvedLinf& L, const MElement& gamma, const MElement& x);

/// Quadratic part: sum_{k>=2} l_k(gamma^{k-2}, u, v)/(k-2)!.
MElement defect_quadratic(const CurvedLinf& L, const MElement& gamma, const MElement& u,
                          const MElement& v);

/// The twisted differential on the associated graded of the ideal filtration,
/// determined by a weight-0 element solving the leading MC equation.
struct TwistData {
  CLinfPtr host;
  MElement a1;
  /// Applies the graded operator at the given filtration level (projects the
  /// full linearization back to the level).
  MElement apply(const MElement& x, int level) const;
};

TwistData twist_differential(const CLinfPtr& L, const MElement& a1);

/// Exact matrix of the twist at one filtration level between degree slices.
Mat twist_matrix(const TwistData& t, int level, const FlatBasis& src, const FlatBasis& dst);

/// Verifies that the twist squares to zero at the level, on the window.
bool twist_squares_to_zero(const TwistData& t, int level, int degree, const Window& w);

struct Obstruction {
  int level = 0;
  MElement cocycle;    // the defect component obstructing the lift
  MElement class_rep;  // representative of its class in H(partial); zero iff the class dies
  bool class_zero = false;
};

struct TowerResult {
  std::optional<MCElement> solution;
  std::optional<Obstruction> obstruction;
  std::vector<std::string> log;
};

/// Artinian induction over the ideal filtration: lifts the seed level by
/// level, solving the linear twist equation exactly; the lift at each level is
/// the canonical minimal-support solution.
TowerResult solve_tower(const CLinfPtr& L, const MElement& seed, const Window& w = Window());

struct GaugeResult {
  bool found = false;
  bool exhausted = false;
  std::string note;
  AlgebraPtr interval_base;
  LinfPtr interval_linf;
  MElement path;  // certificate when found
};

/// Searches for an MC element over base (x) Q[t, dt] restricting to alpha at
/// t = 0 and beta at t = 1, with polynomial t-degree at most tdeg_cap.
GaugeResult gauge_path(const CLinfPtr& L, const MElement& alpha, const MElement& beta,
                       int tdeg_cap = 4, const Window& w = Window());

/// Complete solvability decision for the full MC system on bases of
/// nilpotency order <= 2, by one global linear reduction.  Throws
/// UnsupportedError when the quadratic coupling on the level-1 kernel escapes
/// the linear-algebra-complete domain.
struct BruteForceResult {
  bool solvable = false;
  std::string note;
};

BruteForceResult mc_brute_force(const CLinfPtr& L, const MElement& seed,
                                const Window& w = Window());

}  // namespace linfty

#endif
