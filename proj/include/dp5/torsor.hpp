#pragma once

// Universal torsor parametrization: torsor points, the coprimality graph of
// the curve configuration, the map psi onto U(Q) and the real scaling frame.

#include <array>
#include <bitset>
#include <optional>
#include <utility>

#include "dp5/arith.hpp"
#include "dp5/surface.hpp"

namespace dp5 {

/// (eta1..eta4), the argument of the arithmetic densities.
struct EtaTuple {
  i64 e1 = 1;
  i64 e2 = 1;
  i64 e3 = 1;
  i64 e4 = 1;
  friend bool operator==(const EtaTuple&, const EtaTuple&) = default;
};

/// eta1..eta5 > 0, eta6 != 0, alpha1, alpha2 arbitrary integers.
struct TorsorPoint {
  i64 eta1 = 1;
  i64 eta2 = 1;
  i64 eta3 = 1;
  i64 eta4 = 1;
  i64 eta5 = 1;
  i64 eta6 = 1;
  i64 alpha1 = 0;
  i64 alpha2 = 0;

  EtaTuple eta() const { return {eta1, eta2, eta3, eta4}; }
  friend bool operator==(const TorsorPoint&, const TorsorPoint&) = default;
};

/// eta4 eta5^2 eta6 + eta1 alpha1 + eta2 alpha2 = 0
bool satisfies_torsor_equation(const TorsorPoint& t);

enum class Vertex : int { E1 = 0, E2, E3, E4, E5, E6, A1, A2 };
inline constexpr int kVertexCount = 8;

/// Which torsor variables are allowed to share a factor: two variables must be
/// coprime unless their vertices are joined by an edge.
class CoprimalityGraph {
 public:
  /// A1E1, A1E6, A1A2, E6E5, E5E4, E4E3, E1E3, A2E2, A2E6, E2E3.
  static const CoprimalityGraph& standard();

  bool adjacent(Vertex u, Vertex v) const;
  int edge_count() const;
  /// Copy with the edge u-v removed (used for fault injection).
  CoprimalityGraph without(Vertex u, Vertex v) const;

 private:
  CoprimalityGraph() = default;
  void connect(Vertex u, Vertex v, bool on);
  std::array<std::bitset<kVertexCount>, kVertexCount> adj_{};
};

/// Pairwise coprimality for every non-adjacent vertex pair.
bool coprimality_full(const TorsorPoint& t, const CoprimalityGraph& g = CoprimalityGraph::standard());

/// The reduced conditions valid on the torsor:
/// (alpha2, e3e5) = (alpha1, e3e4) = (e6, e1e2e3e4) = (e5, e1e2e3) = 1 and
/// (e1, e2) = (e1, e4) = (e2, e4) = 1.
bool coprimality_reduced(const TorsorPoint& t);

/// (e1,e2) = (e1,e4) = (e2,e4) = 1
bool eta_pairwise_coprime(const EtaTuple& e);

/// The six monomials of psi, without normalization or checks.
std::array<i128, 6> psi_coordinates(const TorsorPoint& t);

/// Image of t in U(Q). Throws std::logic_error if the coordinates are not
/// already coprime with x0 > 0, or if the image is not on S.
ProjectivePoint psi(const TorsorPoint& t);

struct EquivalenceReport {
  u64 solutions = 0;  // torsor-equation solutions on which both predicates were evaluated
  u64 mismatches = 0;
  std::optional<TorsorPoint> first_mismatch;
};

/// Compares coprimality_full(t, graph) with coprimality_reduced(t) on every
/// solution of the torsor equation with eta1..eta5 in [1, bound], eta6 and
/// alpha1, alpha2 in [-bound, bound], eta6 != 0. With prune_shared, subtrees
/// failing an eta-only coprimality condition that both predicates impose
/// (a reduced condition whose vertex pair is non-adjacent in graph) are
/// skipped, since both predicates are false there.
EquivalenceReport check_coprimality_equivalence(i64 bound,
                                                const CoprimalityGraph& graph = CoprimalityGraph::standard(),
                                                bool prune_shared = true);

/// Real rescaling frame attached to eta and B.
struct ScalingContext {
  double B = 1;
  EtaTuple eta;
  double Y0 = 1;
  double Y1 = 1;
  double Y5 = 1;
  double Y6 = 1;
};

ScalingContext scaling_context(const EtaTuple& eta, double B);

/// H(psi(t)) <= B, decided by exact integer comparison of all six |psi_i|.
bool height_equivalent(const TorsorPoint& t, i64 B);

/// h(Y0, alpha1/Y1, eta5/Y5, eta6/Y6) in floating point; equals
/// H(psi(t))/B up to rounding. Never used for counting decisions.
double scaled_height(const TorsorPoint& t, double B);

}  // namespace dp5
