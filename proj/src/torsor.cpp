#include "dp5/torsor.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "dp5/density.hpp"

namespace dp5 {

bool satisfies_torsor_equation(const TorsorPoint& t) {
  const i128 lhs = static_cast<i128>(t.eta4) * t.eta5 * t.eta5 * t.eta6 + static_cast<i128>(t.eta1) * t.alpha1 +
                   static_cast<i128>(t.eta2) * t.alpha2;
  return lhs == 0;
}

const CoprimalityGraph& CoprimalityGraph::standard() {
  static const CoprimalityGraph g = [] {
    CoprimalityGraph c;
    using V = Vertex;
    const std::pair<V, V> edges[] = {
        {V::A1, V::E1}, {V::A1, V::E6}, {V::A1, V::A2}, {V::E6, V::E5}, {V::E5, V::E4},
        {V::E4, V::E3}, {V::E1, V::E3}, {V::A2, V::E2}, {V::A2, V::E6}, {V::E2, V::E3},
    };
    for (const auto& [u, v] : edges) c.connect(u, v, true);
    return c;
  }();
  return g;
}

void CoprimalityGraph::connect(Vertex u, Vertex v, bool on) {
  const auto a = static_cast<std::size_t>(u);
  const auto b = static_cast<std::size_t>(v);
  if (a == b) throw std::invalid_argument("CoprimalityGraph: loops are not allowed");
  adj_[a][b] = on;
  adj_[b][a] = on;
}

bool CoprimalityGraph::adjacent(Vertex u, Vertex v) const {
  return adj_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
}

int CoprimalityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adj_) twice += row.count();
  return static_cast<int>(twice / 2);
}

CoprimalityGraph CoprimalityGraph::without(Vertex u, Vertex v) const {
  CoprimalityGraph copy = *this;
  copy.connect(u, v, false);
  return copy;
}

bool coprimality_full(const TorsorPoint& t, const CoprimalityGraph& g) {
  const std::array<i64, kVertexCount> value = {t.eta1, t.eta2, t.eta3, t.eta4, t.eta5, t.eta6, t.alpha1, t.alpha2};
  for (int u = 0; u < kVertexCount; ++u) {
    for (int v = u + 1; v < kVertexCount; ++v) {
      if (g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v))) continue;
      if (!coprime(value[u], value[v])) return false;
    }
  }
  return true;
}

bool eta_pairwise_coprime(const EtaTuple& e) {
  return coprime(e.e1, e.e2) && coprime(e.e1, e.e4) && coprime(e.e2, e.e4);
}

bool coprimality_reduced(const TorsorPoint& t) {
  return coprime(t.alpha2, t.eta3 * t.eta5) && coprime(t.alpha1, t.eta3 * t.eta4) &&
         coprime(t.eta6, t.eta1 * t.eta2 * t.eta3 * t.eta4) && coprime(t.eta5, t.eta1 * t.eta2 * t.eta3) &&
         eta_pairwise_coprime(t.eta());
}

std::array<i128, 6> psi_coordinates(const TorsorPoint& t) {
  const i128 e1 = t.eta1, e2 = t.eta2, e3 = t.eta3, e4 = t.eta4, e5 = t.eta5, e6 = t.eta6;
  const i128 a1 = t.alpha1, a2 = t.alpha2;
  return {
      e1 * e1 * e2 * e2 * e3 * e3 * e3 * e4 * e4 * e5,
      e1 * e1 * e2 * e3 * e3 * e4 * a1,
      e6 * a1 * a2,
      e1 * e3 * e4 * e5 * e6 * a1,
      e1 * e2 * e2 * e3 * e3 * e4 * a2,
      e2 * e3 * e4 * e5 * e6 * a2,
  };
}

ProjectivePoint psi(const TorsorPoint& t) {
  const auto wide = psi_coordinates(t);
  Coords x{};
  i64 g = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    if (wide[i] > INT64_MAX || wide[i] < -INT64_MAX) throw std::overflow_error("psi: coordinate exceeds 64 bits");
    x[i] = static_cast<i64>(wide[i]);
    g = std::gcd(g, x[i]);
  }
  if (g != 1 || x[0] <= 0) {
    std::ostringstream msg;
    msg << "psi: image coordinates are not normalized (gcd " << g << ")";
    throw std::logic_error(msg.str());
  }
  if (!is_on_surface(x)) throw std::logic_error("psi: image is not on the surface");
  return normalize(x);
}

EquivalenceReport check_coprimality_equivalence(i64 bound, const CoprimalityGraph& graph, bool prune_shared) {
  using V = Vertex;
  // A pair may prune only if the reduced conditions require it and the graph
  // does too.
  auto shared = [&](V u, V v) { return prune_shared && !graph.adjacent(u, v); };
  const bool p12 = shared(V::E1, V::E2), p14 = shared(V::E1, V::E4), p24 = shared(V::E2, V::E4);
  const bool p51 = shared(V::E5, V::E1), p52 = shared(V::E5, V::E2), p53 = shared(V::E5, V::E3);
  const bool p61 = shared(V::E6, V::E1), p62 = shared(V::E6, V::E2), p63 = shared(V::E6, V::E3),
             p64 = shared(V::E6, V::E4);
  auto fails = [](bool active, i64 a, i64 b) { return active && std::gcd(a, b) != 1; };

  EquivalenceReport rep;
  TorsorPoint t;
  for (i64 e1 = 1; e1 <= bound; ++e1) {
    for (i64 e2 = 1; e2 <= bound; ++e2) {
      if (fails(p12, e1, e2)) continue;
      // |e4 e5^2 e6| = |e1 a1 + e2 a2| <= bound (e1 + e2)
      const i64 reach = bound * (e1 + e2);
      for (i64 e4 = 1; e4 <= bound && e4 <= reach; ++e4) {
        if (fails(p14, e1, e4) || fails(p24, e2, e4)) continue;
        for (i64 e3 = 1; e3 <= bound; ++e3) {
          for (i64 e5 = 1; e5 <= bound && e4 * e5 * e5 <= reach; ++e5) {
            if (fails(p51, e5, e1) || fails(p52, e5, e2) || fails(p53, e5, e3)) continue;
            const i64 e6_max = std::min(bound, reach / (e4 * e5 * e5));
            for (i64 e6 = -e6_max; e6 <= e6_max; ++e6) {
              if (e6 == 0) continue;
              if (fails(p61, e6, e1) || fails(p62, e6, e2) || fails(p63, e6, e3) || fails(p64, e6, e4)) continue;
              const i64 p = e4 * e5 * e5 * e6;
              for (i64 a1 = -bound; a1 <= bound; ++a1) {
                const i64 num = p + e1 * a1;
                if (num % e2 != 0) continue;
                const i64 a2 = -num / e2;
                if (a2 < -bound || a2 > bound) continue;
                t = {e1, e2, e3, e4, e5, e6, a1, a2};
                ++rep.solutions;
                if (coprimality_full(t, graph) != coprimality_reduced(t)) {
                  ++rep.mismatches;
                  if (!rep.first_mismatch) rep.first_mismatch = t;
                }
              }
            }
          }
        }
      }
    }
  }
  return rep;
}

ScalingContext scaling_context(const EtaTuple& eta, double B) {
  const double e1 = static_cast<double>(eta.e1);
  const double e2 = static_cast<double>(eta.e2);
  const double e3 = static_cast<double>(eta.e3);
  const double e4 = static_cast<double>(eta.e4);
  ScalingContext c;
  c.B = B;
  c.eta = eta;
  c.Y0 = std::pow(e1 * e1 * e2 * e2 * e3 * e3 * e3 * e4 * e4 / B, 0.2);
  c.Y1 = std::pow(B * e2 * e2 * e2 * e3 * e3 * e4 * e4 * e4 / (e1 * e1), 0.2);
  c.Y5 = 1.0 / c.Y0;
  c.Y6 = std::pow(B * e1 * e1 * e1 * e2 * e2 * e2 * e3 * e3 / (e4 * e4), 0.2);
  return c;
}

bool height_equivalent(const TorsorPoint& t, i64 B) {
  const auto x = psi_coordinates(t);
  for (i128 c : x) {
    if (c > B || c < -static_cast<i128>(B)) return false;
  }
  return true;
}

double scaled_height(const TorsorPoint& t, double B) {
  const auto c = scaling_context(t.eta(), B);
  return h_max(c.Y0, static_cast<double>(t.alpha1) / c.Y1, static_cast<double>(t.eta5) / c.Y5,
               static_cast<double>(t.eta6) / c.Y6);
}

}  // namespace dp5
