#pragma once

#include <string>

#include "tcp/twisted.hpp"

namespace tcp {

/// Klein bottle: mapping torus of the circle reflection, as the TCP with
/// fiber circle4, structure group Z/2 acting by reflection, base the minimal
/// circle, and twist sending the base edge to the nontrivial residue.  (A
/// two-vertex circle admits no orientation-reversing simplicial involution:
/// its only free flip is the antipodal rotation, whose mapping torus is the
/// torus.)
inline Tcp klein_tcp() {
  SpacePtr F = circle4();
  GroupPtr G = kzm0(2);
  SpacePtr B = sphere(1);
  TwistingOperator tau{B, G, [](const Gen&, int n) -> Simplex {
                         return residue_simplex(1, n - 1);
                       }};
  return make_tcp("klein", F, G, reflection_action(), B, std::move(tau));
}

/// Torus: the same bundle shape with the trivial twist and the two-vertex
/// circle fiber carrying the flip action.
inline Tcp torus_tcp() {
  SpacePtr F = circle2();
  GroupPtr G = kzm0(2);
  SpacePtr B = sphere(1);
  TwistingOperator tau{B, G, [](const Gen&, int n) -> Simplex {
                         return residue_simplex(0, n - 1);
                       }};
  return make_tcp("torus", F, G, flip_action(), B, std::move(tau));
}

/// Hopf fibration S^1 -> S^3 -> S^2 with S^1 modelled as K(Z,1) and the
/// twist sending the 2-cell to [1].
inline Tcp hopf_tcp() {
  GroupPtr G = kz1();
  SpacePtr B = sphere(2);
  TwistingOperator tau{B, G, [](const Gen& g, int n) -> Simplex {
                         if (n == 2 && g == Gen::atom("sigma2"))
                           return kz1_simplex({1});
                         throw Error("hopf twist: unexpected simplex " +
                                     to_string(g));
                       }};
  return make_tcp("hopf", G->space, G, principal_action(G), B, std::move(tau));
}

/// Connected double cover of the circle: principal Z/2 bundle over K(Z,1)
/// classified by reduction mod 2 of the first bar entry.
inline Tcp double_cover_tcp() {
  GroupPtr G = kzm0(2);
  GroupPtr base_group = kz1();
  SpacePtr B = base_group->space;
  TwistingOperator tau{B, G, [](const Gen& g, int n) -> Simplex {
                         const auto& a = kz1_entries(g);
                         long long r = ((a.at(0) % 2) + 2) % 2;
                         return residue_simplex(r, n - 1);
                       }};
  return make_tcp("double-cover", G->space, G, principal_action(G), B,
                  std::move(tau));
}

}  // namespace tcp
