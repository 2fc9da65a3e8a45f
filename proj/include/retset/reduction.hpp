#pragma once

// Orbit membership in a coset or in a translated F-orbit, reduced to
// equations between linear recurrence sequences.
//
// With Phi_0^l + c_{l-1} Phi_0^{l-1} + ... + c_0 = 0 and
// Q_n = sum_{i<n} Phi_0^i(y), every iterate splits as
//   Phi^n(alpha) = sum_{i=1}^{l} u_{i,n} Q_i + sum_{i=0}^{l-1} v_{i,n} Phi_0^i(alpha)
// for integer recurrences u_i, v_i that depend only on the c_i.

#include "retset/dynamics.hpp"
#include "retset/lrs.hpp"

#include <functional>

namespace retset {

struct GroupContext {
  SupportBasis* basis = nullptr;
  EncodedMap phi;
  PointRep alpha;
  CayleyRelation relation;
  std::vector<PointRep> phi0_alpha;  // Phi_0^i(alpha), 0 <= i < l
  std::vector<PointRep> q;           // Q_1 .. Q_l

  std::size_t dim() const { return alpha.dim(); }
};

GroupContext make_context(const MonomialAffineMap& phi, const TorusPoint& alpha, SupportBasis& basis);

struct OrbitSequences {
  std::vector<Lrs> u;  // u_1 .. u_l
  std::vector<Lrs> v;  // v_0 .. v_{l-1}
};

// Throws Error if the reconstruction identity fails for n <= 2l + 4.
OrbitSequences build_orbit_sequences(const GroupContext& ctx);
// sum u_{i,n} Q_i + sum v_{i,n} Phi_0^i(alpha)
PointRep reconstruct(const GroupContext& ctx, const OrbitSequences& seqs, const BigInt& n);

// Flattened coordinate j of Phi^n(alpha) as a sequence in n; widened to the
// current basis.
std::vector<Lrs> coordinate_sequences(const GroupContext& ctx, const OrbitSequences& seqs);

// {n : Phi^n(alpha) in R + H}
Solution solve_coset(const GroupContext& ctx, const OrbitSequences& seqs, const PointRep& R, const Subgroup& H,
                     const SearchBounds& bounds = {});

// Order of p^k acting on the torsion part of R2; always 1 over F_p(t)
// since p = 1 mod p - 1.
unsigned long torsion_period(const PointRep& R2, std::uint32_t p, unsigned long k);

// {n : Phi^n(alpha) = R1 + p^(k m) R2 for some m >= 0}
Solution solve_forbit(const GroupContext& ctx, const OrbitSequences& seqs, const PointRep& R1, const PointRep& R2,
                      unsigned long k, const SearchBounds& bounds = {});

struct ApHooks {
  std::function<bool(const BigInt&)> check;  // membership of Phi^n(alpha) in V
  BigInt horizon = 1000000;
  std::size_t samples = 20;
};

// When S contains an infinite progression, replaces S by the full
// progressions {a0 k + j} over the residues j of its members, a0 the least
// gap between members, after checking sampled members along each one.
Solution simplify_if_infinite_ap(const Solution& S, const ApHooks& hooks);

}  // namespace retset
