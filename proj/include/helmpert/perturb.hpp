#pragma once

// First-order shape derivatives of the layer potentials under x -> x + eps h nu:
//   S_eps ~ S + eps S1,   dS_eps/dnu|+- ~ dS/dnu|+- + eps K1,
//   D_eps|+- ~ D|+- + eps D1,   dD_eps/dnu ~ dD/dnu + eps A1.
// Built from assembled base operators, nodal multipliers and d/ds.
// kappa > 0 on convex curves (see geometry.hpp).

#include "helmpert/layerpot.hpp"

namespace helmpert {

/// Which one-sided trace realises the +-1/2 jump terms inside the formulas.
/// The jump contributions cancel, so both sides give the same operators.
enum class TraceSide { exterior, interior };

struct FirstOrderOperators {
  OperatorMatrix s1, k1, d1, a1;
};

FirstOrderOperators assemble_first_order(const BoundaryCurve &curve, const LayerOperators &base,
                                         const OperatorMatrix &hypersingular,
                                         const PerturbationProfile &profile,
                                         TraceSide side = TraceSide::exterior);

OperatorMatrix assemble_S1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side = TraceSide::exterior);
OperatorMatrix assemble_K1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side = TraceSide::exterior);
OperatorMatrix assemble_D1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side = TraceSide::exterior);
OperatorMatrix assemble_A1(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                           TraceSide side = TraceSide::exterior);

/// ||P_eps[phi] - P_0[phi] - eps P_1[phi]|| (trapezoid L2 on the base curve) for each
/// of the four expansions, with P_eps assembled on the deformed curve and phi carried
/// over node by node.
struct ExpansionDefects {
  double single = 0.0, normal_single = 0.0, double_layer = 0.0, normal_double = 0.0;
};

ExpansionDefects expansion_defects(const BoundaryCurve &curve, double k,
                                   const PerturbationProfile &profile, const Eigen::VectorXcd &phi);

} // namespace helmpert
