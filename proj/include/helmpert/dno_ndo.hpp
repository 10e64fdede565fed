#pragma once

// Exterior Dirichlet-to-Neumann (N) and Neumann-to-Dirichlet (Lambda) maps, on the
// base curve and on the deformed curve pulled back node by node, with their
// first-order corrections in eps.

#include "helmpert/measure.hpp"
#include "helmpert/perturb.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace helmpert {

enum class MapKind { dno, ndo };

std::string_view to_string(MapKind kind);
MapKind parse_map_kind(std::string_view text);

struct BoundaryMapSample {
  BoundaryDensity input;  // f (dno) or g (ndo), on the base curve
  BoundaryDensity output; // N(f) or Lambda(g), on the base curve
  MapKind map_kind = MapKind::dno;
  bool perturbed = false;
  std::optional<PerturbationProfile> profile;
};

/// N_0(f): (-1/2 + K*) N_0 f = dD[f]/dnu. Needs k^2 off the interior Neumann spectrum.
BoundaryMapSample dno(const BoundaryCurve &curve, double k, const BoundaryDensity &f);
/// Lambda_0(g): (1/2 + K) Lambda_0 g = S g. Needs k^2 off the interior Dirichlet spectrum.
BoundaryMapSample ndo(const BoundaryCurve &curve, double k, const BoundaryDensity &g);

/// Solve on the deformed curve with data f (resp. g) at the image nodes, pull the result back.
BoundaryMapSample dno_perturbed(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                const BoundaryDensity &f);
BoundaryMapSample ndo_perturbed(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                const BoundaryDensity &g);

/// eps-coefficients: (-1/2 + K*)^{-1}(A1 f - K1 N_0 f) and (1/2 + K)^{-1}(S1 g - D1 Lambda_0 g).
/// The profile's epsilon is ignored.
Eigen::VectorXcd dno_first_order(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                 const BoundaryDensity &f);
Eigen::VectorXcd ndo_first_order(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                 const BoundaryDensity &g);

struct MapDefectRow {
  double epsilon = 0.0;
  double zeroth = 0.0; // ||M_eps - M_0||
  double first = 0.0;  // ||M_eps - M_0 - eps M_1||
};

struct MapDefectStudy {
  MapKind map_kind = MapKind::dno;
  std::vector<MapDefectRow> rows;
  double slope_zeroth = 0.0;
  double slope_first = 0.0;
};

/// L2 defects on the base curve for each eps (decreasing, at least 3 values).
MapDefectStudy map_defect_study(const BoundaryCurve &curve, double k, MapKind kind,
                                const PerturbationProfile &profile, const BoundaryDensity &data,
                                const std::vector<double> &epsilons);

/// epsilon, defect_zeroth, defect_first, slope_zeroth, slope_first
void write_defect_csv(std::ostream &os, const MapDefectStudy &study, const std::string &stamp);

/// int (N_eps(f) g - f N_0(g)) against eps int h (f_T g_T - kappa N_0 f g - N_0 f N_0 g - k^2 f g).
BracketResult dno_bracket_leading(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                  const BoundaryDensity &f, const BoundaryDensity &g);
/// int (f Lambda_0(g) - Lambda_eps(f) g) against
/// eps int h ((L_0 f)_T (L_0 g)_T - kappa f L_0 g - f g - k^2 L_0 f L_0 g).
BracketResult ndo_bracket_leading(const BoundaryCurve &curve, double k, const PerturbationProfile &profile,
                                  const BoundaryDensity &f, const BoundaryDensity &g);

/// Bracket residuals over several eps, in the measure-module table format.
OrderStudy map_bracket_study(const BoundaryCurve &curve, double k, MapKind kind, const PerturbationProfile &profile,
                             const BoundaryDensity &f, const BoundaryDensity &g, const std::vector<double> &epsilons);

} // namespace helmpert
