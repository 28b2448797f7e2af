#pragma once

#include <string>
#include <vector>

#include "harmonic/analysis.hpp"
#include "harmonic/counting.hpp"

namespace harmonic {

/// One harmonic Newton update for f(z) = eta.
/// Throws SingularJacobian where J_f nearly vanishes.
Cx newton_step(const HarmonicMap& f, Cx z, Cx eta);

struct NewtonOptions {
  int max_iterations = 80;
  double tol = 1e-11;         // on |f(z) - eta|, relative to max(1, |eta|)
  double dedupe = 1e-7;       // relative to the critical radius
  int grid = 40;              // seeds per side over the critical box
  int ring = 16;              // seeds per ring
  int max_escalations = 3;
  int max_grid = 160;
  bool fold_seeds = true;     // add the two-point fold predictions near eta
  bool strict = true;         // throw CountMismatch instead of returning an uncertified list
};

struct NewtonRun {
  Cx z;
  bool converged = false;
  int iterations = 0;
  double residual = 0;
  std::vector<double> residuals;  // |f(z_k) - eta| for k = 0, 1, ...
};

/// Iterates from z0 until the residual drops below tol * max(1, |eta|), the
/// iterate leaves |z| < escape, a step exceeds max_step, or J vanishes.
NewtonRun newton_iterate(const HarmonicMap& f, Cx z0, Cx eta, const NewtonOptions& opt = {},
                         double escape = 1e300, double max_step = 1e300);

struct Preimage {
  Cx z;
  Sense sense = Sense::preserving;
  double residual = 0;
  int iterations = 0;
};

struct SolveReport {
  Cx eta;
  std::vector<Preimage> points;
  int expected = -1;  // formula count, -1 when eta is too close to a caustic
  bool certified = false;
  int escalations = 0;
  std::vector<std::string> warnings;
};

/// Multi-start harmonic Newton. The formula count certifies the result; on a
/// mismatch the seed grid is refined up to max_escalations times.
/// Throws CountMismatch (strict mode) when the counts still disagree.
SolveReport solve_preimages(const MapAnalysis& an, Cx eta, const NewtonOptions& opt = {});

struct FoldPrediction {
  Cx z0;
  double theta = 0;
  Cx c_dir;
  double delta = 0;
  Cx w_plus, w_minus;
  Cx eta_plus, eta_minus;  // f(z0) +- delta c_dir
};

/// Two-point prediction for the pre-images of f(z0) + delta c near a fold point z0.
/// Throws NotAFold, DegenerateA1, or InvalidInput when z0 is off the critical set.
FoldPrediction fold_predict(const HarmonicMap& f, Cx z0, double delta);

struct CuspPrediction {
  Cx z0;
  double theta = 0;
  Cx c_dir;    // the fold direction c at z0
  Cx c_tilde;
  double delta = 0;
  Cx w1;
  Cx eta;      // f(z0) + delta c_dir
};

/// Newton start near a cusp pre-image z0 for f(z0) + delta c.
/// Throws NotACusp, DegenerateA1, or DegenerateCtilde.
CuspPrediction cusp_predict(const HarmonicMap& f, Cx z0, double delta);

}  // namespace harmonic
