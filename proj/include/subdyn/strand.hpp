#pragma once

// Strands: chains of unit lattice segments whose types spell a word, the
// inflation map induced by a substitution, and projections onto the
// expanding/contracting eigenspaces of the abelianization matrix.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "subdyn/spectral.hpp"
#include "subdyn/word.hpp"

namespace subdyn {

// R^n = E^u (+) E^s for an irreducible Pisot substitution.
//
// pr^u v = (left . v) w with M w = lambda w, left^T M = lambda left^T,
// left . w = 1; pr^s = I - pr^u. stable_basis is an orthonormal basis of E^s,
// so stable_coords(v) = B^T pr^s v and |stable_coords(v)| = |pr^s v|.
struct InvariantSplitting {
  std::size_t dim = 0;
  double dilation = 0;
  std::vector<double> unstable;                   // w, unit norm, positive
  std::vector<double> left;                       // scaled so left . w = 1
  std::vector<std::vector<double>> stable_basis;  // dim - 1 vectors
  std::vector<double> pr_u;                       // dim x dim, row-major
  std::vector<double> pr_s;
  std::vector<double> stable_coord_map;  // (dim-1) x dim: B^T pr^s
  std::vector<double> stable_action;     // (dim-1) x (dim-1): B^T M B
  // max-abs residuals of the defining identities
  double eigen_residual = 0;       // |M w - lambda w|
  double idempotence_residual = 0; // max(|pr_u^2 - pr_u|, |pr_s^2 - pr_s|)
  double invariance_residual = 0;  // |pr_s M - M pr_s|
  double tolerance = 0;

  double unstable_coord(const std::vector<double>& v) const;
  std::vector<double> stable_coords(const std::vector<double>& v) const;
  double stable_norm(const std::vector<double>& v) const;
};

// Throws UnsupportedInput unless the report is primitive and irreducible
// Pisot with an invertible matrix.
InvariantSplitting invariant_splitting(const ClassificationReport& report, const IntMatrix& m,
                                       double tolerance = 1e-9);

struct Segment {
  AbelianVector origin;  // initial vertex; terminal vertex is origin + e_type
  Letter type;
  bool operator==(const Segment&) const = default;
  AbelianVector terminal() const;
};

struct Strand {
  std::size_t dim = 0;
  std::vector<Segment> segments;

  Word pattern() const;
  bool follows(WordView word) const;
  // Terminal vertex of segment j equals the initial vertex of segment j+1.
  bool connected() const;
  // Initial vertices of all segments plus the terminal vertex of the last.
  std::vector<AbelianVector> vertices() const;
};

Strand build_strand(WordView word, std::size_t dim);
Strand build_strand(WordView word, const AbelianVector& origin);

// Each segment (v, i) becomes the chain M v + ab(tau(i)_<j), type tau(i)_j.
Strand substitute_strand(const Substitution& sub, const Strand& strand);

// max |pr^s v| over the strand's vertices.
double max_stable_norm(const Strand& strand, const InvariantSplitting& splitting);

// Real-valued strand vertices, for the translation identity
// Sigma(S - t w) = Sigma(S) - lambda t w.
struct RealSegment {
  std::vector<double> origin;
  Letter type;
};
std::vector<RealSegment> to_real(const Strand& strand);
std::vector<RealSegment> substitute_real(const Substitution& sub, const IntMatrix& m,
                                         const std::vector<RealSegment>& strand);
// max-abs deviation between Sigma(S - t w) and Sigma(S) - lambda t w.
double conjugation_defect(const Substitution& sub, const IntMatrix& m, const Strand& strand,
                          const InvariantSplitting& splitting, double t);

struct StabilityOptions {
  std::size_t burn_in = 3;
  std::vector<double> conjugation_samples{-2.5, -1.0, -0.125, 0.3, 1.0, 3.75};
};

struct StabilityScan {
  // envelope[k] = max |pr^s v| over Sigma^(k+1)(seed), k = 0..iterations-1.
  std::vector<double> envelope;
  double seed_norm = 0;
  std::size_t burn_in = 0;
  // Max of the envelope after burn-in (empirical R_0).
  double empirical_r0 = 0;
  // sup_k |A^k| |pr^s seed| + c sum_k |A^k| with A the action of M on E^s and
  // c the largest stable norm of a proper-prefix abelianization: every
  // iterate stays within this radius.
  double cylinder_radius = 0;
  // No envelope value after burn-in exceeds max(envelope at burn-in, cylinder radius).
  bool bounded = false;
  // First iteration index k >= burn_in whose envelope value exceeds every
  // earlier one (seed included), if any.
  std::optional<std::size_t> first_new_maximum;
  double conjugation_error = 0;
  Strand last;
};

StabilityScan stability_scan(const Substitution& sub, const Strand& seed, std::size_t iterations,
                             const InvariantSplitting& splitting, const StabilityOptions& options = {});

// max over k < horizon of |pr^s Delta_k| for two periodic points.
double max_stable_delta_norm(FixedPointStream& x, FixedPointStream& y, std::size_t horizon,
                             const InvariantSplitting& splitting);

// One row per segment: iteration, vertex coordinates, type, pr^u scalar,
// pr^s coordinates.
void write_strand_csv(std::ostream& out, const Alphabet& alphabet, const std::vector<Strand>& iterations,
                      const InvariantSplitting& splitting);

// Scatter of the first two stable coordinates of every vertex (or the single
// stable coordinate against the unstable one when E^s is a line), fixed
// viewBox, deterministic.
void write_stable_svg(std::ostream& out, const Strand& strand, const InvariantSplitting& splitting);

}  // namespace subdyn
