#include "subdyn/strand.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "subdyn/errors.hpp"
#include "subdyn/kernels/kernels.hpp"

namespace subdyn {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

std::vector<double> to_double(const AbelianVector& v) {
  return std::vector<double>(v.counts().begin(), v.counts().end());
}

double frobenius(const std::vector<double>& a) {
  double acc = 0;
  for (double x : a) acc += x * x;
  return std::sqrt(acc);
}

std::vector<double> square_mul(const std::vector<double>& a, const std::vector<double>& b, std::size_t n) {
  std::vector<double> c(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + k] * b[k * n + j];
    }
  }
  return c;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Column-major layout expected by kernels::max_projected_norm.
double max_projected(const std::vector<AbelianVector>& points, const InvariantSplitting& sp) {
  if (points.empty() || sp.dim < 2) return 0.0;
  const std::size_t count = points.size();
  std::vector<double> columns(sp.dim * count);
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t c = 0; c < sp.dim; ++c) columns[c * count + p] = static_cast<double>(points[p][c]);
  }
  return kernels::active_kernels().max_projected_norm(columns.data(), count, sp.dim,
                                                      sp.stable_coord_map.data(), sp.dim - 1);
}

}  // namespace

double InvariantSplitting::unstable_coord(const std::vector<double>& v) const { return dot(left, v); }

std::vector<double> InvariantSplitting::stable_coords(const std::vector<double>& v) const {
  std::vector<double> out(dim - 1, 0.0);
  for (std::size_t r = 0; r + 1 < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out[r] += stable_coord_map[r * dim + c] * v[c];
  }
  return out;
}

double InvariantSplitting::stable_norm(const std::vector<double>& v) const {
  const auto coords = stable_coords(v);
  return std::sqrt(dot(coords, coords));
}

InvariantSplitting invariant_splitting(const ClassificationReport& report, const IntMatrix& m,
                                       double tolerance) {
  if (!report.primitive() || !report.pisot_type) {
    throw UnsupportedInput("invariant splitting needs a primitive substitution");
  }
  if (*report.pisot_type == PisotVerdict::Indeterminate) {
    throw UnsupportedInput("Pisot verdict is indeterminate; splitting not supported");
  }
  if (!report.irreducible_pisot) {
    throw UnsupportedInput("invariant splitting needs an irreducible Pisot substitution");
  }
  if (report.char_poly.coefficient(0) == 0) {
    throw UnsupportedInput("abelianization matrix is singular");
  }
  const std::size_t n = m.size();
  InvariantSplitting sp;
  sp.dim = n;
  sp.tolerance = tolerance;

  const double inner_tol = std::min(tolerance, 1e-13);
  const PerronData right = perron_data(m, inner_tol);
  const PerronData left = perron_data(m.transpose(), inner_tol);
  sp.dilation = right.dilation;
  sp.unstable = right.vector;
  const double scale = dot(left.vector, right.vector);
  sp.left.resize(n);
  for (std::size_t i = 0; i < n; ++i) sp.left[i] = left.vector[i] / scale;

  sp.pr_u.assign(n * n, 0.0);
  sp.pr_s.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      sp.pr_u[i * n + j] = sp.unstable[i] * sp.left[j];
      sp.pr_s[i * n + j] = (i == j ? 1.0 : 0.0) - sp.pr_u[i * n + j];
    }
  }

  // E^s is the annihilator of the left Perron vector; Gram-Schmidt against it.
  std::vector<std::vector<double>> frame;
  {
    std::vector<double> u = left.vector;
    const double norm = std::sqrt(dot(u, u));
    for (double& x : u) x /= norm;
    frame.push_back(u);
  }
  for (std::size_t e = 0; e < n && frame.size() < n; ++e) {
    std::vector<double> v(n, 0.0);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& f : frame) {
        const double c = dot(v, f);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * f[i];
      }
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 1e-8) continue;
    for (double& x : v) x /= norm;
    frame.push_back(v);
  }
  sp.stable_basis.assign(frame.begin() + 1, frame.end());

  const std::size_t k = n - 1;
  sp.stable_coord_map.assign(k * n, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double acc = 0;
      for (std::size_t i = 0; i < n; ++i) acc += sp.stable_basis[r][i] * sp.pr_s[i * n + c];
      sp.stable_coord_map[r * n + c] = acc;
    }
  }
  sp.stable_action.assign(k * k, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      double acc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          acc += sp.stable_basis[r][i] * static_cast<double>(m(i, j)) * sp.stable_basis[c][j];
        }
      }
      sp.stable_action[r * k + c] = acc;
    }
  }

  std::vector<double> md(n * n);
  for (std::size_t i = 0; i < n * n; ++i) md[i] = static_cast<double>(m.data()[i]);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += md[i * n + j] * sp.unstable[j];
    sp.eigen_residual = std::max(sp.eigen_residual, std::abs(acc - sp.dilation * sp.unstable[i]));
  }
  sp.idempotence_residual = std::max(max_abs_diff(square_mul(sp.pr_u, sp.pr_u, n), sp.pr_u),
                                     max_abs_diff(square_mul(sp.pr_s, sp.pr_s, n), sp.pr_s));
  sp.invariance_residual = max_abs_diff(square_mul(sp.pr_s, md, n), square_mul(md, sp.pr_s, n));
  const double scale_tol = tolerance * std::max(1.0, sp.dilation);
  if (sp.eigen_residual > scale_tol || sp.idempotence_residual > tolerance ||
      sp.invariance_residual > scale_tol) {
    throw UnsupportedInput("numeric splitting did not reach the requested tolerance");
  }
  return sp;
}

AbelianVector Segment::terminal() const {
  AbelianVector t = origin;
  ++t[type];
  return t;
}

Word Strand::pattern() const {
  Word w;
  w.reserve(segments.size());
  for (const auto& s : segments) w.push_back(s.type);
  return w;
}

bool Strand::follows(WordView word) const {
  if (word.size() != segments.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (segments[i].type != word[i]) return false;
  }
  return connected();
}

bool Strand::connected() const {
  for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
    if (segments[i].terminal() != segments[i + 1].origin) return false;
  }
  return true;
}

std::vector<AbelianVector> Strand::vertices() const {
  std::vector<AbelianVector> out;
  out.reserve(segments.size() + 1);
  for (const auto& s : segments) out.push_back(s.origin);
  if (!segments.empty()) out.push_back(segments.back().terminal());
  return out;
}

Strand build_strand(WordView word, std::size_t dim) { return build_strand(word, AbelianVector(dim)); }

Strand build_strand(WordView word, const AbelianVector& origin) {
  Strand strand;
  strand.dim = origin.dim();
  AbelianVector vertex = origin;
  for (Letter l : word) {
    if (l >= strand.dim) throw InputError("word contains letters outside the alphabet");
    strand.segments.push_back({vertex, l});
    ++vertex[l];
  }
  return strand;
}

Strand substitute_strand(const Substitution& sub, const Strand& strand) {
  if (strand.dim != sub.size()) throw InputError("strand dimension does not match the alphabet");
  const IntMatrix m = abelianization_matrix(sub);
  Strand out;
  out.dim = strand.dim;
  for (const auto& seg : strand.segments) {
    AbelianVector vertex = m * seg.origin;
    for (Letter l : sub.image(seg.type)) {
      out.segments.push_back({vertex, l});
      ++vertex[l];
    }
  }
  return out;
}

double max_stable_norm(const Strand& strand, const InvariantSplitting& splitting) {
  return max_projected(strand.vertices(), splitting);
}

std::vector<RealSegment> to_real(const Strand& strand) {
  std::vector<RealSegment> out;
  out.reserve(strand.segments.size());
  for (const auto& s : strand.segments) out.push_back({to_double(s.origin), s.type});
  return out;
}

std::vector<RealSegment> substitute_real(const Substitution& sub, const IntMatrix& m,
                                         const std::vector<RealSegment>& strand) {
  const std::size_t n = m.size();
  std::vector<RealSegment> out;
  for (const auto& seg : strand) {
    std::vector<double> vertex(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) vertex[i] += static_cast<double>(m(i, j)) * seg.origin[j];
    }
    for (Letter l : sub.image(seg.type)) {
      out.push_back({vertex, l});
      vertex[l] += 1.0;
    }
  }
  return out;
}

double conjugation_defect(const Substitution& sub, const IntMatrix& m, const Strand& strand,
                          const InvariantSplitting& splitting, double t) {
  auto shifted = to_real(strand);
  for (auto& seg : shifted) {
    for (std::size_t i = 0; i < seg.origin.size(); ++i) seg.origin[i] -= t * splitting.unstable[i];
  }
  const auto lhs = substitute_real(sub, m, shifted);
  auto rhs = substitute_real(sub, m, to_real(strand));
  double worst = 0;
  for (std::size_t s = 0; s < rhs.size(); ++s) {
    if (lhs[s].type != rhs[s].type) return INFINITY;
    for (std::size_t i = 0; i < rhs[s].origin.size(); ++i) {
      const double expected = rhs[s].origin[i] - splitting.dilation * t * splitting.unstable[i];
      worst = std::max(worst, std::abs(lhs[s].origin[i] - expected));
    }
  }
  return worst;
}

namespace {

double cylinder_radius(const Substitution& sub, const InvariantSplitting& sp, double seed_norm) {
  const std::size_t k = sp.dim - 1;
  double prefix_bound = 0;
  for (std::size_t a = 0; a < sub.size(); ++a) {
    const Word& img = sub.image(static_cast<Letter>(a));
    AbelianVector acc(sp.dim);
    for (std::size_t j = 0; j + 1 < img.size(); ++j) {
      ++acc[img[j]];
      prefix_bound = std::max(prefix_bound, sp.stable_norm(to_double(acc)));
    }
  }
  // |A^0| = 1; later powers bounded by their Frobenius norm.
  double sup_power = 1.0, series = 1.0;
  std::vector<double> power = sp.stable_action;
  for (int j = 1; j < 100000; ++j) {
    const double norm = frobenius(power);
    sup_power = std::max(sup_power, norm);
    series += norm;
    if (norm < 1e-17) break;
    power = square_mul(power, sp.stable_action, k);
  }
  return sup_power * seed_norm + prefix_bound * series;
}

}  // namespace

StabilityScan stability_scan(const Substitution& sub, const Strand& seed, std::size_t iterations,
                             const InvariantSplitting& splitting, const StabilityOptions& options) {
  if (iterations == 0) throw InputError("iterations must be at least 1");
  if (seed.dim != splitting.dim || sub.size() != splitting.dim) {
    throw InputError("seed strand, substitution and splitting disagree on dimension");
  }
  const IntMatrix m = abelianization_matrix(sub);
  StabilityScan scan;
  scan.burn_in = options.burn_in;
  scan.seed_norm = max_stable_norm(seed, splitting);
  scan.cylinder_radius = cylinder_radius(sub, splitting, scan.seed_norm);

  Strand current = seed;
  for (std::size_t it = 0; it < iterations; ++it) {
    for (double t : options.conjugation_samples) {
      scan.conjugation_error = std::max(scan.conjugation_error, conjugation_defect(sub, m, current, splitting, t));
    }
    current = substitute_strand(sub, current);
    scan.envelope.push_back(max_stable_norm(current, splitting));
  }

  double reference = scan.seed_norm;
  for (std::size_t k = 0; k < std::min(options.burn_in, scan.envelope.size()); ++k) {
    reference = std::max(reference, scan.envelope[k]);
  }
  const double radius = std::max(reference, scan.cylinder_radius);
  scan.bounded = true;
  double running = reference;
  for (std::size_t k = options.burn_in; k < scan.envelope.size(); ++k) {
    scan.empirical_r0 = std::max(scan.empirical_r0, scan.envelope[k]);
    if (scan.envelope[k] > radius * (1 + 1e-12)) scan.bounded = false;
    if (scan.envelope[k] > running * (1 + 1e-12) && !scan.first_new_maximum) scan.first_new_maximum = k;
    running = std::max(running, scan.envelope[k]);
  }
  if (options.burn_in >= scan.envelope.size()) scan.empirical_r0 = reference;
  scan.last = std::move(current);
  return scan;
}

double max_stable_delta_norm(FixedPointStream& x, FixedPointStream& y, std::size_t horizon,
                             const InvariantSplitting& splitting) {
  if (x.substitution().alphabet() != y.substitution().alphabet() || x.alphabet_size() != splitting.dim) {
    throw InputError("points and splitting disagree on the alphabet");
  }
  const std::size_t n = splitting.dim;
  const Word xs = x.prefix(horizon);
  const Word ys = y.prefix(horizon);
  const auto& k = kernels::active_kernels();
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<double> columns;
  std::vector<std::int64_t> delta(n, 0);
  double best = 0;
  for (std::size_t base = 0; base < horizon; base += kChunk) {
    const std::size_t count = std::min(kChunk, horizon - base);
    columns.assign(n * count, 0.0);
    for (std::size_t p = 0; p < count; ++p) {
      for (std::size_t c = 0; c < n; ++c) columns[c * count + p] = static_cast<double>(delta[c]);
      ++delta[xs[base + p]];
      --delta[ys[base + p]];
    }
    best = std::max(best, k.max_projected_norm(columns.data(), count, n, splitting.stable_coord_map.data(), n - 1));
  }
  return best;
}

void write_strand_csv(std::ostream& out, const Alphabet& alphabet, const std::vector<Strand>& iterations,
                      const InvariantSplitting& splitting) {
  const std::size_t n = splitting.dim;
  out << "iteration,segment";
  for (std::size_t c = 0; c < n; ++c) out << ",v" << c;
  out << ",type,pr_u";
  for (std::size_t c = 0; c + 1 < n; ++c) out << ",s" << c;
  out << '\n';
  std::ostringstream row;
  row << std::setprecision(12);
  for (std::size_t it = 0; it < iterations.size(); ++it) {
    const auto& strand = iterations[it];
    for (std::size_t s = 0; s < strand.segments.size(); ++s) {
      const auto& seg = strand.segments[s];
      row.str("");
      row << it << ',' << s;
      for (std::size_t c = 0; c < n; ++c) row << ',' << seg.origin[c];
      const auto v = to_double(seg.origin);
      row << ',' << alphabet.symbol(seg.type) << ',' << splitting.unstable_coord(v);
      for (double sc : splitting.stable_coords(v)) row << ',' << sc;
      out << row.str() << '\n';
    }
  }
}

void write_stable_svg(std::ostream& out, const Strand& strand, const InvariantSplitting& splitting) {
  constexpr double kSize = 512, kMargin = 16;
  std::vector<std::pair<double, double>> pts;
  for (const auto& vertex : strand.vertices()) {
    const auto v = to_double(vertex);
    const auto s = splitting.stable_coords(v);
    if (s.size() >= 2) {
      pts.emplace_back(s[0], s[1]);
    } else {
      pts.emplace_back(splitting.unstable_coord(v), s.empty() ? 0.0 : s[0]);
    }
  }
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  if (!pts.empty()) {
    xmin = xmax = pts[0].first;
    ymin = ymax = pts[0].second;
    for (const auto& [px, py] : pts) {
      xmin = std::min(xmin, px);
      xmax = std::max(xmax, px);
      ymin = std::min(ymin, py);
      ymax = std::max(ymax, py);
    }
  }
  const double xspan = std::max(xmax - xmin, 1e-12), yspan = std::max(ymax - ymin, 1e-12);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 512 512\" width=\"512\" height=\"512\">\n";
  out << "<rect width=\"512\" height=\"512\" fill=\"white\"/>\n";
  out << std::fixed << std::setprecision(3);
  for (const auto& [px, py] : pts) {
    const double sx = kMargin + (px - xmin) / xspan * (kSize - 2 * kMargin);
    const double sy = kSize - kMargin - (py - ymin) / yspan * (kSize - 2 * kMargin);
    out << "<circle cx=\"" << sx << "\" cy=\"" << sy << "\" r=\"1.2\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
  out << std::defaultfloat;
}

}  // namespace subdyn
