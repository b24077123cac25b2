#include "kazhdan/spectra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <string>

#include "closure.hpp"
#include "kazhdan/errors.hpp"
#include "kazhdan/random.hpp"

namespace kazhdan {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Distinct elements of a multiset with their multiplicities.
std::vector<std::pair<Element, std::size_t>> tally(std::span<const Element> s) {
  std::map<Element, std::size_t> counts;
  for (Element x : s) ++counts[x];
  return {counts.begin(), counts.end()};
}

void finish(SpectralReport& r) {
  r.beta = 1.0 - r.lambda2;
  r.avg_kazhdan = 2.0 * r.beta;
}

SpectralReport base_report(const CayleyOperator& op, SolverMethod method) {
  SpectralReport r;
  r.group = op.group().label();
  r.order = op.order();
  r.degree = op.degree();
  r.method = method;
  return r;
}

SpectralReport vacuous_report(const CayleyOperator& op, SolverMethod method) {
  auto r = base_report(op, method);
  r.vacuous = true;
  r.lambda2 = -1.0;
  finish(r);
  return r;
}

bool generates(const CayleyOperator& op) {
  return subgroup_generated(op.group(), op.raw_generators()).is_whole();
}

long default_max_iter(std::size_t order) {
  const double v = std::ceil(200.0 * std::log(static_cast<double>(std::max<std::size_t>(order, 2))));
  return std::max(200L, static_cast<long>(v));
}

struct TopPair {
  double value = 0.0;
  double residual = 0.0;
  long iterations = 0;
};

// Largest eigenvalue of M on an M-invariant subspace of dimension `dim`,
// given by an orthogonal projector `project`. Thick-restart Lanczos in
// Rayleigh-Ritz form: the basis grows by the projected residual of the top
// Ritz pair (so it spans a Krylov space) and restarts from the top `block`
// Ritz vectors. Every column is orthogonalized against the full basis.
template <class Project>
TopPair top_eigen_deflated(const CayleyOperator& op, std::size_t dim, Project project,
                           const IterativeOptions& opts) {
  const auto n = static_cast<Eigen::Index>(op.order());
  const auto keep = static_cast<Eigen::Index>(
      std::max<std::size_t>(1, std::min<std::size_t>(std::max(opts.block, 1), dim)));
  const auto width = static_cast<Eigen::Index>(std::min<std::size_t>(dim, std::max<std::size_t>(48, 4 * keep)));
  const long max_iter = opts.max_iter > 0 ? opts.max_iter : default_max_iter(op.order());
  Rng rng(opts.seed);

  MatrixXd v(n, width);
  MatrixXd mv(n, width);
  auto apply = [&](Eigen::Index j) {
    op.apply(std::span<const double>(v.col(j).data(), n), std::span<double>(mv.col(j).data(), n));
  };
  // Orthonormalizes column j against columns [0, j); refills it from rng on collapse.
  auto append = [&](Eigen::Index j) {
    for (int attempt = 0;; ++attempt) {
      VectorXd col = v.col(j);
      project(col);
      for (int pass = 0; pass < 2; ++pass) col -= v.leftCols(j) * (v.leftCols(j).transpose() * col);
      const double norm = col.norm();
      if (norm > 1e-10) {
        v.col(j) = col / norm;
        return;
      }
      if (attempt > 16) throw Error("deflated subspace is smaller than the iteration block");
      for (Eigen::Index i = 0; i < n; ++i) v(i, j) = 2.0 * rng.unit() - 1.0;
    }
  };

  Eigen::Index cols = 0;
  for (; cols < keep; ++cols) {
    for (Eigen::Index i = 0; i < n; ++i) v(i, cols) = 2.0 * rng.unit() - 1.0;
    append(cols);
    apply(cols);
  }

  double last_residual = std::numeric_limits<double>::infinity();
  for (long it = cols; it <= max_iter; ++it) {
    MatrixXd t = v.leftCols(cols).transpose() * mv.leftCols(cols);
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> ritz(t);
    const double theta = ritz.eigenvalues()(cols - 1);
    const VectorXd y = ritz.eigenvectors().col(cols - 1);
    VectorXd residual = mv.leftCols(cols) * y - theta * (v.leftCols(cols) * y);
    last_residual = residual.norm();
    if (last_residual <= opts.tol) return TopPair{theta, last_residual, it};
    if (it == max_iter) break;

    if (cols == width) {
      const MatrixXd top = ritz.eigenvectors().rightCols(keep);
      v.leftCols(keep) = (v.leftCols(cols) * top).eval();
      mv.leftCols(keep) = (mv.leftCols(cols) * top).eval();
      cols = keep;
    }
    v.col(cols) = residual;
    append(cols);
    apply(cols);
    ++cols;
  }
  throw ConvergenceError("Lanczos iteration did not reach tol " + std::to_string(opts.tol) + " in " +
                             std::to_string(max_iter) + " matrix-vector products (residual " +
                             std::to_string(last_residual) + ")",
                         last_residual, max_iter);
}

MatrixXd dense_operator(const CayleyOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.order());
  MatrixXd m = MatrixXd::Zero(n, n);
  const double w = 1.0 / static_cast<double>(op.degree());
  for (Eigen::Index g = 0; g < n; ++g) {
    for (std::size_t j = 0; j < op.degree(); ++j) m(g, op.neighbor(static_cast<Element>(g), j)) += w;
  }
  return m;
}

}  // namespace

CayleyOperator::CayleyOperator(FiniteGroup group, std::vector<Element> raw_generators)
    : group_(std::move(group)), raw_(std::move(raw_generators)) {
  if (raw_.empty()) throw InvalidArgument("generating multiset must be non-empty");
  for (Element s : raw_) {
    if (s >= group_.order()) throw InvalidArgument("generator " + std::to_string(s) + " out of range");
    if (s == group_.identity()) self_loops_ = true;
  }
  symmetric_ = raw_;
  for (Element s : raw_) symmetric_.push_back(group_.inv(s));
  const std::size_t d = symmetric_.size();
  neighbors_.resize(group_.order() * d);
  for (std::size_t g = 0; g < group_.order(); ++g) {
    for (std::size_t j = 0; j < d; ++j) {
      neighbors_[g * d + j] = group_.mul(static_cast<Element>(g), symmetric_[j]);
    }
  }
}

void CayleyOperator::apply(std::span<const double> in, std::span<double> out) const {
  const std::size_t d = degree();
  const double w = 1.0 / static_cast<double>(d);
  const Element* nb = neighbors_.data();
  for (std::size_t g = 0; g < order(); ++g, nb += d) {
    double acc = 0.0;
    for (std::size_t j = 0; j < d; ++j) acc += in[nb[j]];
    out[g] = acc * w;
  }
}

CayleyOperator build_cayley(const FiniteGroup& g, std::span<const Element> s) {
  return CayleyOperator(g, std::vector<Element>(s.begin(), s.end()));
}

std::string to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::characters: return "characters";
    case SolverMethod::dense: return "dense";
    case SolverMethod::iterative: return "iterative";
  }
  return "unknown";
}

AbelianDual::AbelianDual(const FiniteGroup& g) : order_(g.order()) {
  if (!g.is_abelian()) throw PreconditionError("character method needs an abelian group");
  // Generator chain: keep only generators that enlarge the subgroup.
  std::vector<Element> used;
  std::vector<char> mask;
  auto members = detail::close_under(g, used, mask);
  std::vector<std::vector<Element>> layers;
  for (Element s : g.generators()) {
    if (mask[s]) continue;
    std::uint64_t m = 1;
    Element y = s;
    while (!mask[y]) {
      y = g.mul(y, s);
      ++m;
    }
    chain_.push_back(Step{s, m, {}});
    exponent_ = std::lcm(exponent_, element_order(g, s));
    used.push_back(s);
    detail::extend_closure(g, used, members, mask);
  }
  if (members.size() != order_) throw Error("generator chain does not cover the group");

  const std::size_t r = chain_.size();
  coords_.assign(order_ * r, 0);
  std::vector<Element> current{g.identity()};
  std::vector<char> in_current(order_, 0);
  in_current[g.identity()] = 1;
  for (std::size_t i = 0; i < r; ++i) {
    Step& step = chain_[i];
    const Element gm = g.pow(step.generator, step.index);
    step.power_coords.assign(coords_.begin() + static_cast<std::ptrdiff_t>(gm * r),
                             coords_.begin() + static_cast<std::ptrdiff_t>(gm * r + r));
    const std::size_t prev = current.size();
    Element gt = g.identity();
    for (std::uint64_t t = 1; t < step.index; ++t) {
      gt = g.mul(gt, step.generator);
      for (std::size_t k = 0; k < prev; ++k) {
        const Element h = current[k];
        const Element x = g.mul(h, gt);
        std::copy_n(coords_.begin() + static_cast<std::ptrdiff_t>(h * r), r,
                    coords_.begin() + static_cast<std::ptrdiff_t>(x * r));
        coords_[x * r + i] = static_cast<std::uint32_t>(t);
        in_current[x] = 1;
        current.push_back(x);
      }
    }
  }
}

std::uint64_t AbelianDual::phase(std::span<const std::uint64_t> chi, Element x) const {
  const std::size_t r = rank();
  std::uint64_t acc = 0;
  for (std::size_t j = 0; j < r; ++j) acc += coords_[std::size_t{x} * r + j] * chi[j];
  return acc % exponent_;
}

SpectralReport abelian_gap_characters(const CayleyOperator& op) {
  return abelian_gap_characters(op, AbelianDual(op.group()));
}

SpectralReport abelian_gap_characters(const CayleyOperator& op, const AbelianDual& dual) {
  if (op.order() == 1) return vacuous_report(op, SolverMethod::characters);
  auto r = base_report(op, SolverMethod::characters);
  const auto counts = tally(op.generators());
  std::vector<double> cos_table(dual.exponent());
  for (std::size_t k = 0; k < cos_table.size(); ++k) {
    cos_table[k] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                            static_cast<double>(dual.exponent()));
  }
  double best = -std::numeric_limits<double>::infinity();
  dual.for_each_nontrivial([&](std::span<const std::uint64_t> chi) {
    double acc = 0.0;
    for (const auto& [s, c] : counts) acc += static_cast<double>(c) * cos_table[dual.phase(chi, s)];
    best = std::max(best, acc);
  });
  r.lambda2 = std::min(1.0, best / static_cast<double>(op.degree()));
  r.connected = generates(op);
  finish(r);
  return r;
}

SpectralReport gap_dense(const CayleyOperator& op, std::size_t dense_threshold) {
  if (op.order() > dense_threshold) {
    throw SizeGuardError("dense eigensolve limited to order " + std::to_string(dense_threshold) +
                         ", got " + std::to_string(op.order()));
  }
  if (op.order() == 1) return vacuous_report(op, SolverMethod::dense);
  auto r = base_report(op, SolverMethod::dense);
  const MatrixXd m = dense_operator(op);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  r.lambda2 = std::min(1.0, ev(ev.size() - 2));
  r.connected = generates(op);
  finish(r);
  return r;
}

SpectralReport gap_iterative(const CayleyOperator& op, const IterativeOptions& opts) {
  auto r = base_report(op, SolverMethod::iterative);
  r.tolerance = opts.tol;
  r.seed = opts.seed;
  if (op.order() == 1) {
    auto v = vacuous_report(op, SolverMethod::iterative);
    v.tolerance = opts.tol;
    v.seed = opts.seed;
    return v;
  }
  if (!generates(op)) {
    r.connected = false;
    r.lambda2 = 1.0;
    finish(r);
    return r;
  }
  auto remove_mean = [](VectorXd& v) { v.array() -= v.mean(); };
  const TopPair top = top_eigen_deflated(op, op.order() - 1, remove_mean, opts);
  r.lambda2 = std::min(1.0, top.value);
  r.iterations = top.iterations;
  r.residual = top.residual;
  finish(r);
  return r;
}

SpectralReport relative_gap_deflated(const CayleyOperator& op, const SubgroupHandle& n,
                                     const RelativeGapOptions& opts) {
  const FiniteGroup& g = op.group();
  if (n.parent().order() != g.order()) throw InvalidArgument("subgroup belongs to another group");
  const QuotientMap q = quotient_by_normal(g, n);  // throws when not normal
  const std::size_t cosets = q.target.order();
  const std::size_t dim = g.order() - cosets;
  const bool dense = g.order() <= opts.dense_threshold;
  const SolverMethod method = dense ? SolverMethod::dense : SolverMethod::iterative;
  if (dim == 0) return vacuous_report(op, method);

  auto r = base_report(op, method);
  r.connected = generates(op);
  const double inv_n = 1.0 / static_cast<double>(n.size());
  if (dense) {
    // M commutes with the coset-averaging projector P, so M - 3P keeps the
    // complement spectrum and pushes the lifted part below -1.
    MatrixXd m = dense_operator(op);
    for (std::size_t x = 0; x < g.order(); ++x) {
      const Element rep = q.lift(q.project(static_cast<Element>(x)));
      for (Element k : n.members()) {
        m(static_cast<Eigen::Index>(x), g.mul(rep, k)) -= 3.0 * inv_n;
      }
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
    r.lambda2 = std::min(1.0, es.eigenvalues()(es.eigenvalues().size() - 1));
  } else {
    const auto& proj = q.projection;
    std::vector<double> sums(cosets);
    auto remove_coset_means = [&](VectorXd& v) {
      std::fill(sums.begin(), sums.end(), 0.0);
      for (Eigen::Index x = 0; x < v.size(); ++x) sums[proj[x]] += v(x);
      for (Eigen::Index x = 0; x < v.size(); ++x) v(x) -= sums[proj[x]] * inv_n;
    };
    const TopPair top = top_eigen_deflated(op, dim, remove_coset_means, opts.iterative);
    r.lambda2 = std::min(1.0, top.value);
    r.iterations = top.iterations;
    r.residual = top.residual;
    r.tolerance = opts.iterative.tol;
    r.seed = opts.iterative.seed;
  }
  finish(r);
  return r;
}

double kazhdan_max_abelian(const CayleyOperator& op, std::span<const Element> raw) {
  return kazhdan_max_abelian(AbelianDual(op.group()), raw);
}

double kazhdan_max_abelian(const AbelianDual& dual, std::span<const Element> raw) {
  if (raw.empty()) throw InvalidArgument("generating multiset must be non-empty");
  const auto counts = tally(raw);
  const double e = static_cast<double>(dual.exponent());
  double best = std::numeric_limits<double>::infinity();
  dual.for_each_nontrivial([&](std::span<const std::uint64_t> chi) {
    double worst = 0.0;
    for (const auto& [s, c] : counts) {
      // |e^{i t} - 1| = 2 |sin(t / 2)|
      const double t = std::numbers::pi * static_cast<double>(dual.phase(chi, s)) / e;
      worst = std::max(worst, 2.0 * std::abs(std::sin(t)));
    }
    best = std::min(best, worst);
  });
  return best;
}

double average_kazhdan_definitional(const AbelianDual& dual, std::span<const Element> raw) {
  if (raw.empty()) throw InvalidArgument("generating multiset must be non-empty");
  const auto counts = tally(raw);
  const double e = static_cast<double>(dual.exponent());
  double best = std::numeric_limits<double>::infinity();
  dual.for_each_nontrivial([&](std::span<const std::uint64_t> chi) {
    double acc = 0.0;
    for (const auto& [s, c] : counts) {
      const double t = 2.0 * std::numbers::pi * static_cast<double>(dual.phase(chi, s)) / e;
      const std::complex<double> z(std::cos(t) - 1.0, std::sin(t));
      acc += static_cast<double>(c) * std::norm(z);
    }
    best = std::min(best, acc / static_cast<double>(raw.size()));
  });
  return best;
}

SpectralReport best_gap(const CayleyOperator& op, const SolverConfig& cfg) {
  if (op.group().is_abelian()) return abelian_gap_characters(op);
  if (op.order() <= cfg.dense_threshold) return gap_dense(op, cfg.dense_threshold);
  return gap_iterative(op, cfg.iterative);
}

}  // namespace kazhdan
