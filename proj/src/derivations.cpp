#include "sdlab/derivations.hpp"

#include "sdlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace sdlab {

namespace {

// The solver materializes a Gram matrix of size (D N^2)^2 (doubled when
// star-constrained); this bound keeps that comfortably in memory and time.
constexpr Index kDeskScaleLimit = 5000;

double triple_scale(const SuperMap& a, const SuperMap& b, const SuperMap& c) {
  return std::max({map_scale(a), map_scale(b), map_scale(c)});
}

DerivationCheck pair_residual_core(const SuperMap& d, const SuperMap& sigma,
                                   const SuperMap& tau, const Tolerances& tol) {
  require_same_domain(d, sigma, "sigma_tau_residual");
  require_same_domain(d, tau, "sigma_tau_residual");
  DerivationCheck out;
  out.scale = triple_scale(d, sigma, tau);
  out.worst = {0, 0, Index(-1)};
  const Index dim = d.dim();
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      const Matrix r = d.image_of_product(i, j) -
                       d.image(i) * sigma.image(j) - tau.image(i) * d.image(j);
      const double rn = spectral_norm(r);
      if (rn > out.residual) {
        out.residual = rn;
        out.worst = {i, j, Index(-1)};
      }
    }
  out.passed = out.residual <= tol.identity_tol * out.scale;
  return out;
}

// One additive term of a Leibniz constraint row-block, acting on the
// unknown block `col` as sign * (P kron Q) under column-major vec
// (vec(AXB) = (B^T kron A) vec(X)).
struct KronTerm {
  Index col;
  Matrix p;
  Matrix q;
  double sign;
};

void terms_for_pair(const StarAlgebra& alg, const SuperMap& sigma,
                    const SuperMap& tau, Index i, Index j,
                    std::vector<KronTerm>& terms) {
  const Index n = alg.space_dim();
  terms.clear();
  const auto prod = alg.unit_product(i, j);
  if (prod.nonzero)
    terms.push_back({prod.k, Matrix::Identity(n, n), Matrix::Identity(n, n),
                     1.0});
  terms.push_back(
      {i, sigma.image(j).transpose(), Matrix::Identity(n, n), -1.0});
  terms.push_back({j, Matrix::Identity(n, n), tau.image(i), -1.0});
}

// G.block(bp, bq) += coeff * (P kron Q), blocks of size n^2.
void accumulate_kron(Matrix& g, Index bp, Index bq, const Matrix& p,
                     const Matrix& q, double coeff) {
  const Index n = p.rows();
  const Index n2 = n * n;
  auto block = g.block(bp * n2, bq * n2, n2, n2);
  for (Index pr = 0; pr < n; ++pr)
    for (Index pc = 0; pc < n; ++pc) {
      const Complex w = coeff * p(pr, pc);
      if (w == Complex(0.0, 0.0)) continue;
      block.block(pr * n, pc * n, n, n) += w * q;
    }
}

// Gram matrix K^H K of the (sigma,tau) Leibniz system, assembled blockwise
// from the Kronecker structure without forming K.
Matrix leibniz_gram(const SuperMap& sigma, const SuperMap& tau) {
  const StarAlgebra& alg = sigma.domain();
  const Index n2 = alg.space_dim() * alg.space_dim();
  const Index cols = alg.dim() * n2;
  Matrix g = Matrix::Zero(cols, cols);
  std::vector<KronTerm> terms;
  for (Index i = 0; i < alg.dim(); ++i)
    for (Index j = 0; j < alg.dim(); ++j) {
      terms_for_pair(alg, sigma, tau, i, j, terms);
      for (const KronTerm& s : terms)
        for (const KronTerm& t : terms)
          accumulate_kron(g, s.col, t.col, s.p.adjoint() * t.p,
                          s.q.adjoint() * t.q, s.sign * t.sign);
    }
  return g;
}

// Exact evaluation of the Leibniz defect of the map with stacked image
// vector z; row-block order matches leibniz_gram's pair order.
CVector defect_stack(const SuperMap& sigma, const SuperMap& tau,
                     const CVector& z) {
  const StarAlgebra& alg = sigma.domain();
  const Index n = alg.space_dim();
  const Index n2 = n * n;
  const Index dim = alg.dim();
  std::vector<Matrix> images(dim);
  for (Index k = 0; k < dim; ++k)
    images[k] = unvectorize(z.segment(k * n2, n2), n);
  CVector out(dim * dim * n2);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) {
      const auto prod = alg.unit_product(i, j);
      Matrix r = -images[i] * sigma.image(j) - tau.image(i) * images[j];
      if (prod.nonzero) r += images[prod.k];
      out.segment((i * dim + j) * n2, n2) = vectorize(r);
    }
  return out;
}

// One scalar row of the realified *-constraint d(A*) = d(A)*:
// w(idx1)*w1 + w(idx2)*w2 = 0 on the stacked (Re, Im) unknown vector.
struct StarRow {
  Index idx1;
  double w1;
  Index idx2;  // -1 when the row has a single entry
  double w2;
};

std::vector<StarRow> star_rows(const StarAlgebra& alg) {
  const Index n = alg.space_dim();
  const Index n2 = n * n;
  const Index half = alg.dim() * n2;
  std::vector<StarRow> rows;
  for (Index k = 0; k < alg.dim(); ++k) {
    const Index ks = alg.star_index(k);
    for (Index c = 0; c < n; ++c)
      for (Index r = 0; r < n; ++r) {
        const Index lhs = ks * n2 + c * n + r;  // entry (r,c) of image ks
        const Index rhs = k * n2 + r * n + c;   // entry (c,r) of image k
        // Re: u_ks(r,c) - u_k(c,r) = 0; identically zero when lhs == rhs.
        if (lhs != rhs) rows.push_back({lhs, 1.0, rhs, -1.0});
        // Im: v_ks(r,c) + v_k(c,r) = 0; collapses to 2v on the diagonal.
        if (lhs == rhs)
          rows.push_back({half + lhs, 2.0, Index(-1), 0.0});
        else
          rows.push_back({half + lhs, 1.0, half + rhs, 1.0});
      }
  }
  return rows;
}

struct SolveProblem {
  // Real-symmetric (or realified Hermitian) Gram matrix of the full system.
  RMatrix gram;
  Index rows = 0;  // scalar row count of the underlying system
};

double eval_star_row(const StarRow& row, const RVector& w) {
  double v = row.w1 * w(row.idx1);
  if (row.idx2 >= 0) v += row.w2 * w(row.idx2);
  return v;
}

std::vector<SuperMap> basis_from_columns(const StarAlgebra& alg,
                                         const Matrix& cols) {
  std::vector<SuperMap> out;
  const Index n = alg.space_dim();
  const Index n2 = n * n;
  for (Index c = 0; c < cols.cols(); ++c) {
    std::vector<Matrix> images;
    images.reserve(alg.dim());
    for (Index k = 0; k < alg.dim(); ++k)
      images.push_back(unvectorize(cols.col(c).segment(k * n2, n2), n));
    out.push_back(supermap_from_images(alg, std::move(images)));
  }
  return out;
}

}  // namespace

DerivationCheck sigma_tau_residual(const SuperMap& d, const SuperMap& sigma,
                                   const SuperMap& tau, const Tolerances& tol) {
  return pair_residual_core(d, sigma, tau, tol);
}

DerivationCheck leibniz_residual(const SuperMap& d, const SuperMap& sigma,
                                 const Tolerances& tol) {
  return pair_residual_core(d, sigma, sigma, tol);
}

SuperMap inner_derivation(const SuperMap& sigma, const SuperMap& tau,
                          const Matrix& x) {
  require_same_domain(sigma, tau, "inner_derivation");
  const Index n = sigma.space_dim();
  if (x.rows() != n || x.cols() != n)
    throw shape_error("inner_derivation: x is not " + std::to_string(n) + "x" +
                      std::to_string(n));
  std::vector<Matrix> images;
  images.reserve(sigma.dim());
  for (Index k = 0; k < sigma.dim(); ++k)
    images.push_back(x * sigma.image(k) - tau.image(k) * x);
  return supermap_from_images(sigma.domain(), std::move(images));
}

std::vector<SuperMap> derivation_space(const SuperMap& sigma,
                                       const SuperMap& tau,
                                       bool star_constrained,
                                       const Tolerances& tol) {
  require_same_domain(sigma, tau, "derivation_space");
  tol.validate();
  const StarAlgebra& alg = sigma.domain();
  const Index n = alg.space_dim();
  const Index n2 = n * n;
  const Index dim = alg.dim();
  const Index cols_c = dim * n2;  // complex unknowns
  if (cols_c > kDeskScaleLimit)
    throw spec_error("derivation_space: D*N^2 = " + std::to_string(cols_c) +
                     " exceeds the desk-scale limit " +
                     std::to_string(kDeskScaleLimit));

  const Matrix gc = leibniz_gram(sigma, tau);
  const Index pair_rows = dim * dim * n2;

  // Realify when star-constrained; otherwise solve the complex system.
  RMatrix gr;
  std::vector<StarRow> srows;
  Index rows = pair_rows;
  Index cols = cols_c;
  if (star_constrained) {
    cols = 2 * cols_c;
    gr.setZero(cols, cols);
    gr.topLeftCorner(cols_c, cols_c) = gc.real();
    gr.bottomRightCorner(cols_c, cols_c) = gc.real();
    gr.topRightCorner(cols_c, cols_c) = -gc.imag();
    gr.bottomLeftCorner(cols_c, cols_c) = gc.imag();
    srows = star_rows(alg);
    for (const StarRow& row : srows) {
      gr(row.idx1, row.idx1) += row.w1 * row.w1;
      if (row.idx2 >= 0) {
        gr(row.idx2, row.idx2) += row.w2 * row.w2;
        gr(row.idx1, row.idx2) += row.w1 * row.w2;
        gr(row.idx2, row.idx1) += row.w1 * row.w2;
      }
    }
    rows = 2 * pair_rows + static_cast<Index>(srows.size());
  }

  // Stage 1: loose prefilter on the Gram spectrum.  Eigenvalues are squared
  // singular values, so rounding floor ~eps*smax^2 maps to ~3e-8*smax on the
  // singular-value scale; the 1e-6 margin keeps every true null direction.
  RVector eigs;
  RMatrix evecs_r;
  Matrix evecs_c;
  if (star_constrained) {
    Eigen::SelfAdjointEigenSolver<RMatrix> es(gr);
    eigs = es.eigenvalues();
    evecs_r = es.eigenvectors();
  } else {
    Eigen::SelfAdjointEigenSolver<Matrix> es(gc);
    eigs = es.eigenvalues();
    evecs_c = es.eigenvectors();
  }
  const double smax = std::sqrt(std::max(eigs.maxCoeff(), 0.0));
  const double loose =
      std::max(1e-6, 10.0 * static_cast<double>(rows) * tol.rank_tol_factor);
  const double loose_eig = loose * smax * loose * smax;
  Index n_cand = 0;  // eigenvalues ascending
  while (n_cand < eigs.size() && eigs(n_cand) <= loose_eig) ++n_cand;
  if (n_cand == 0) return {};

  // Stage 2: evaluate the true constraint action on the candidates and make
  // the rank call on genuine singular values at the strict threshold.
  RMatrix wr;
  Matrix wc;
  if (star_constrained) {
    wr.resize(rows, n_cand);
    for (Index c = 0; c < n_cand; ++c) {
      const RVector w = evecs_r.col(c);
      const CVector z =
          w.head(cols_c) + Complex(0.0, 1.0) * w.tail(cols_c);
      const CVector stack = defect_stack(sigma, tau, z);
      wr.col(c).head(pair_rows) = stack.real();
      wr.col(c).segment(pair_rows, pair_rows) = stack.imag();
      for (std::size_t s = 0; s < srows.size(); ++s)
        wr(2 * pair_rows + static_cast<Index>(s), c) =
            eval_star_row(srows[s], w);
    }
  } else {
    wc.resize(rows, n_cand);
    for (Index c = 0; c < n_cand; ++c)
      wc.col(c) = defect_stack(sigma, tau, evecs_c.col(c));
  }

  if (star_constrained) {
    Eigen::JacobiSVD<RMatrix> svd(wr, Eigen::ComputeFullV);
    const Index r_pos = decide_rank(svd.singularValues(), rows,
                                    tol.rank_tol_factor, smax);
    const Index null_dim = n_cand - r_pos;
    const RMatrix base =
        evecs_r.leftCols(n_cand) * svd.matrixV().rightCols(null_dim);
    Matrix basis(cols_c, null_dim);
    for (Index c = 0; c < null_dim; ++c)
      basis.col(c) = base.col(c).head(cols_c) +
                     Complex(0.0, 1.0) * base.col(c).tail(cols_c);
    return basis_from_columns(alg, basis);
  }
  Eigen::JacobiSVD<Matrix> svd(wc, Eigen::ComputeFullV);
  const Index r_pos =
      decide_rank(svd.singularValues(), rows, tol.rank_tol_factor, smax);
  const Index null_dim = n_cand - r_pos;
  const Matrix basis =
      evecs_c.leftCols(n_cand) * svd.matrixV().rightCols(null_dim);
  return basis_from_columns(alg, basis);
}

std::vector<SuperMap> derivation_space(const SuperMap& sigma,
                                       bool star_constrained,
                                       const Tolerances& tol) {
  return derivation_space(sigma, sigma, star_constrained, tol);
}

DerivationCheck lemma22_residual(const SuperMap& d, const SuperMap& sigma,
                                 const Tolerances& tol) {
  require_same_domain(d, sigma, "lemma22_residual");
  DerivationCheck out;
  out.scale = std::max(map_scale(d), map_scale(sigma));
  out.worst = {0, 0, 0};
  const Index dim = d.dim();
  std::vector<Matrix> defect(dim * dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      defect[i * dim + j] =
          sigma.image_of_product(i, j) - sigma.image(i) * sigma.image(j);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j)
      for (Index k = 0; k < dim; ++k) {
        const Matrix r = d.image(k) * defect[i * dim + j] -
                         defect[k * dim + i] * d.image(j);
        const double rn = spectral_norm(r);
        if (rn > out.residual) {
          out.residual = rn;
          out.worst = {i, j, k};
        }
      }
  out.passed = out.residual <= tol.identity_tol * out.scale;
  return out;
}

SuperMap dstar(const SuperMap& d) { return star_conjugate(d); }

std::vector<Matrix> annihilators(const std::vector<Matrix>& gens,
                                 AnnihilatorSide side, Index n,
                                 const Tolerances& tol) {
  if (n < 1) throw spec_error("annihilators: ambient dimension must be >= 1");
  for (const Matrix& e : gens)
    if (e.rows() != n || e.cols() != n)
      throw shape_error("annihilators: generator is not " + std::to_string(n) +
                        "x" + std::to_string(n));
  const Index n2 = n * n;
  const Index per =
      (side == AnnihilatorSide::both) ? 2 : 1;  // row blocks per generator
  Matrix k(per * static_cast<Index>(gens.size()) * n2, n2);
  Index row = 0;
  const Matrix id = Matrix::Identity(n, n);
  for (const Matrix& e : gens) {
    // vec(eX) = (I kron e) vec(X); vec(Xe) = (e^T kron I) vec(X).
    if (side == AnnihilatorSide::right || side == AnnihilatorSide::both) {
      Matrix blockm = Matrix::Zero(n2, n2);
      accumulate_kron(blockm, 0, 0, id, e, 1.0);
      k.block(row, 0, n2, n2) = blockm;
      row += n2;
    }
    if (side == AnnihilatorSide::left || side == AnnihilatorSide::both) {
      Matrix blockm = Matrix::Zero(n2, n2);
      accumulate_kron(blockm, 0, 0, e.transpose(), id, 1.0);
      k.block(row, 0, n2, n2) = blockm;
      row += n2;
    }
  }
  const SpanBasis ns = nullspace(Matrix(k.topRows(row)), tol.rank_tol_factor,
                                 0.0);
  std::vector<Matrix> out;
  out.reserve(ns.basis.cols());
  for (Index c = 0; c < ns.basis.cols(); ++c)
    out.push_back(unvectorize(ns.basis.col(c), n));
  return out;
}

std::pair<SuperMap, SymmetrizeReport> symmetrize(const SuperMap& d,
                                                 const SuperMap& sigma,
                                                 const SuperMap& tau,
                                                 const Tolerances& tol) {
  require_same_domain(d, sigma, "symmetrize");
  require_same_domain(d, tau, "symmetrize");
  const auto check = [&](const SuperMap& m, const char* name) {
    const PredicateCheck c = is_star_linear(m, tol);
    if (!c.passed)
      throw precondition_error(std::string("symmetrize: ") + name +
                               " is not *-linear (residual " +
                               std::to_string(c.residual) + ")");
  };
  check(sigma, "sigma");
  check(tau, "tau");
  check(d, "d");
  SuperMap mid = scale(Complex(0.5, 0.0), add(sigma, tau));
  SymmetrizeReport rep;
  rep.forward = sigma_tau_residual(d, sigma, tau, tol);
  rep.swapped = sigma_tau_residual(d, tau, sigma, tol);
  rep.mid = leibniz_residual(d, mid, tol);
  return {std::move(mid), rep};
}

}  // namespace sdlab
