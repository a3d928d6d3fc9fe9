#include "opdiag/oracles.hpp"

#include <string>
#include <utility>

namespace opdiag::oracle {

namespace {

/// Monomial coefficients of the polynomial through (xs[i], ys[i]), by Newton
/// divided differences. Values may be matrices or scalars (1x1).
std::vector<Matrix> interpolate(const std::vector<Rat>& xs, std::vector<Matrix> ys) {
  const std::size_t n = xs.size();
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i)
      ys[i] = ((ys[i] - ys[i - 1]) / (xs[i] - xs[i - level])).eval();

  // Horner on the Newton form: p = ys[n-1]; p = p * (x - xs[i]) + ys[i].
  const Index r = ys.front().rows();
  const Index c = ys.front().cols();
  std::vector<Matrix> poly{ys[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    std::vector<Matrix> next(poly.size() + 1, Matrix::Zero(r, c));
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j + 1] += poly[j];
      next[j] -= poly[j] * xs[i];
    }
    next[0] += ys[i];
    poly = std::move(next);
  }
  return poly;
}

Matrix scalar(const Rat& v) { return Matrix::Constant(1, 1, v); }

void require_square(const Series& family, const char* what) {
  if (family.rows() != family.cols())
    fail(ErrorKind::Input, std::string(what) + ": the family is not square", {{}, "L", family.rows(), family.cols()});
}

}  // namespace

ToeplitzBlock toeplitz_block(const Series& family, std::size_t length) {
  if (length == 0) fail(ErrorKind::Input, "toeplitz_block: chain length must be >= 1");
  const Index m = family.rows();
  const Index n = family.cols();
  const Index l = static_cast<Index>(length);
  ToeplitzBlock out{length, Matrix::Zero(m * l, n * l)};
  for (Index d = 0; d < l; ++d) {
    const Matrix c = family.coefficient(d);
    for (Index i = 0; i + d < l; ++i) out.matrix.block(i * m, (i + d) * n, m, n) = c;
  }
  return out;
}

Space toeplitz_nullspace(const Series& family, std::size_t length) {
  return kernel_basis<Rat>(toeplitz_block(family, length).matrix);
}

std::vector<Rat> determinant_polynomial(const Series& family) {
  require_square(family, "determinant_polynomial");
  const long degree = family.trunc_order() * family.rows();
  std::vector<Rat> xs;
  std::vector<Matrix> ys;
  for (long t = 0; t <= degree; ++t) {
    xs.emplace_back(t);
    ys.push_back(scalar(determinant<Rat>(family.evaluate(Rat(t)))));
  }
  std::vector<Rat> out;
  for (const auto& c : interpolate(xs, std::move(ys))) out.push_back(c(0, 0));
  return out;
}

Laurent direct_laurent_inverse(const Series& family, long p_max, long order) {
  require_square(family, "direct_laurent_inverse");
  if (order < 0) fail(ErrorKind::Input, "direct_laurent_inverse: negative order");
  const Index n = family.rows();
  const std::vector<Rat> det = determinant_polynomial(family);

  long v = 0;
  while (v < static_cast<long>(det.size()) && det[static_cast<std::size_t>(v)] == 0) ++v;
  if (v == static_cast<long>(det.size())) {
    if (family.is_polynomial())
      fail(ErrorKind::Input, "direct_laurent_inverse: the family is generically singular", {{}, "L", n, n});
    fail(ErrorKind::Truncation, "direct_laurent_inverse: det L vanishes through the known order", {{}, "L", n, n});
  }
  // With L = L_known + O(eps^{T_L+1}) the inverses agree through T_L - 2v.
  if (!family.is_polynomial() && order > family.trunc_order() - 2 * v)
    fail(ErrorKind::Truncation,
         "direct_laurent_inverse: order " + std::to_string(order) + " exceeds what the truncated input determines",
         {{}, "L", n, n});

  // adj L(t) = det L(t) * L(t)^{-1} at points where L(t) is invertible.
  const long adj_degree = family.trunc_order() * (n - 1);
  std::vector<Rat> xs;
  std::vector<Matrix> ys;
  for (long t = 1; static_cast<long>(xs.size()) <= adj_degree; ++t) {
    const Matrix value = family.evaluate(Rat(t));
    const Rat d = determinant<Rat>(value);
    if (d == 0) continue;
    xs.emplace_back(t);
    ys.push_back((inverse<Rat>(value) * d).eval());
  }
  const std::vector<Matrix> adj = interpolate(xs, std::move(ys));

  // s = 1 / (det / eps^v) as a scalar power series through order + v.
  const long need = order + v;
  std::vector<Rat> q;
  for (long i = v; i < static_cast<long>(det.size()); ++i) q.push_back(det[static_cast<std::size_t>(i)]);
  std::vector<Rat> s{Rat(1) / q[0]};
  for (long l = 1; l <= need; ++l) {
    Rat acc = 0;
    for (long j = 1; j <= l && j < static_cast<long>(q.size()); ++j)
      acc += q[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(l - j)];
    s.push_back(-acc / q[0]);
  }

  std::vector<Matrix> coeffs;
  for (long l = -v; l <= order; ++l) {
    Matrix acc = Matrix::Zero(n, n);
    for (long i = 0; i < static_cast<long>(adj.size()) && i <= l + v; ++i)
      acc += adj[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(l + v - i)];
    coeffs.push_back(std::move(acc));
  }
  Laurent out(n, n, v, std::move(coeffs), Tail::Truncated);
  if (out.pole_order() > p_max)
    fail(ErrorKind::Input,
         "direct_laurent_inverse: pole order " + std::to_string(out.pole_order()) + " exceeds p_max " +
             std::to_string(p_max),
         {{}, "L", n, n});
  return out;
}

AugmentedPencil linearize_polynomial(const Series& family) {
  if (!family.is_polynomial()) fail(ErrorKind::Input, "linearize: the family must be a polynomial");
  long degree = family.trunc_order();
  while (degree > 0 && is_zero(family.coefficient(degree))) --degree;
  if (degree < 1) fail(ErrorKind::Input, "linearize: degree 0 family", {{}, "L", family.rows(), family.cols()});

  const Index m = family.rows();
  const Index c = family.cols();
  const Index nd = degree;
  AugmentedPencil out{static_cast<std::size_t>(degree), Matrix::Zero(m * nd, c * nd), Matrix::Zero(m * nd, c * nd)};
  for (Index i = 0; i < nd; ++i)
    for (Index j = 0; j < nd; ++j) {
      if (i >= j) out.lbar0.block(i * m, j * c, m, c) = family.coefficient(i - j);
      if (j >= i) out.lbar1.block(i * m, j * c, m, c) = family.coefficient(nd - (j - i));
    }
  return out;
}

bool linearization_bound_holds(std::size_t k, std::size_t kbar, std::size_t degree) {
  const long lo = (static_cast<long>(kbar) - 1) * static_cast<long>(degree);
  return lo < static_cast<long>(k) && k <= kbar * degree;
}

ResolventCheck resolvent_recurrence_check(const Matrix& l0, const Matrix& l1, const Laurent& resolvent, long order) {
  if (resolvent.pole_order() > 1)
    fail(ErrorKind::Input,
         "resolvent recurrences are stated for a pole of order <= 1, got " + std::to_string(resolvent.pole_order()),
         {{}, "R", resolvent.rows(), resolvent.cols()});
  if (resolvent.known_through() < order)
    fail(ErrorKind::Truncation, "resolvent is not known through order " + std::to_string(order),
         {{}, "R", resolvent.rows(), resolvent.cols()});

  ResolventCheck out;
  const Matrix r_m1 = resolvent.coefficient(-1);
  const Matrix r_0 = resolvent.coefficient(0);
  const Matrix a = r_m1 * l0;
  const Matrix b = r_0 * l1;
  Matrix neg = r_m1;  // (-1)^{j-1} (R_{-1} L0)^{j-1} R_{-1}
  Matrix pos = r_0;   // (-1)^j (R_0 L1)^j R_0
  for (long j = 1; j <= order; ++j) {
    if (j > 1) neg = (-(a * neg)).eval();
    pos = (-(b * pos)).eval();
    if (resolvent.coefficient(-j) != neg) {
      out.first_violation = -j;
      break;
    }
    if (resolvent.coefficient(j) != pos) {
      out.first_violation = j;
      break;
    }
    out.checked_through = j;
  }
  out.passed = !out.first_violation;
  return out;
}

}  // namespace opdiag::oracle
