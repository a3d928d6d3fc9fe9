#include <doctest.h>

#include "fixtures.hpp"
#include "opdiag/oracles.hpp"
#include "opdiag/recursion.hpp"

using namespace opdiag;
using fixtures::mat;

TEST_CASE("block Toeplitz layout and nullspaces") {
  const Series l = fixtures::example1();
  const oracle::ToeplitzBlock t2 = oracle::toeplitz_block(l, 2);
  CHECK(t2.matrix.rows() == 6);
  CHECK(t2.matrix.block(0, 0, 3, 3) == l.coefficient(0));
  CHECK(t2.matrix.block(0, 3, 3, 3) == l.coefficient(1));
  CHECK(is_zero(Matrix(t2.matrix.block(3, 0, 3, 3))));
  const long dims[] = {2, 3, 4, 4};
  for (std::size_t len = 1; len <= 4; ++len) CHECK(oracle::toeplitz_nullspace(l, len).dim() == dims[len - 1]);
  const Series zero = Series::constant(fixtures::zeros(2, 3));
  CHECK(oracle::toeplitz_nullspace(zero, 3).dim() == 9);
  CHECK_THROWS_AS(oracle::toeplitz_block(l, 0), Error);
}

TEST_CASE("determinant polynomial by interpolation") {
  // det = eps^4 (1 - eps^4).
  const auto det = oracle::determinant_polynomial(fixtures::example1());
  std::vector<Rat> expected(det.size(), Rat(0));
  expected[4] = 1;
  expected[8] = -1;
  CHECK(det == expected);
}

TEST_CASE("direct Laurent inverse") {
  const Laurent x = oracle::direct_laurent_inverse(fixtures::example1(), 9, 8);
  CHECK(x.pole_order() == 3);
  const auto expected = fixtures::example1_inverse(8);
  for (long p = -3; p <= 8; ++p) CHECK(x.coefficient(p) == expected.at(p));

  const Matrix l0 = mat({{2, 1}, {1, 1}});
  const Laurent c = oracle::direct_laurent_inverse(Series::constant(l0), 2, 4);
  CHECK(c.pole_order() == 0);
  CHECK(c.coefficient(0) == inverse<Rat>(l0));

  const Laurent e = oracle::direct_laurent_inverse(Series::polynomial(2, 2, {fixtures::zeros(2, 2), fixtures::eye(2)}), 2, 4);
  CHECK(e.pole_order() == 1);
  CHECK(e.coefficient(-1) == fixtures::eye(2));
  for (long i = 0; i <= 4; ++i) CHECK(is_zero(e.coefficient(i)));

  CHECK_THROWS_AS(oracle::direct_laurent_inverse(fixtures::example1(), 2, 4), Error);  // pole 3 > p_max
  CHECK_THROWS_AS(oracle::direct_laurent_inverse(Series::constant(mat({{1, 1}, {1, 1}})), 4, 4), Error);
  CHECK_THROWS_AS(oracle::direct_laurent_inverse(Series::constant(fixtures::zeros(2, 3)), 4, 4), Error);

  // L X = I and X L = I through the order.
  const Laurent l = Laurent::from_series(fixtures::example1());
  const Laurent id = Laurent::from_series(Series::identity(3));
  CHECK((l * x).equal_through(id, 8));
  CHECK((x * l).equal_through(id, 8));
}

TEST_CASE("augmented pencil of a polynomial") {
  const Series pencil = Series::polynomial(2, 2, {mat({{1, 0}, {0, 0}}), mat({{0, 1}, {1, 0}})});
  const oracle::AugmentedPencil p1 = oracle::linearize_polynomial(pencil);
  CHECK(p1.degree == 1);
  CHECK(p1.lbar0 == pencil.coefficient(0));
  CHECK(p1.lbar1 == pencil.coefficient(1));

  const Series l = fixtures::example1();
  const oracle::AugmentedPencil p3 = oracle::linearize_polynomial(l);
  CHECK(p3.lbar0.rows() == 9);
  CHECK(p3.lbar0.block(6, 0, 3, 3) == l.coefficient(2));
  CHECK(is_zero(Matrix(p3.lbar0.block(0, 3, 3, 3))));
  CHECK(p3.lbar1.block(0, 0, 3, 3) == l.coefficient(3));
  CHECK(p3.lbar1.block(0, 6, 3, 3) == l.coefficient(1));
  CHECK(is_zero(Matrix(p3.lbar1.block(3, 0, 3, 3))));

  const RecursionState bar = run_until_stable(start_recursion(p3.pencil()));
  CHECK(*bar.stabilization_k == 1);
  CHECK(oracle::linearization_bound_holds(3, 1, 3));
  CHECK_FALSE(oracle::linearization_bound_holds(4, 1, 3));
  CHECK(oracle::linearization_bound_holds(0, 0, 2));
  // N[Delta_bar^1] and N[Delta^3] have equal dimension.
  CHECK(oracle::toeplitz_nullspace(p3.pencil(), 1).dim() == oracle::toeplitz_nullspace(l, 3).dim());

  CHECK_THROWS_AS(oracle::linearize_polynomial(Series::constant(fixtures::eye(2))), Error);
}

TEST_CASE("resolvent recurrences") {
  // L = eps I: R_{-1} = I and everything else vanishes.
  const Matrix z = fixtures::zeros(2, 2);
  const Matrix i2 = fixtures::eye(2);
  const Laurent r1 = oracle::direct_laurent_inverse(Series::polynomial(2, 2, {z, i2}), 2, 10);
  const auto c1 = oracle::resolvent_recurrence_check(z, i2, r1, 10);
  CHECK(c1.passed);
  CHECK(c1.checked_through == 10);

  // L = I + eps N with N nilpotent: R_j = (-1)^j N^j.
  const Matrix n = mat({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  const Laurent r2 = oracle::direct_laurent_inverse(Series::polynomial(3, 3, {fixtures::eye(3), n}), 3, 10);
  CHECK(r2.coefficient(2) == Matrix(n * n));
  CHECK(oracle::resolvent_recurrence_check(fixtures::eye(3), n, r2, 10).passed);

  // A wrong coefficient is located.
  std::vector<Matrix> bad = r2.coeffs();
  bad[3](0, 0) += 1;
  const Laurent broken(3, 3, 0, bad, Tail::Truncated);
  const auto c3 = oracle::resolvent_recurrence_check(fixtures::eye(3), n, broken, 10);
  CHECK_FALSE(c3.passed);
  CHECK(c3.first_violation == 3);

  // Pole 3 is outside the recurrences' scope.
  const Laurent x = oracle::direct_laurent_inverse(fixtures::example1(), 9, 4);
  CHECK_THROWS_AS(oracle::resolvent_recurrence_check(fixtures::eye(3), fixtures::eye(3), x, 4), Error);
}
