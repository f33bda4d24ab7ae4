#include <gtest/gtest.h>

#include <cmath>

#include "spectra/approx_linalg.hpp"
#include "spectra/engine.hpp"
#include "spectra/exact_linalg.hpp"
#include "spectra/region.hpp"
#include "test_util.hpp"

namespace spectra {
namespace {

using testing::af;
using testing::Fuzzer;
using testing::pt;
using testing::qdiag;
using testing::qm;

LinearPencil diag_pencil(std::vector<AffineFunctional> entries) { return LinearPencil::from_diagonal(entries); }

bool passes(const EngineCertificate& c, const LinearPencil& l1, const LinearPencil& l2) {
  if (c.exact) return verify(l1, l2, *c.exact).pass;
  return verify(l1, l2, c.numeric, 1e-8).pass;
}

// ---------------------------------------------------------------- monic_reduce

TEST(MonicReduceTest, NonInteriorConstantTermRejected) { EXPECT_THROW(monic_reduce(example2_l1()), NotInterior); }

TEST(MonicReduceTest, DiagonalScalesBySquareRoots) {
  const LinearPencil l = diag_pencil({af({"4", "1"}), af({"1", "-1"})});
  const MonicReduction r = monic_reduce(l);
  EXPECT_EQ(r.backend, MonicBackend::ExactScaled);
  EXPECT_EQ(r.c, qdiag({"1/2", "1"}));
  EXPECT_EQ(r.reduced, LinearPencil({QMatrix::identity(2), qdiag({"1/4", "-1"})}));
  EXPECT_EQ(congruence(l, r.c), r.reduced);
  EXPECT_EQ(congruence(r.reduced, r.dmat), l);
}

TEST(MonicReduceTest, MonicIsUnchanged) {
  const LinearPencil l({QMatrix::identity(2), qm({{"1", "2"}, {"2", "-1"}})});
  const MonicReduction r = monic_reduce(l);
  EXPECT_EQ(r.reduced, l);
  EXPECT_EQ(r.c, QMatrix::identity(2));
  EXPECT_EQ(r.dmat, QMatrix::identity(2));
}

TEST(MonicReduceTest, NonSquareEntriesStayPositiveDiagonal) {
  const LinearPencil l = diag_pencil({af({"2", "1"}), af({"0", "0"}), af({"3", "-1"})});
  const MonicReduction r = monic_reduce(l);
  EXPECT_EQ(r.reduced.d(), 2u);
  EXPECT_EQ(r.reduced.coeff(0), qdiag({"2", "3"}));
  EXPECT_EQ(congruence(r.reduced, r.dmat), l);
}

TEST(MonicReduceTest, ApproximateBackendForNonDiagonalConstant) {
  const LinearPencil l({qm({{"2", "1", "0"}, {"1", "2", "0"}, {"0", "0", "0"}}), qm({{"1", "0", "0"}, {"0", "-1", "0"}, {"0", "0", "0"}})});
  const MonicReduction r = monic_reduce(l);
  EXPECT_EQ(r.backend, MonicBackend::ApproxMonic);
  EXPECT_EQ(r.reduced.d(), 2u);
  EXPECT_TRUE(is_monic(r.reduced));
  for (std::size_t i = 0; i <= l.n(); ++i) {
    const Eigen::MatrixXd back = to_eigen(r.dmat).transpose() * to_eigen(r.reduced.coeff(i)) * to_eigen(r.dmat);
    EXPECT_LE((back - to_eigen(l.coeff(i))).cwiseAbs().maxCoeff(), 1e-10);
    const Eigen::MatrixXd fwd = to_eigen(r.c).transpose() * to_eigen(l.coeff(i)) * to_eigen(r.c);
    EXPECT_LE((fwd - to_eigen(r.reduced.coeff(i))).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(MonicReduceProperty, MembershipAgreesOnSampledPoints) {
  Fuzzer fz(71);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = static_cast<std::size_t>(fz.integer(1, 2));
    const std::size_t d = static_cast<std::size_t>(fz.integer(2, 4));
    // Diagonal constant with a zero entry; slopes supported on the rest.
    std::vector<Rational> diag;
    for (std::size_t j = 0; j + 1 < d; ++j) diag.push_back(Rational(fz.integer(1, 9), fz.integer(1, 4)));
    diag.push_back(0);
    std::vector<QMatrix> coeffs{QMatrix::diagonal(diag)};
    for (std::size_t i = 0; i < n; ++i) {
      QMatrix s(d, d);
      s.set_block(0, 0, fz.symmetric(d - 1));
      coeffs.push_back(s);
    }
    const LinearPencil l(coeffs);
    const MonicReduction r = monic_reduce(l);
    ASSERT_EQ(congruence(l, r.c), r.reduced);
    ASSERT_EQ(congruence(r.reduced, r.dmat), l);
    for (int k = 0; k < 200; ++k) {
      PencilPoint x;
      for (std::size_t i = 0; i < n; ++i) x.push_back(fz.rational(6, 4));
      EXPECT_EQ(membership(l, x), membership(r.reduced, x)) << "trial " << trial << " point " << point_string(x);
    }
  }
}

TEST(MonicReduceProperty, ApproximateMembershipAgreesAwayFromBoundary) {
  Fuzzer fz(72);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = static_cast<std::size_t>(fz.integer(2, 4));
    const QMatrix u = fz.invertible(d);
    const LinearPencil l({u.transpose() * u, fz.symmetric(d)});
    const MonicReduction r = monic_reduce(l);
    for (int k = 0; k < 200; ++k) {
      const Rational x = fz.rational(6, 4);
      const double a = min_eigenvalue(to_eigen(eval_point(l, {x})));
      const double b = min_eigenvalue(to_eigen(eval_point(r.reduced, {x})));
      if (std::abs(a) < 1e-6 || std::abs(b) < 1e-6) continue;
      EXPECT_EQ(a >= 0, b >= 0) << "trial " << trial;
    }
  }
}

// ---------------------------------------------------------------- ±x expansion

TEST(ExpressPmTest, Examples) {
  ExactCertificate c = express_symmetric_via_pm(qm({{"1"}}), 0, 1);
  ASSERT_EQ(c.pencil.size(), 1u);
  EXPECT_EQ(c.pencil[0].weight, 1);
  EXPECT_EQ(c.pencil[0].factor.coeff(Monomial(1, 0)), qm({{"1"}, {"0"}}));

  c = express_symmetric_via_pm(qm({{"-1"}}), 0, 1);
  ASSERT_EQ(c.pencil.size(), 1u);
  EXPECT_EQ(c.pencil[0].factor.coeff(Monomial(1, 0)), qm({{"0"}, {"1"}}));

  const QMatrix swap = qm({{"0", "1"}, {"1", "0"}});
  c = express_symmetric_via_pm(swap, 0, 1);
  EXPECT_EQ(c.pencil.size(), 2u);
  EXPECT_TRUE(verify(pm_pencil(1, 0), LinearPencil({QMatrix(2, 2), swap}), c).pass);
}

TEST(ExpressPmProperty, ReproducesSlopeExactly) {
  Fuzzer fz(73);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t l = static_cast<std::size_t>(fz.integer(1, 6));
    const std::size_t n = static_cast<std::size_t>(fz.integer(1, 3));
    const std::size_t i = static_cast<std::size_t>(fz.integer(0, static_cast<int>(n) - 1));
    const QMatrix a = fz.symmetric(l);
    std::vector<QMatrix> coeffs(n + 1, QMatrix(l, l));
    coeffs[i + 1] = a;
    ASSERT_TRUE(verify(pm_pencil(n, i), LinearPencil(coeffs), express_symmetric_via_pm(a, i, n)).pass) << "trial " << trial;
  }
}

// ---------------------------------------------------------------- singleton

TEST(SingletonTest, ScalarPoint) {
  const LinearPencil l1 = diag_pencil({af({"0", "1"}), af({"0", "-1"})});
  const LinearPencil l2 = LinearPencil::scalar(af({"0", "1"}));
  const EngineCertificate c = certify_singleton(l1, l2);
  ASSERT_TRUE(c.is_exact());
  EXPECT_TRUE(c.report.pass);
  ASSERT_EQ(c.exact->pencil.size(), 1u);
  EXPECT_EQ(c.exact->pencil[0].weight, 1);
  EXPECT_EQ(c.exact->pencil[0].factor.coeff(Monomial(1, 0)), qm({{"1"}, {"0"}}));
  EXPECT_TRUE(c.exact->sos.empty());
}

TEST(SingletonTest, TwoVariablesWithArbitrarySlopes) {
  const LinearPencil l1 = diag_pencil({af({"0", "1", "0"}), af({"0", "-1", "0"}), af({"0", "0", "1"}), af({"0", "0", "-1"})});
  const LinearPencil l2({QMatrix::identity(2), qm({{"1", "3"}, {"3", "-2"}}), qm({{"0", "-1/2"}, {"-1/2", "5"}})});
  const EngineCertificate c = certify_singleton(l1, l2);
  ASSERT_TRUE(c.is_exact());
  EXPECT_TRUE(verify(l1, l2, *c.exact).pass);
  EXPECT_EQ(c.exact->degree(), 0u);
}

TEST(SingletonTest, TranslatedPoint) {
  // Region {(1, -2)} from redundant constraints.
  const LinearPencil l1 = diag_pencil({af({"-1", "1", "0"}), af({"1", "-1", "0"}), af({"2", "0", "1"}), af({"-2", "0", "-1"}),
                                       af({"3", "1", "1"})});
  const LinearPencil l2({qm({{"2", "1"}, {"1", "3"}}), qm({{"1", "0"}, {"0", "-1"}}), qm({{"0", "1"}, {"1", "0"}})});
  ASSERT_TRUE(psd_check(eval_point(l2, pt({"1", "-2"}))));
  const EngineCertificate c = certify_singleton(l1, l2);
  EXPECT_TRUE(c.is_exact());
  EXPECT_TRUE(passes(c, l1, l2));
}

TEST(SingletonTest, NonPsdAtPointFails) {
  const LinearPencil l1 = diag_pencil({af({"0", "1"}), af({"0", "-1"})});
  EXPECT_THROW(certify_singleton(l1, LinearPencil::scalar(af({"-1", "1"}))), PositivityFailed);
}

// ---------------------------------------------------------------- diagonal bounded

TEST(DiagonalBoundedTest, EmptyRegionUsesDegreeOneFactors) {
  const LinearPencil l1 = diag_pencil({af({"-1", "1"}), af({"0", "-1"})});
  const LinearPencil l2({qm({{"1", "2"}, {"2", "-3"}}), qm({{"0", "1"}, {"1", "4"}})});
  const EngineCertificate c = certify_diagonal_bounded(l1, l2);
  EXPECT_EQ(c.path, EnginePath::EmptyRegion);
  ASSERT_TRUE(c.is_exact());
  EXPECT_EQ(c.exact->degree(), 1u);
  EXPECT_TRUE(verify(l1, l2, *c.exact).pass);
}

TEST(DiagonalBoundedProperty, EmptyRegionExpandsExactly) {
  Fuzzer fz(74);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(fz.integer(1, 3));
    const std::size_t l = static_cast<std::size_t>(fz.integer(1, 4));
    // x_1 ≥ c and x_1 ≤ c − 1 plus random extra constraints.
    const Rational c0 = fz.rational(3, 2);
    std::vector<AffineFunctional> entries;
    AffineFunctional lo = AffineFunctional::coordinate(n, 0);
    lo.a0 = -c0;
    AffineFunctional hi = Rational(-1) * AffineFunctional::coordinate(n, 0);
    hi.a0 = c0 - 1;
    entries.push_back(lo);
    entries.push_back(hi);
    for (int e = fz.integer(0, 2); e > 0; --e) {
      AffineFunctional f = AffineFunctional::constant(n, fz.rational(3, 2));
      for (auto& a : f.linear) a = fz.rational(3, 2);
      entries.push_back(f);
    }
    const LinearPencil l1 = diag_pencil(entries);
    std::vector<QMatrix> coeffs;
    for (std::size_t i = 0; i <= n; ++i) coeffs.push_back(fz.symmetric(l));
    const LinearPencil l2(coeffs);
    const ExactCertificate cert = empty_region_certificate(l1, l2);
    EXPECT_EQ(expand(cert, l1), pencil_poly<Rational>(l2)) << "trial " << trial;
  }
}

TEST(DiagonalBoundedTest, IntervalScalarTarget) {
  const LinearPencil l1 = diag_pencil({af({"1", "1"}), af({"1", "-1"})});
  const LinearPencil l2 = LinearPencil::scalar(af({"3", "1"}));
  // Scalar oracle: 3 + x == 2(1 + x) + 1(1 − x).
  const FarkasCertificate fc = farkas_certificate(region_of(l1), af({"3", "1"}));
  EXPECT_EQ(fc.coeffs, (std::vector<Rational>{2, 1}));
  const EngineCertificate c = certify_diagonal_bounded(l1, l2);
  EXPECT_EQ(c.path, EnginePath::DiagonalBounded);
  EXPECT_EQ(c.numeric.degree(), 0u);
  EXPECT_TRUE(passes(c, l1, l2));
}

TEST(DiagonalBoundedTest, LowerDimensionalSegment) {
  const LinearPencil l1 = diag_pencil({af({"0", "1", "0"}), af({"0", "-1", "0"}), af({"1", "0", "1"}), af({"1", "0", "-1"})});
  const LinearPencil l2({qm({{"2", "0"}, {"0", "2"}}), qm({{"3", "1"}, {"1", "0"}}), qm({{"1", "0"}, {"0", "-1"}})});
  const EngineCertificate c = certify_diagonal_bounded(l1, l2);
  EXPECT_EQ(c.path, EnginePath::LowerDimensional);
  EXPECT_TRUE(passes(c, l1, l2));
}

TEST(DiagonalBoundedTest, TiltedLowerDimensionalSegment) {
  // Segment x1 = x2 inside the unit box.
  const LinearPencil l1 = diag_pencil({af({"0", "1", "-1"}), af({"0", "-1", "1"}), af({"1", "1", "0"}), af({"1", "-1", "0"})});
  const LinearPencil l2({qm({{"3", "1"}, {"1", "3"}}), qm({{"1", "0"}, {"0", "0"}}), qm({{"0", "1/2"}, {"1/2", "-1"}})});
  const EngineCertificate c = certify_diagonal_bounded(l1, l2);
  EXPECT_EQ(c.path, EnginePath::LowerDimensional);
  EXPECT_TRUE(passes(c, l1, l2));
}

TEST(DiagonalBoundedTest, Errors) {
  EXPECT_THROW(certify_diagonal_bounded(diag_pencil({af({"0", "1"})}), LinearPencil::scalar(af({"1", "0"}))), NotBounded);
  EXPECT_THROW(certify_diagonal_bounded(example2_l1(), example2_l2()), NotDiagonal);
  const LinearPencil l1 = diag_pencil({af({"1", "1"}), af({"1", "-1"})});
  EXPECT_THROW(certify_diagonal_bounded(l1, LinearPencil::scalar(af({"1", "1"}))), PositivityFailed);
}

// ---------------------------------------------------------------- one variable

TEST(OneVariableTest, IntervalOfNonDiagonalPencil) {
  // [[x, 1], [1, x]] ⪰ 0 iff x ≥ 1.
  const OneVariableInterval iv = one_variable_interval(LinearPencil({qm({{"0", "1"}, {"1", "0"}}), QMatrix::identity(2)}));
  ASSERT_TRUE(iv.has_interior);
  ASSERT_TRUE(iv.lower);
  EXPECT_FALSE(iv.upper);
  EXPECT_NEAR(*iv.lower, 1.0, 1e-9);
  ASSERT_TRUE(iv.lower_exact);
  EXPECT_EQ(*iv.lower_exact, 1);
}

TEST(OneVariableTest, IntervalWithoutInteriorReportsItsPoint) {
  const OneVariableInterval iv = one_variable_interval(example2_l1());
  EXPECT_FALSE(iv.has_interior);
  ASSERT_TRUE(iv.point);
  EXPECT_EQ(*iv.point, 0);
  // diag(−1, x) is never PSD.
  const OneVariableInterval empty = one_variable_interval(LinearPencil({qdiag({"-1", "0"}), qdiag({"0", "1"})}));
  EXPECT_FALSE(empty.has_interior);
  EXPECT_FALSE(empty.point);
  // diag(x − 1/3, 1/3 − x) is PSD only at 1/3.
  const OneVariableInterval third = one_variable_interval(LinearPencil({qdiag({"-1/3", "1/3"}), qdiag({"1", "-1"})}));
  EXPECT_FALSE(third.has_interior);
  ASSERT_TRUE(third.point);
  EXPECT_EQ(*third.point, Rational(1, 3));
}

TEST(OneVariableTest, BoundedIntervalConstantCertificate) {
  const LinearPencil l1 = diag_pencil({af({"1", "1"}), af({"1", "-1"})});
  const LinearPencil l2({QMatrix::identity(2), qm({{"0", "1"}, {"1", "0"}})});
  const EngineCertificate c = certify_one_variable(l1, l2);
  EXPECT_EQ(c.path, EnginePath::OneVariableBounded);
  EXPECT_EQ(c.numeric.degree(), 0u);
  EXPECT_LE(verify(l1, l2, c.numeric).residual, 1e-8);
}

TEST(OneVariableTest, HalfLineScalar) {
  const LinearPencil l1 = LinearPencil::scalar(af({"0", "1"}));
  const LinearPencil l2 = LinearPencil::scalar(af({"0", "2"}));
  const EngineCertificate c = certify_one_variable(l1, l2);
  EXPECT_EQ(c.path, EnginePath::OneVariableHalfLine);
  ASSERT_EQ(c.numeric.pencil.size(), 1u);
  const double b = c.numeric.pencil[0].factor.coeff(Monomial(1, 0))(0, 0);
  EXPECT_NEAR(c.numeric.pencil[0].weight * b * b, 2.0, 1e-10);
  EXPECT_LE(c.report.residual, 1e-8);
}

TEST(OneVariableTest, HalfLineNonDiagonal) {
  const LinearPencil l1({qm({{"0", "1"}, {"1", "0"}}), QMatrix::identity(2)});
  // (x − 1)·A + B with A, B PSD.
  const QMatrix a = qm({{"2", "1", "0"}, {"1", "1", "0"}, {"0", "0", "3"}});
  const QMatrix b = qm({{"1", "0", "1"}, {"0", "0", "0"}, {"1", "0", "1"}});
  const LinearPencil l2({b - a, a});
  const EngineCertificate c = certify_one_variable(l1, l2);
  EXPECT_EQ(c.path, EnginePath::OneVariableHalfLine);
  EXPECT_LE(c.report.residual, 1e-8);
}

TEST(OneVariableTest, LeftHalfLine) {
  const LinearPencil l1 = diag_pencil({af({"2", "-1"}), af({"3", "-1"})});
  const LinearPencil l2({qm({{"4", "0"}, {"0", "3"}}), qm({{"-2", "0"}, {"0", "0"}})});
  const EngineCertificate c = certify_one_variable(l1, l2);
  EXPECT_EQ(c.path, EnginePath::OneVariableHalfLine);
  EXPECT_LE(c.report.residual, 1e-8);
}

TEST(OneVariableTest, FullLineGivesSos) {
  const LinearPencil l1({qm({{"1", "0"}, {"0", "0"}}), QMatrix(2, 2)});
  const LinearPencil l2({qm({{"2", "1"}, {"1", "1"}}), QMatrix(2, 2)});
  const EngineCertificate c = certify_one_variable(l1, l2);
  EXPECT_EQ(c.path, EnginePath::OneVariableFullLine);
  ASSERT_TRUE(c.is_exact());
  EXPECT_TRUE(c.exact->pencil.empty());
  EXPECT_TRUE(verify(l1, l2, *c.exact).pass);
}

TEST(OneVariableTest, Errors) {
  EXPECT_THROW(certify_one_variable(example1_l1(), example1_l2()), NotOneVariable);
  const LinearPencil point = diag_pencil({af({"0", "1"}), af({"0", "-1"})});
  EXPECT_THROW(certify_one_variable(point, LinearPencil::scalar(af({"1", "0"}))), NoInterior);
  const LinearPencil half = LinearPencil::scalar(af({"0", "1"}));
  EXPECT_THROW(certify_one_variable(half, LinearPencil::scalar(af({"1", "-1"}))), PositivityFailed);
}

/// L1 = P0 + x·P1 with a PSD pair, L2 synthesized from it.
std::pair<LinearPencil, LinearPencil> psd_pair_instance(Fuzzer& fz) {
  const std::size_t d = static_cast<std::size_t>(fz.integer(1, 6));
  const std::size_t l = static_cast<std::size_t>(fz.integer(1, 4));
  const LinearPencil l1({fz.psd(d, static_cast<std::size_t>(fz.integer(0, static_cast<int>(d) - 1))),
                         fz.psd(d, static_cast<std::size_t>(fz.integer(1, static_cast<int>(d))))});
  ExactCertificate truth(d, l, 1);
  for (int k = fz.integer(1, 2); k > 0; --k) truth.add_pencil(Rational(fz.integer(1, 3)), fz.matrix(d, l, 3, 1));
  truth.add_sos(Rational(1), fz.matrix(1, l, 3, 1));
  const QMatrixPoly e = expand(truth, l1);
  return {l1, LinearPencil({e.coeff(Monomial(1, 0)), e.coeff(Monomial(1, 1))})};
}

TEST(OneVariableProperty, PsdPairsHalfLine) {
  Fuzzer fz(75);
  for (int trial = 0; trial < 50; ++trial) {
    const auto [l1, l2] = psd_pair_instance(fz);
    const SimultaneousDiagonalization sd = simultaneous_diag_psd(l1.coeff(0), l1.coeff(1));
    EXPECT_LE(sd.off_diagonal_residual, 1e-9) << "trial " << trial;
    const EngineCertificate c = certify_one_variable(l1, l2);
    EXPECT_LE(c.report.residual, 1e-8) << "trial " << trial;
  }
}

TEST(OneVariableProperty, NcLiftKeepsTuplesPositive) {
  Fuzzer fz(76);
  int found = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = static_cast<std::size_t>(fz.integer(2, 4));
    const std::size_t l = static_cast<std::size_t>(fz.integer(1, 3));
    const LinearPencil l1({QMatrix::identity(d), fz.symmetric(d)});
    const OneVariableInterval iv = one_variable_interval(l1);
    if (!iv.lower || !iv.upper) continue;
    // Monic L2 = I + t·R with t halved below the largest admissible value.
    const QMatrix r = fz.symmetric(l);
    Rational t(1);
    while (!pd_check(QMatrix::identity(l) + r * (t * best_rational(*iv.lower, 1000))) ||
           !pd_check(QMatrix::identity(l) + r * (t * best_rational(*iv.upper, 1000))))
      t /= 2;
    t /= 2;
    const LinearPencil l2({QMatrix::identity(l), r * t});
    const EngineCertificate c = certify_one_variable(l1, l2);
    ASSERT_LE(c.report.residual, 1e-8);
    ++found;
    for (int k = 0; k < 5; ++k) {
      const int m = fz.integer(1, 4);
      Eigen::VectorXd spectrum(m);
      for (int j = 0; j < m; ++j) spectrum(j) = fz.real(*iv.lower, *iv.upper);
      const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(Eigen::MatrixXd::Random(m, m)).householderQ();
      const Eigen::MatrixXd x = q * spectrum.asDiagonal() * q.transpose();
      EXPECT_GE(min_eigenvalue(eval_tuple(l2, std::vector<Eigen::MatrixXd>{x})), -1e-9) << "trial " << trial;
    }
  }
  EXPECT_GE(found, 25);
}

// ---------------------------------------------------------------- simplex

LinearPencil standard_simplex() { return diag_pencil({af({"0", "1", "0"}), af({"0", "0", "1"}), af({"1", "-1", "-1"})}); }

TEST(SimplexTest, SumOfCoordinates) {
  const LinearPencil l1 = standard_simplex();
  const LinearPencil l2 = LinearPencil::scalar(af({"0", "1", "1"}));
  const EngineCertificate c = certify_simplex(l1, l2);
  EXPECT_EQ(c.path, EnginePath::Simplex);
  ASSERT_TRUE(c.is_exact());
  EXPECT_TRUE(verify(l1, l2, *c.exact).pass);
}

TEST(SimplexTest, FacetTimesIdentity) {
  const LinearPencil l1 = standard_simplex();
  const LinearPencil l2({QMatrix::identity(2), QMatrix::identity(2) * Rational(-1), QMatrix::identity(2) * Rational(-1)});
  const EngineCertificate c = certify_simplex(l1, l2);
  ASSERT_TRUE(c.is_exact());
  EXPECT_TRUE(verify(l1, l2, *c.exact).pass);
}

TEST(SimplexTest, SquareIsNotSimplex) {
  const LinearPencil square = diag_pencil({af({"0", "1", "0"}), af({"1", "-1", "0"}), af({"0", "0", "1"}), af({"1", "0", "-1"})});
  EXPECT_THROW(certify_simplex(square, LinearPencil::scalar(af({"1", "0", "0"}))), NotSimplex);
}

// ---------------------------------------------------------------- dispatcher

TEST(AutoTest, IdentityWhenEqual) {
  const EngineCertificate c = certify_auto(example1_l1(), example1_l1());
  EXPECT_EQ(c.path, EnginePath::Identity);
  EXPECT_TRUE(c.is_exact());
}

TEST(AutoTest, UnboundedInstanceHasNoPath) {
  try {
    certify_auto(example1_l1(), example1_l2());
    FAIL() << "expected NoPathFound";
  } catch (const NoPathFound& e) {
    EXPECT_EQ(e.status(), SearchStatus::Infeasible);
    ASSERT_TRUE(e.refutation());
    EXPECT_TRUE(e.refutation()->exact);
  }
}

TEST(AutoTest, SingletonInstanceHasNoPath) {
  try {
    certify_auto(example2_l1(), example2_l2());
    FAIL() << "expected NoPathFound";
  } catch (const NoPathFound& e) {
    EXPECT_EQ(e.status(), SearchStatus::Infeasible);
    ASSERT_TRUE(e.refutation());
  }
}

TEST(AutoTest, PathsByRegion) {
  EXPECT_EQ(certify_auto(standard_simplex(), LinearPencil::scalar(af({"0", "1", "1"}))).path, EnginePath::AlgebraSpan);
  const LinearPencil square = diag_pencil({af({"0", "1", "0"}), af({"1", "-1", "0"}), af({"0", "0", "1"}), af({"1", "0", "-1"})});
  EXPECT_EQ(certify_auto(square, LinearPencil::scalar(af({"1", "0", "0"}))).path, EnginePath::DiagonalBounded);
  const LinearPencil point = diag_pencil({af({"0", "1"}), af({"0", "-1"})});
  EXPECT_EQ(certify_auto(point, LinearPencil::scalar(af({"1", "3"}))).path, EnginePath::Singleton);
  const LinearPencil empty = diag_pencil({af({"-1", "1"}), af({"0", "-1"})});
  EXPECT_EQ(certify_auto(empty, LinearPencil::scalar(af({"-5", "2"}))).path, EnginePath::EmptyRegion);
  EXPECT_EQ(certify_auto(LinearPencil::scalar(af({"0", "1"})), LinearPencil::scalar(af({"1", "1"}))).path,
            EnginePath::OneVariableHalfLine);
}

TEST(AutoTest, PositivityFailure) {
  const LinearPencil l1 = diag_pencil({af({"1", "1"}), af({"1", "-1"})});
  EXPECT_THROW(certify_auto(l1, LinearPencil::scalar(af({"0", "1"}))), PositivityFailed);
}

TEST(AutoProperty, DiagonalBoundedRoundTrip) {
  Fuzzer fz(77);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = static_cast<std::size_t>(fz.integer(1, 2));
    const std::size_t l = static_cast<std::size_t>(fz.integer(1, 3));
    // Box with one random extra cut through the interior.
    std::vector<AffineFunctional> entries;
    for (std::size_t i = 0; i < n; ++i) {
      AffineFunctional lo = AffineFunctional::coordinate(n, i);
      lo.a0 = 1;
      AffineFunctional hi = Rational(-1) * AffineFunctional::coordinate(n, i);
      hi.a0 = 1;
      entries.push_back(lo);
      entries.push_back(hi);
    }
    AffineFunctional cut = AffineFunctional::constant(n, 2);
    for (auto& a : cut.linear) a = fz.rational(2, 2);
    entries.push_back(cut);
    const LinearPencil l1 = diag_pencil(entries);
    ExactCertificate truth(l1.d(), l, n);
    truth.add_pencil(Rational(fz.integer(1, 3)), fz.matrix(l1.d(), l, 3, 1));
    truth.add_sos(Rational(1), QMatrix::identity(l));
    const QMatrixPoly e = expand(truth, l1);
    std::vector<QMatrix> c2{e.coeff(Monomial(n, 0))};
    for (std::size_t i = 0; i < n; ++i) c2.push_back(e.coeff(unit_monomial(n, i)));
    const LinearPencil l2(c2);
    const EngineCertificate c = certify_auto(l1, l2);
    EXPECT_TRUE(passes(c, l1, l2)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace spectra
