#include <gtest/gtest.h>

#include "spectra/conic.hpp"
#include "spectra/exact_linalg.hpp"
#include "spectra/sdp.hpp"
#include "test_util.hpp"

namespace spectra {
namespace {

using testing::af;
using testing::Fuzzer;
using testing::Q;
using testing::qdiag;
using testing::qm;

LinearPencil interval() { return LinearPencil::from_diagonal({af({"1", "1"}), af({"1", "-1"})}); }

TEST(ConicTest, SvecPreservesInnerProducts) {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 1, 2, 2, 3;
  b << 4, -1, -1, 5;
  EXPECT_NEAR(svec(a).dot(svec(b)), (a * b).trace(), 1e-12);
  EXPECT_TRUE(smat(svec(a), 2).isApprox(a));
}

TEST(ConicTest, DykstraFindsInteriorPoint) {
  // X 2×2 PSD with X11 + X22 = 2, X12 = 1/2.
  ConeLayout layout{{2}, 0};
  Eigen::MatrixXd a(2, 3);
  a << 1, 0, 1, 0, 1 / std::sqrt(2.0), 0;
  Eigen::VectorXd b(2);
  b << 2, 0.5;
  bool consistent = false;
  auto affine = AffineSubspace::from_equations(a, b, &consistent);
  ASSERT_TRUE(consistent);
  DykstraResult r = dykstra(layout, affine);
  EXPECT_EQ(r.status, DykstraStatus::Feasible);
  EXPECT_NEAR((a * r.x - b).norm(), 0, 1e-12);
}

TEST(ConicTest, DykstraStallsOnInfeasible) {
  // X11 = -1 is impossible.
  ConeLayout layout{{1}, 0};
  Eigen::MatrixXd a(1, 1);
  a << 1;
  Eigen::VectorXd b(1);
  b << -1;
  auto affine = AffineSubspace::from_equations(a, b, nullptr);
  DykstraOptions opt;
  opt.max_iterations = 5000;
  opt.stall_window = 100;
  EXPECT_NE(dykstra(layout, affine, opt).status, DykstraStatus::Feasible);
}

TEST(ConicTest, InteriorPointReachesBoundaryFace) {
  // X 2×2 PSD with X11 = 1, X22 = 1, X12 = 1: only the rank-one point.
  ConeLayout layout{{2}, 0};
  Eigen::MatrixXd a(3, 3);
  a << 1, 0, 0, 0, 0, 1, 0, 1 / std::sqrt(2.0), 0;
  Eigen::VectorXd b(3);
  b << 1, 1, 1;
  InteriorPointResult r = interior_point(layout, a, b);
  EXPECT_LE(r.primal_residual, 1e-9);
  EXPECT_NEAR(smat(r.x, 2)(0, 1), 1.0, 1e-5);
}

TEST(ConstantSearchTest, IntervalGivesHalfHalf) {
  SearchResult r = constant_certificate_search(interval(), LinearPencil::scalar(af({"1", "0"})));
  ASSERT_EQ(r.status, SearchStatus::Feasible);
  ASSERT_EQ(r.gram.rows(), 2);
  EXPECT_NEAR(r.gram(0, 0), 0.5, 1e-9);
  EXPECT_NEAR(r.gram(1, 1), 0.5, 1e-9);
  EXPECT_NEAR(r.gram(0, 1), 0.0, 1e-9);
  ASSERT_TRUE(r.exact);
  ASSERT_EQ(r.exact->pencil.size(), 2u);
  EXPECT_EQ(r.exact->pencil[0].weight + r.exact->pencil[1].weight, 1);
  EXPECT_TRUE(verify(interval(), LinearPencil::scalar(af({"1", "0"})), *r.exact).pass);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(ConstantSearchTest, MonicIdentity) {
  LinearPencil l({QMatrix::identity(2), qm({{"1", "1"}, {"1", "0"}}), qdiag({"0", "1"})});
  SearchResult r = constant_certificate_search(l, l);
  ASSERT_EQ(r.status, SearchStatus::Feasible);
  EXPECT_TRUE(verify(l, l, *r.numeric).pass);
  ASSERT_TRUE(r.exact);
  EXPECT_TRUE(verify(l, l, *r.exact).pass);
}

TEST(ConstantSearchTest, UnboundedInstanceIsInfeasibleWithExactWitness) {
  SearchResult r = constant_certificate_search(example1_l1(), example1_l2());
  ASSERT_EQ(r.status, SearchStatus::Infeasible);
  ASSERT_TRUE(r.refutation);
  EXPECT_FALSE(r.numeric);
  EXPECT_TRUE(r.refutation->exact);
  EXPECT_LT(r.refutation->witness_value, 0);
  EXPECT_TRUE(check_refutation(example1_l1(), example1_l2(), *r.refutation));
}

TEST(RefuteUnboundedInstanceTest, ChainAndDeterminant) {
  RefutationReport rep = refute_example1();
  ASSERT_TRUE(rep.chain);
  const AmGmChain& c = *rep.chain;
  EXPECT_EQ(c.equations.size(), 9u);
  EXPECT_EQ(c.sum_p_squared, Q("2/3"));
  EXPECT_EQ(c.sum_r_squared, Q("2/3"));
  EXPECT_EQ(c.sum_pr, Q("3/4"));
  EXPECT_EQ(c.mean, Q("2/3"));
  EXPECT_LT(c.mean, c.sum_pr);
  EXPECT_EQ(c.det_constant, Q("5/48"));
  EXPECT_EQ(c.det_linear, Q("2/9"));
  EXPECT_EQ(c.det_product, Q("1/9"));
  EXPECT_TRUE(c.det_identity_holds);
  EXPECT_EQ(rep.status, SearchStatus::Infeasible);
  EXPECT_TRUE(rep.exact);
  EXPECT_EQ(rep.witness_value, Q("-1/6"));
  EXPECT_TRUE(check_refutation(example1_l1(), example1_l2(), rep));
}

TEST(RefuteTest, UnboundedInstanceAtDegreeOne) {
  SearchResult r = refute(example1_l1(), example1_l2(), 1);
  ASSERT_EQ(r.status, SearchStatus::Infeasible);
  EXPECT_TRUE(r.refutation->chain.has_value());
  EXPECT_TRUE(check_refutation(example1_l1(), example1_l2(), *r.refutation));
}

TEST(RefuteTest, SingletonInstanceAtDegreeThree) {
  SearchResult r = refute(example2_l1(), example2_l2(), 3);
  ASSERT_EQ(r.status, SearchStatus::Infeasible);
  ASSERT_TRUE(r.refutation);
  EXPECT_TRUE(r.refutation->exact);
  EXPECT_EQ(r.refutation->witness_value, -1);
  bool constant_step = false, x_step = false;
  for (const auto& line : r.refutation->trace) {
    constant_step = constant_step || line.find("coefficient of 1,") != std::string::npos;
    x_step = x_step || line.find("coefficient of x1,") != std::string::npos;
  }
  EXPECT_TRUE(constant_step);
  EXPECT_TRUE(x_step);
  EXPECT_TRUE(check_refutation(example2_l1(), example2_l2(), *r.refutation));
  for (unsigned d = 0; d < 3; ++d) EXPECT_EQ(degree_bounded_search(example2_l1(), example2_l2(), d).status, SearchStatus::Infeasible);
}

TEST(RefuteTest, TamperedWitnessIsRejected) {
  RefutationReport rep = refute_example1();
  rep.witness[{0, 0}] = qm({{"1", "0"}, {"0", "-1"}});
  EXPECT_FALSE(check_refutation(example1_l1(), example1_l2(), rep));
}

TEST(DegreeSearchTest, EmptyRegionNeedsDegreeOne) {
  // {x − 1 ≥ 0, −x ≥ 0} is empty.
  LinearPencil l1 = LinearPencil::from_diagonal({af({"-1", "1"}), af({"0", "-1"})});
  LinearPencil l2({qm({{"0", "1"}, {"1", "-2"}}), qm({{"1", "0"}, {"0", "-3"}})});
  SearchResult r = degree_bounded_search(l1, l2, 1);
  ASSERT_EQ(r.status, SearchStatus::Feasible);
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_LE(r.numeric->degree(), 1u);
}

TEST(DegreeSearchTest, MonotoneInDegree) {
  SearchResult r0 = degree_bounded_search(interval(), LinearPencil::scalar(af({"3", "1"})), 0);
  SearchResult r1 = degree_bounded_search(interval(), LinearPencil::scalar(af({"3", "1"})), 1);
  EXPECT_EQ(r0.status, SearchStatus::Feasible);
  EXPECT_EQ(r1.status, SearchStatus::Feasible);
  EXPECT_TRUE(verify(interval(), LinearPencil::scalar(af({"3", "1"})), *r1.numeric).pass);
}

TEST(ExtractFactorsTest, Examples) {
  Eigen::MatrixXd c = Eigen::MatrixXd::Identity(2, 2) * 0.5;
  auto fs = extract_factors(c, 2, 1);
  ASSERT_EQ(fs.size(), 2u);
  for (const auto& f : fs) EXPECT_NEAR(f.weight, 0.5, 1e-12);
  EXPECT_NEAR(std::abs(fs[0].factor(0, 0)) + std::abs(fs[1].factor(0, 0)), 1.0, 1e-12);

  Eigen::VectorXd v(4);
  v << 1, 2, -1, 0.5;
  EXPECT_EQ(extract_factors(v * v.transpose(), 2, 2).size(), 1u);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(1, 1) = -1;
  EXPECT_THROW(extract_factors(bad, 2, 1), NotPSD);
}

TEST(ExtractFactorsTest, RandomPsdReconstructs) {
  Fuzzer fz(61);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = static_cast<std::size_t>(fz.integer(1, 6));
    const QMatrix cq = fz.psd(6, r);
    Eigen::MatrixXd c = to_eigen(cq);
    auto fs = extract_factors(c, 3, 2);
    EXPECT_EQ(fs.size(), rank(cq));
    Eigen::MatrixXd back = Eigen::MatrixXd::Zero(6, 6);
    for (const auto& f : fs) {
      Eigen::VectorXd v(6);
      for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t p = 0; p < 2; ++p) v(static_cast<Eigen::Index>(a * 2 + p)) = f.factor(a, p);
      back += f.weight * v * v.transpose();
    }
    EXPECT_LE((back - c).cwiseAbs().maxCoeff(), 1e-9 * std::max(1.0, c.norm()));
  }
}

TEST(RationalizeTest, Examples) {
  LinearPencil one = LinearPencil::scalar(af({"1", "0"}));
  NumericCertificate c(2, 1, 1);
  c.add_pencil(0.49999999, DMatrix::column({1.0, 0.0}));
  c.add_pencil(0.5, DMatrix::column({0.0, 1.0}));
  auto e = rationalize_certificate(c, interval(), one);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->pencil[0].weight, Q("1/2"));
  EXPECT_TRUE(verify(interval(), one, *e).pass);

  ExactCertificate exact(2, 1, 1);
  exact.add_pencil(Q("1/2"), qm({{"1"}, {"0"}}));
  exact.add_pencil(Q("1/2"), qm({{"0"}, {"1"}}));
  auto same = rationalize_certificate(to_numeric(exact), interval(), one);
  ASSERT_TRUE(same);
  EXPECT_EQ(same->pencil[0].weight, exact.pencil[0].weight);
  EXPECT_EQ(same->pencil[1].factor, exact.pencil[1].factor);

  // L2's constant term is a rounding of [[1, √2], [√2, 2]] that is not PSD;
  // only the √2 factor fits it.
  LinearPencil point = LinearPencil::from_diagonal({af({"0", "1"}), af({"0", "-1"})});
  LinearPencil l2({qm({{"1", "1414213563/1000000000"}, {"1414213563/1000000000", "2"}}), qm({{"0", "0"}, {"0", "0"}})});
  NumericCertificate s(2, 2, 1);
  s.add_sos(1.0, DMatrix::from_rows({{1.0, std::sqrt(2.0)}}));
  ASSERT_TRUE(verify(point, l2, s).pass);
  EXPECT_FALSE(rationalize_certificate(s, point, l2));
}

TEST(SdpProperty, SynthesizedInstancesRoundTrip) {
  Fuzzer fz(62);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(fz.integer(1, 2));
    const std::size_t d = static_cast<std::size_t>(fz.integer(1, 3));
    const std::size_t l = static_cast<std::size_t>(fz.integer(1, 3));
    std::vector<QMatrix> coeffs{fz.symmetric(d, 3, 2)};
    for (std::size_t i = 0; i < n; ++i) coeffs.push_back(fz.symmetric(d, 3, 2));
    LinearPencil l1(coeffs);
    ExactCertificate truth(d, l, n);
    for (int k = 0; k < 2; ++k) truth.add_pencil(Rational(fz.integer(1, 3)), fz.matrix(d, l, 3, 1));
    LinearPencil l2 = l1;
    {
      QMatrixPoly e = expand(truth, l1);
      std::vector<QMatrix> c2;
      for (std::size_t i = 0; i <= n; ++i) c2.push_back(e.coeff(i == 0 ? Monomial(n, 0) : unit_monomial(n, i - 1)));
      l2 = LinearPencil(c2);
    }
    SearchResult r = constant_certificate_search(l1, l2);
    ASSERT_EQ(r.status, SearchStatus::Feasible) << "trial " << trial;
    EXPECT_LE(verify(l1, l2, *r.numeric).residual, 1e-8);
    EXPECT_FALSE(r.refutation);
  }
}

}  // namespace
}  // namespace spectra
