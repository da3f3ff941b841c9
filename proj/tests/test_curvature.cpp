#include <Eigen/Dense>

#include "doctest.h"
#include "kmnv/curvature.hpp"
#include "kmnv/registry.hpp"

using namespace kmnv;

namespace {
Eigen::Vector3d v3(double a, double b, double c) { return Eigen::Vector3d(a, b, c); }
}  // namespace

TEST_CASE("flat space: Riemann, Ricci, scalar all vanish") {
  for (const char* name : {"euclidean-r3", "euclidean-r5"}) {
    CAPTURE(name);
    Geometry geo(registry::find(name)->spec);
    Curvature c(geo, geo.sample_points().front());
    const int n = c.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) CHECK(c.riemann(i, j).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(c.ricci().cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(c.scalar()) < 1e-10);
  }
}

TEST_CASE("frame Koszul connection on the non-Sasakian group") {
  // For [E1,E2] = 2E3, [E1,E3] = -E2, [E2,E3] = 0:
  // omega^k_ij = (c^k_ij - c^i_jk + c^j_ki)/2 gives
  //   nabla_{E1} E2 = (3/2) E3, nabla_{E1} E3 = -(3/2) E2,
  //   nabla_{E2} E1 = -(1/2) E3, nabla_{E2} E3 = (1/2) E1,
  //   nabla_{E3} E1 = -(1/2) E2, nabla_{E3} E2 = (1/2) E1.
  Geometry geo(registry::find("ns-lambda05")->spec);
  Curvature c(geo, Eigen::Vector3d::Zero());
  CHECK((c.gamma(0).col(1) - v3(0, 0, 1.5)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((c.gamma(0).col(2) - v3(0, -1.5, 0)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((c.gamma(1).col(0) - v3(0, 0, -0.5)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((c.gamma(1).col(2) - v3(0.5, 0, 0)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((c.gamma(2).col(0) - v3(0, -0.5, 0)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((c.gamma(2).col(1) - v3(0.5, 0, 0)).cwiseAbs().maxCoeff() < 1e-14);
  // Torsion-free: nabla_{Ei} Ej - nabla_{Ej} Ei = [Ei, Ej].
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK((c.gamma(i).col(j) - c.gamma(j).col(i) - geo.spec().bracket(i, j))
                .cwiseAbs()
                .maxCoeff() < 1e-14);
}

TEST_CASE("curvature oracles on the non-Sasakian group") {
  Geometry geo(registry::find("ns-lambda05")->spec);
  Curvature c(geo, Eigen::Vector3d::Zero());
  // Transverse-xi plane: R(E1, E3)E3 = (kappa + mu/2) E1 = 1.25 E1.
  CHECK((c.riemann(0, 2).col(2) - v3(1.25, 0, 0)).cwiseAbs().maxCoeff() < 1e-13);
  // phi-plane: R(E1, E2)E2 = F E1 = -1.75 E1.
  CHECK((c.riemann(0, 1).col(1) - v3(-1.75, 0, 0)).cwiseAbs().maxCoeff() < 1e-13);
  // Ricci operator is diagonal (-1/2, -3/2, 3/2); scalar curvature -1/2.
  CHECK((c.ricci() - v3(-0.5, -1.5, 1.5).asDiagonal().toDenseMatrix())
            .cwiseAbs()
            .maxCoeff() < 1e-13);
  CHECK(c.scalar() == doctest::Approx(-0.5).epsilon(1e-13));
  CHECK(c.sectional(v3(1, 0, 0), v3(0, 0, 1)) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(c.phi_sectional(v3(1, 0, 0)) == doctest::Approx(-1.75).epsilon(1e-12));
  // phi_sectional projects out the xi component first.
  CHECK(c.phi_sectional(v3(1, 0, 0.6)) == doctest::Approx(-1.75).epsilon(1e-12));
}

TEST_CASE("curvature oracles on the Heisenberg frame") {
  Geometry geo(registry::find("heisenberg-frame")->spec);
  Curvature c(geo, Eigen::VectorXd::Zero(5));
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(5, 0);
  // phi-plane sectional: R(E1, E3)E3 = -3 E1.
  CHECK((c.riemann(0, 2).col(2) + 3.0 * e1).cwiseAbs().maxCoeff() < 1e-13);
  // xi-plane: R(E1, E5)E5 = E1 (kappa = 1).
  CHECK((c.riemann(0, 4).col(4) - e1).cwiseAbs().maxCoeff() < 1e-13);
  // Orthogonal transverse planes are curvature-flat here.
  CHECK(c.riemann(0, 1).col(1).cwiseAbs().maxCoeff() < 1e-13);
  // Q = -2I + 6 eta (x) xi; tau = -4.
  Eigen::MatrixXd expected_q = -2.0 * Eigen::MatrixXd::Identity(5, 5);
  expected_q(4, 4) = 4.0;
  CHECK((c.ricci() - expected_q).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(c.scalar() == doctest::Approx(-4.0).epsilon(1e-13));
  CHECK(c.phi_sectional(e1) == doctest::Approx(-3.0).epsilon(1e-12));
}

TEST_CASE("Sasakian chart: constant invariants across the patch") {
  Geometry geo(registry::find("sasakian-r3")->spec);
  for (const Eigen::VectorXd& p :
       {v3(0, 0, 0), v3(0.5, -0.6, 0.3), v3(-0.7, 0.7, -0.7)}) {
    CAPTURE(p.transpose());
    Curvature c(geo, p);
    const PointData& d = c.point();
    CHECK(c.scalar() == doctest::Approx(-2.0).epsilon(1e-7));
    // Any transverse direction has phi-sectional curvature -3.
    CHECK(c.phi_sectional(v3(1, 0, 0)) == doctest::Approx(-3.0).epsilon(1e-6));
    CHECK(c.phi_sectional(v3(0.3, 1.1, 0.2)) == doctest::Approx(-3.0).epsilon(1e-6));
    // R(X, Y) xi = eta(Y) X - eta(X) Y for the Sasakian structure.
    const Eigen::VectorXd X = v3(1, 0.5, -0.25), Y = v3(-0.5, 2, 0.75);
    const double etaX = d.eta.dot(X), etaY = d.eta.dot(Y);
    CHECK((c.r(X, Y, d.xi) - (etaY * X - etaX * Y)).cwiseAbs().maxCoeff() < 1e-7);
  }
}

TEST_CASE("chart and frame backends agree on the same manifold") {
  Geometry frame(registry::find("ns-lambda05")->spec);
  Curvature cf(frame, Eigen::Vector3d::Zero());
  Geometry chart(registry::find("ns-chart-lambda05")->spec);
  // The chart carries its own moving frame, so compare chart-invariant
  // quantities: scalar curvature, Ricci eigenvalues, phi-sectional curvature.
  for (const Eigen::VectorXd& p : {v3(0, 0, 0), v3(0.4, -0.2, 0.5)}) {
    CAPTURE(p.transpose());
    Curvature cc(chart, p);
    CHECK(cc.scalar() == doctest::Approx(cf.scalar()).epsilon(1e-7));
    const PointData& d = cc.point();
    // Operator eigenvalues of Q: generalized problem (gQ) x = lambda g x,
    // since the lowered tensor gQ is symmetric and g is positive definite.
    const Eigen::MatrixXd gq = 0.5 * (d.g * cc.ricci() + (d.g * cc.ricci()).transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> chart_es(gq, d.g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> frame_es(cf.ricci());
    CHECK((chart_es.eigenvalues() - frame_es.eigenvalues()).cwiseAbs().maxCoeff() <
          1e-7);
    CHECK(cc.phi_sectional(d.phi.col(0).norm() > 0.5 ? Eigen::VectorXd(v3(1, 0, 0))
                                                     : Eigen::VectorXd(v3(0, 1, 0))) ==
          doctest::Approx(-1.75).epsilon(1e-6));
  }
}

TEST_CASE("curvature symmetries hold numerically") {
  Geometry geo(registry::find("sasakian-r3")->spec);
  Curvature c(geo, v3(0.3, 0.2, -0.4));
  const PointData& d = c.point();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const auto ei = Eigen::Vector3d::Unit(i), ej = Eigen::Vector3d::Unit(j),
                   ek = Eigen::Vector3d::Unit(k);
        // First Bianchi.
        CHECK((c.r(ei, ej, ek) + c.r(ej, ek, ei) + c.r(ek, ei, ej))
                  .cwiseAbs()
                  .maxCoeff() < 1e-8);
        for (int l = 0; l < 3; ++l) {
          const auto el = Eigen::Vector3d::Unit(l);
          CHECK(c.r_lowered(ei, ej, ek, el) ==
                doctest::Approx(c.r_lowered(ek, el, ei, ej)).epsilon(1e-6).scale(1.0));
          CHECK(c.r_lowered(ei, ej, ek, el) ==
                doctest::Approx(-c.r_lowered(ei, ej, el, ek)).epsilon(1e-6).scale(1.0));
        }
      }
    }
  }
  (void)d;
}

TEST_CASE("sectional curvature rejects degenerate planes") {
  Geometry geo(registry::find("ns-lambda05")->spec);
  Curvature c(geo, Eigen::Vector3d::Zero());
  CHECK_THROWS_AS(c.sectional(v3(1, 1, 0), v3(2, 2, 0)), NumericError);
  CHECK_THROWS_AS(c.phi_sectional(v3(0, 0, 1)), NumericError);  // xi itself
}

TEST_CASE("covariant derivative of fields via the connection") {
  Geometry geo(registry::find("ns-lambda05")->spec);
  Curvature c(geo, Eigen::Vector3d::Zero());
  // nabla_{E_i} xi = -phi E_i - phi h E_i with h = diag(1/2, -1/2, 0).
  auto xi_field = [&geo](const Eigen::VectorXd& q) { return geo.xi_at(q); };
  const PointData& d = c.point();
  for (int i = 0; i < 3; ++i) {
    const Eigen::VectorXd lhs = c.covariant_vector_field(xi_field, i);
    const Eigen::VectorXd ei = Eigen::Vector3d::Unit(i);
    const Eigen::VectorXd rhs = -d.phi * ei - d.phi * (c.h() * ei);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
  // Operator field: nabla of the constant identity is zero.
  auto id_field = [](const Eigen::VectorXd&) {
    return Eigen::MatrixXd(Eigen::Matrix3d::Identity());
  };
  for (int i = 0; i < 3; ++i)
    CHECK(c.covariant_operator_field(id_field, i).cwiseAbs().maxCoeff() < 1e-10);
}
