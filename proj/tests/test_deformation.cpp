#include <Eigen/Dense>

#include "doctest.h"
#include "kmnv/analysis.hpp"
#include "kmnv/deformation.hpp"
#include "kmnv/kmn.hpp"
#include "kmnv/registry.hpp"

using namespace kmnv;

TEST_CASE("predicted invariant laws at frozen parameter values") {
  // Base: kappa = 3/4, mu = 1, nu = 0, F = -7/4.
  const auto p05 = deformation::predict(0.75, 1.0, 0.0, -1.75, 0.5);
  CHECK(p05.kappa == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(p05.mu == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(p05.F == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(p05.h_scale == 2.0);

  const auto p2 = deformation::predict(0.75, 1.0, 0.0, -1.75, 2.0);
  CHECK(p2.kappa == doctest::Approx(0.9375).epsilon(1e-15));
  CHECK(p2.mu == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p2.F == doctest::Approx(-2.4375).epsilon(1e-15));

  const auto p3 = deformation::predict(0.75, 1.0, 0.0, -1.75, 3.0);
  CHECK(p3.kappa == doctest::Approx(35.0 / 36.0).epsilon(1e-15));
  CHECK(p3.mu == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(p3.F == doctest::Approx(-95.0 / 36.0).epsilon(1e-15));

  // a = 1 is the identity on every invariant (up to float re-association).
  const auto p1 = deformation::predict(0.3, -0.7, 0.2, 1.1, 1.0);
  CHECK(p1.kappa == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(p1.mu == doctest::Approx(-0.7).epsilon(1e-15));
  CHECK(p1.nu == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(p1.F == doctest::Approx(1.1).epsilon(1e-15));
}

TEST_CASE("frame deformation rescales structure constants exactly") {
  const ManifoldSpec base = registry::find("ns-lambda05")->spec;
  const ManifoldSpec bent = deformation::deform(base, 2.0);
  CHECK(bent.name == "ns-lambda05-a2");
  REQUIRE(bent.structure_constants.size() == 2);
  // The contact normalization [E1, E2] = 2 E3 carries exponent zero: exact.
  CHECK(bent.structure_constants[0].value == 2.0);
  // c^2_13 scales by a^((e1 + e3 - e2)/2) = a^-1: -1 -> -0.5 exactly.
  CHECK(bent.structure_constants[1].value == -0.5);
  // phi and xi keep their frame components.
  CHECK((bent.phi_frame - base.phi_frame).norm() == 0.0);
  CHECK((bent.xi_frame - base.xi_frame).norm() == 0.0);
}

TEST_CASE("measured invariants of deformed frames match the laws") {
  const ManifoldSpec base = registry::find("ns-lambda05")->spec;
  for (const double a : {0.5, 2.0, 3.0, 1.3}) {
    CAPTURE(a);
    const auto pred = deformation::predict(0.75, 1.0, 0.0, -1.75, a);
    Geometry geo(deformation::deform(base, a));
    Curvature c(geo, Eigen::Vector3d::Zero());
    const auto e = kmn::extract(c);
    CHECK(e.kappa == doctest::Approx(pred.kappa).epsilon(1e-12).scale(1.0));
    if (!e.h_degenerate) {
      CHECK(e.mu == doctest::Approx(pred.mu).epsilon(1e-12).scale(1.0));
      CHECK(e.nu == doctest::Approx(pred.nu).epsilon(1e-12).scale(1.0));
    }
    CHECK(kmn::phi_sectional_invariant(c) ==
          doctest::Approx(pred.F).epsilon(1e-12).scale(1.0));
    CHECK(e.h_norm == doctest::Approx(0.5 * pred.h_scale).epsilon(1e-12));
  }
}

TEST_CASE("the a = 1/2 member lands on the flat contact structure") {
  Geometry geo(deformation::deform(registry::find("ns-lambda05")->spec, 0.5));
  Curvature c(geo, Eigen::Vector3d::Zero());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(c.riemann(i, j).cwiseAbs().maxCoeff() < 1e-13);
  CHECK(structure::contact_residual(geo, Eigen::Vector3d::Zero()) < 1e-13);
  CHECK(c.h().cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("composition: deform(a) then deform(b) equals deform(ab)") {
  const ManifoldSpec base = registry::find("ns-lambda05")->spec;
  const ManifoldSpec two_step =
      deformation::deform(deformation::deform(base, 2.0), 3.0);
  const ManifoldSpec one_step = deformation::deform(base, 6.0);
  CHECK(specs_equivalent(two_step, one_step, 1e-12));
  // The invariant laws compose the same way.
  const auto via_two = deformation::predict(
      deformation::predict(0.75, 1.0, 0.0, -1.75, 2.0).kappa,
      deformation::predict(0.75, 1.0, 0.0, -1.75, 2.0).mu,
      deformation::predict(0.75, 1.0, 0.0, -1.75, 2.0).nu,
      deformation::predict(0.75, 1.0, 0.0, -1.75, 2.0).F, 3.0);
  const auto direct = deformation::predict(0.75, 1.0, 0.0, -1.75, 6.0);
  CHECK(via_two.kappa == doctest::Approx(direct.kappa).epsilon(1e-12));
  CHECK(via_two.mu == doctest::Approx(direct.mu).epsilon(1e-12));
  CHECK(via_two.nu == doctest::Approx(direct.nu).epsilon(1e-12).scale(1.0));
  CHECK(via_two.F == doctest::Approx(direct.F).epsilon(1e-12));
}

TEST_CASE("chart deformation rewrites the metric and xi symbolically") {
  const ManifoldSpec base = registry::find("sasakian-r3")->spec;
  const ManifoldSpec bent = deformation::deform(base, 2.0);
  CHECK(bent.backend == Backend::CoordinateChart);
  Geometry geo_base(base), geo_bent(bent);
  const Eigen::VectorXd p = Eigen::Vector3d(0.3, -0.2, 0.5);
  const PointData db = geo_base.at(p), dd = geo_bent.at(p);
  // g-bar = a g + a(a-1) eta (x) eta, evaluated pointwise.
  const Eigen::MatrixXd expected =
      2.0 * db.g + 2.0 * (2.0 - 1.0) * db.eta * db.eta.transpose();
  CHECK((dd.g - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((dd.xi - db.xi / 2.0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((dd.phi - db.phi).cwiseAbs().maxCoeff() < 1e-12);
  // Deforming a Sasakian structure (h = 0) keeps kappa = 1.
  Curvature c(geo_bent, p);
  const auto e = kmn::extract(c);
  CHECK(e.kappa == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(e.h_norm < 1e-7);
}

TEST_CASE("deformed dim-3 coefficients: predicted f-bar is consistent") {
  for (const double a : {0.5, 2.0, 3.0}) {
    CAPTURE(a);
    const auto inv = deformation::predict(0.75, 1.0, 0.0, -1.75, a);
    const auto fb = deformation::predict_dim3_coefficients(0.75, 1.0, 0.0, -1.75, a);
    // f1-bar is F-bar; f1-bar - f3-bar = kappa-bar; f4-bar = mu-bar; f7 = nu-bar.
    CHECK(fb.f1 == doctest::Approx(inv.F).epsilon(1e-14).scale(1.0));
    CHECK(fb.f1 - fb.f3 == doctest::Approx(inv.kappa).epsilon(1e-12).scale(1.0));
    CHECK(fb.f4 == doctest::Approx(inv.mu).epsilon(1e-14).scale(1.0));
    CHECK(fb.f7 == doctest::Approx(inv.nu).epsilon(1e-14).scale(1.0));
    // And the fit on the deformed manifold reports those combinations.
    Geometry geo(deformation::deform(registry::find("ns-lambda05")->spec, a));
    Curvature c(geo, Eigen::Vector3d::Zero());
    const auto fit = kmn::fit_form(c);
    CHECK(fit.f[0] + 3.0 * fit.f[1] == doctest::Approx(fb.f1).epsilon(1e-10).scale(1.0));
    CHECK(fit.f[0] - fit.f[2] ==
          doctest::Approx(fb.f1 - fb.f3).epsilon(1e-10).scale(1.0));
    CHECK(fit.f[3] - fit.f[5] == doctest::Approx(fb.f4).epsilon(1e-10).scale(1.0));
    CHECK(fit.f[6] - fit.f[7] == doctest::Approx(fb.f7).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("invalid deformations are rejected") {
  const ManifoldSpec base = registry::find("ns-lambda05")->spec;
  CHECK_THROWS_AS(deformation::deform(base, 0.0), ValidationError);
  CHECK_THROWS_AS(deformation::deform(base, -2.0), ValidationError);
  // Frame deformation needs xi to be one of the frame legs.
  ManifoldSpec tilted = base;
  tilted.xi_frame = Eigen::Vector3d(0.0, 0.6, 0.8);
  CHECK_THROWS_AS(deformation::deform(tilted, 2.0), ValidationError);
}

TEST_CASE("deformed names strip the decimal point") {
  CHECK(deformation::deformed_name("ns-lambda05", 0.5) == "ns-lambda05-a05");
  CHECK(deformation::deformed_name("ns-lambda05", 2.0) == "ns-lambda05-a2");
  CHECK(deformation::deformed_name("x", 3.25) == "x-a325");
}

TEST_CASE("a deformed manifold passes the full battery") {
  analysis::VerifyOptions opt;
  const auto rep =
      analysis::verify(deformation::deform(registry::find("ns-lambda05")->spec, 1.7), opt);
  CHECK(rep.all_pass);
  CHECK(rep.failed == 0);
}
