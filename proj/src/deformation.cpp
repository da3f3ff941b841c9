#include "kmnv/deformation.hpp"

#include <cmath>

#include "kmnv/util.hpp"

namespace kmnv {
namespace deformation {

namespace {

bool is_zero(const Expr& e) { return e.is_literal() && e.literal_value() == 0.0; }

Expr sum(Expr a, Expr b) {
  if (is_zero(a)) return b;
  if (is_zero(b)) return a;
  return Expr::add(std::move(a), std::move(b));
}

Expr product(Expr a, Expr b) {
  if (is_zero(a) || is_zero(b)) return Expr::number(0.0);
  if (a.is_literal() && a.literal_value() == 1.0) return b;
  if (b.is_literal() && b.literal_value() == 1.0) return a;
  return Expr::mul(std::move(a), std::move(b));
}

int xi_leg_index(const ManifoldSpec& spec) {
  int leg = -1;
  for (int i = 0; i < spec.dimension; ++i) {
    const double v = spec.xi_frame[i];
    if (v == 0.0) continue;
    if (leg >= 0 || std::abs(v - 1.0) > 1e-12)
      throw ValidationError(spec.name +
                            ": frame deformation requires xi to be a frame leg");
    leg = i;
  }
  if (leg < 0)
    throw ValidationError(spec.name + ": xi is zero, nothing to deform");
  return leg;
}

}  // namespace

ManifoldSpec deform(const ManifoldSpec& spec, double a) {
  if (!(a > 0.0)) throw ValidationError("deformation parameter must be positive");
  spec.validate();
  ManifoldSpec out = spec;
  out.name = deformed_name(spec.name, a);
  out.note = "structure rescaling of '" + spec.name +
             "' with a = " + util::format_double(a);

  if (spec.backend == Backend::OrthonormalFrame) {
    const int xi_leg = xi_leg_index(spec);
    // Doubled leg exponents: transverse legs scale by a^(-1/2), xi by a^(-1).
    auto half_exp = [xi_leg](int m) { return m == xi_leg ? -2 : -1; };
    for (auto& sc : out.structure_constants) {
      const int e2 = half_exp(sc.i) + half_exp(sc.j) - half_exp(sc.k);
      if (e2 != 0) sc.value *= std::pow(a, 0.5 * static_cast<double>(e2));
    }
    // phi and xi keep their frame components: the legs rescale along with
    // their images, and the xi leg is rescaled to represent xi' itself.
    return out;
  }

  const auto d = static_cast<std::size_t>(spec.dimension);
  // eta_i = sum_k g_ik xi^k, built symbolically from the declared fields.
  std::vector<Expr> eta(d, Expr::number(0.0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      eta[i] = sum(eta[i], product(spec.metric[i][k], spec.xi[k]));

  const Expr ea = Expr::number(a);
  const Expr eaa1 = Expr::number(a * (a - 1.0));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j)
      out.metric[i][j] =
          sum(product(ea, spec.metric[i][j]), product(eaa1, product(eta[i], eta[j])));
    out.xi[i] = is_zero(spec.xi[i]) ? Expr::number(0.0)
                                    : Expr::div(spec.xi[i], Expr::number(a));
  }
  return out;
}

PredictedInvariants predict(double kappa, double mu, double nu, double F, double a) {
  PredictedInvariants out;
  out.kappa = (kappa + a * a - 1.0) / (a * a);
  out.mu = (mu + 2.0 * a - 2.0) / a;
  out.nu = nu / a;
  out.F = F / a - ((a - 1.0) / (a * a)) * (3.0 * a + 1.0 - kappa);
  out.h_scale = 1.0 / a;
  return out;
}

PredictedDim3Coefficients predict_dim3_coefficients(double kappa, double mu,
                                                    double nu, double F, double a) {
  PredictedDim3Coefficients out;
  const PredictedInvariants inv = predict(kappa, mu, nu, F, a);
  out.f1 = inv.F;
  out.f3 = F / a + ((a - 2.0) * kappa - 4.0 * a * a + 2.0 * a + 2.0) / (a * a);
  out.f4 = (mu + 2.0 * a - 2.0) / a;
  out.f7 = nu / a;
  return out;
}

std::string deformed_name(const std::string& base, double a) {
  std::string s = util::format_double(a);
  std::string cleaned;
  for (char ch : s)
    if (ch != '.') cleaned.push_back(ch);
  return base + "-a" + cleaned;
}

}  // namespace deformation
}  // namespace kmnv
