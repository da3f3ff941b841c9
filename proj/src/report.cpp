#include "kmnv/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <sstream>

#include "json.hpp"

namespace kmnv {
namespace report {

namespace {

using nlohmann::json;

// NaN is not representable in JSON; emit null so consumers see "no value".
json num(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

const char* status_text(analysis::CheckStatus s) {
  switch (s) {
    case analysis::CheckStatus::Pass:
      return "pass";
    case analysis::CheckStatus::Fail:
      return "fail";
    default:
      return "skip";
  }
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json build(const analysis::Report& r) {
  json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["manifold"] = {
      {"name", r.manifold},
      {"dimension", r.dimension},
      {"backend", r.backend},
      {"sample_points", r.points},
      {"grid", r.grid},
      {"fd", {{"step", r.fd.step}, {"richardson", r.fd.richardson}}},
  };
  const auto& v = r.inv;
  j["invariants"] = {
      {"kappa", num(v.extraction.kappa)},
      {"mu", v.extraction.h_degenerate ? json(nullptr) : num(v.extraction.mu)},
      {"nu", v.extraction.h_degenerate ? json(nullptr) : num(v.extraction.nu)},
      {"lambda", num(v.extraction.lambda)},
      {"h_norm", num(v.extraction.h_norm)},
      {"h_degenerate", v.extraction.h_degenerate},
      {"xi_ansatz_residual", num(v.extraction.residual)},
      {"phi_sectional", num(v.F)},
      {"scalar_curvature", num(v.tau)},
      {"max_curvature", num(v.max_curvature)},
      {"contact", v.contact},
      {"contact_residual", num(v.contact_residual)},
      {"k_contact", v.k_contact},
      {"sasakian", v.sasakian},
      {"sasakian_residual", num(v.sasakian_residual)},
      {"curvature_flat", v.curvature_flat},
      {"conformally_flat", v.conformally_flat},
      {"conformal_residual", num(v.conformal_residual)},
      {"conformal_criterion", v.conformal_criterion},
  };
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc = {
        {"section", c.section},   {"name", c.name},
        {"identity", c.identity}, {"residual", num(c.residual)},
        {"tolerance", c.tolerance}, {"status", status_text(c.status)},
    };
    if (c.status == analysis::CheckStatus::Skipped) jc["skip_reason"] = c.skip_reason;
    checks.push_back(std::move(jc));
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"passed", r.passed},
                  {"failed", r.failed},
                  {"skipped", r.skipped},
                  {"all_pass", r.all_pass}};
  return j;
}

std::string short_num(double v) {
  if (std::isnan(v)) return "n/a";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

std::string to_json(const analysis::Report& r) {
  json j = build(r);
  j["content_hash"] = util::fnv1a_hex(j.dump());
  j["generated_at"] = utc_now();
  return j.dump(2) + "\n";
}

std::string to_text(const analysis::Report& r) {
  std::ostringstream os;
  const auto& v = r.inv;
  os << "manifold: " << r.manifold << "  (dim " << r.dimension << ", " << r.backend
     << ", " << r.points << " sample points, grid " << r.grid << ", fd step "
     << short_num(r.fd.step) << ")\n";
  os << "class: " << (v.contact ? (v.sasakian ? "Sasakian" : (v.k_contact ? "K-contact" : "contact metric"))
                                : "almost contact metric (not contact)")
     << "\n";
  os << "invariants:\n";
  os << "  kappa   = " << short_num(v.extraction.kappa);
  if (v.extraction.h_degenerate) {
    os << "   (h = 0: mu, nu not identifiable)\n";
  } else {
    os << "  mu = " << short_num(v.extraction.mu) << "  nu = " << short_num(v.extraction.nu)
       << "\n";
  }
  os << "  lambda  = " << short_num(v.extraction.lambda)
     << "   (|h| = " << short_num(v.extraction.h_norm) << ")\n";
  os << "  F       = " << short_num(v.F) << "   (phi-sectional curvature)\n";
  os << "  tau     = " << short_num(v.tau) << "   (scalar curvature)\n";
  os << "  flat    = " << (v.curvature_flat ? "yes" : "no")
     << "   conformally flat = " << (v.conformally_flat ? "yes" : "no") << "  ["
     << v.conformal_criterion << ", residual " << short_num(v.conformal_residual) << "]\n";
  os << "checks:\n";
  for (const auto& c : r.checks) {
    const char* mark = c.status == analysis::CheckStatus::Pass     ? "PASS"
                       : c.status == analysis::CheckStatus::Fail   ? "FAIL"
                                                                   : "SKIP";
    os << "  [" << mark << "] " << c.section << "/" << c.name;
    if (c.status == analysis::CheckStatus::Skipped) {
      os << "  (" << c.skip_reason << ")";
    } else {
      os << "  residual " << short_num(c.residual) << " <= " << short_num(c.tolerance);
    }
    os << "\n";
    os << "         " << c.identity << "\n";
  }
  os << "summary: " << r.passed << " passed, " << r.failed << " failed, " << r.skipped
     << " skipped -> " << (r.all_pass ? "OK" : "FAILED") << "\n";
  return os.str();
}

}  // namespace report
}  // namespace kmnv
