#include "hypiso/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "hypiso/errors.hpp"
#include "hypiso/format.hpp"
#include "gsl_bridge.hpp"

namespace hypiso {
namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

// Per-thread pool of workspaces. Nested integrals (an integrand that itself
// integrates) each lease their own.
class WorkspaceLease {
 public:
  explicit WorkspaceLease(std::size_t limit) {
    auto& pool = free_list();
    for (auto it = pool.begin(); it != pool.end(); ++it) {
      if ((*it)->limit >= limit) {
        ws_ = std::move(*it);
        pool.erase(it);
        return;
      }
    }
    ws_.reset(gsl_integration_workspace_alloc(limit));
    if (!ws_) throw std::bad_alloc();
  }
  ~WorkspaceLease() { free_list().push_back(std::move(ws_)); }
  WorkspaceLease(const WorkspaceLease&) = delete;
  WorkspaceLease& operator=(const WorkspaceLease&) = delete;

  gsl_integration_workspace* get() const { return ws_.get(); }

 private:
  static std::vector<Workspace>& free_list() {
    thread_local std::vector<Workspace> pool;
    return pool;
  }
  Workspace ws_;
};

std::string interval(double a, double b) { return "[" + format_double(a) + ", " + format_double(b) + "]"; }

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1)
    throw DomainError("quadrature tolerances must be positive");
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (a == b) return {};
  if (b < a) {
    auto r = integrate(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  detail::use_gsl_status_codes();

  const auto limit = static_cast<std::size_t>(spec.max_subdivisions);
  WorkspaceLease ws(limit);
  detail::GslCallback cb(f);
  double value = 0.0, error = 0.0;
  const int status =
      gsl_integration_qag(cb.get(), a, b, spec.abs_tol, spec.rel_tol, limit, GSL_INTEG_GAUSS15, ws.get(), &value, &error);
  cb.rethrow_if_failed();
  if (cb.non_finite())
    throw QuadratureError("non-finite integrand on " + interval(a, b), value, std::numeric_limits<double>::infinity());
  if (status != GSL_SUCCESS)
    throw QuadratureError("adaptive quadrature did not converge on " + interval(a, b) + " (" + gsl_strerror(status) +
                              "): error estimate " + format_double(error),
                          value, error);
  return {value, error, static_cast<int>(ws.get()->size)};
}

double integrate_log(const Integrand& log_f, double a, double b, const QuadratureSpec& spec) {
  if (a == b) return -std::numeric_limits<double>::infinity();
  constexpr int kSamples = 64;
  double peak = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    peak = std::max(peak, log_f(x));
  }
  if (!std::isfinite(peak)) return -std::numeric_limits<double>::infinity();
  QuadratureSpec scaled = spec;
  scaled.abs_tol = std::min(spec.abs_tol, 1e-300);
  const auto r = integrate([&](double x) { return std::exp(log_f(x) - peak); }, a, b, scaled);
  if (r.value <= 0.0) return -std::numeric_limits<double>::infinity();
  return peak + std::log(r.value);
}

}  // namespace hypiso
