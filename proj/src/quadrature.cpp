#include "silt/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <string>

#include "silt/error.hpp"

namespace silt::quad {

namespace {

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};

double trampoline(double x, void* params) { return (*static_cast<const std::function<double(double)>*>(params))(x); }

Result finish(int status, double value, double err, const char* routine) {
  if (status != GSL_SUCCESS)
    throw QuadratureError(std::string(routine) + ": " + gsl_strerror(status), value, err);
  return {value, err};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b, Tolerance tol,
                 std::vector<double> breakpoints) {
  disable_gsl_abort();
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(tol.limit));
  gsl_function F{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double value = 0.0, err = 0.0;
  std::erase_if(breakpoints, [&](double p) { return !(p > a && p < b); });
  if (breakpoints.empty()) {
    const int status =
        gsl_integration_qag(&F, a, b, tol.abs, tol.rel, tol.limit, GSL_INTEG_GAUSS61, ws.get(), &value, &err);
    return finish(status, value, err, "qag");
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<double> pts{a};
  pts.insert(pts.end(), breakpoints.begin(), breakpoints.end());
  pts.push_back(b);
  const int status =
      gsl_integration_qagp(&F, pts.data(), pts.size(), tol.abs, tol.rel, tol.limit, ws.get(), &value, &err);
  return finish(status, value, err, "qagp");
}

Result integrate_real_line(const std::function<double(double)>& f, Tolerance tol) {
  disable_gsl_abort();
  std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter> ws(gsl_integration_workspace_alloc(tol.limit));
  gsl_function F{&trampoline, const_cast<std::function<double(double)>*>(&f)};
  double value = 0.0, err = 0.0;
  const int status = gsl_integration_qagi(&F, tol.abs, tol.rel, tol.limit, ws.get(), &value, &err);
  return finish(status, value, err, "qagi");
}

}  // namespace silt::quad
