#pragma once

// Adapters between std::function callables and GSL's C callbacks.

#include <gsl/gsl_errno.h>
#include <gsl/gsl_math.h>

#include <cmath>
#include <exception>
#include <functional>

namespace hypiso::detail {

/// GSL aborts on error by default; the library reports through status codes.
inline void use_gsl_status_codes() {
  static const bool once = (gsl_set_error_handler_off(), true);
  (void)once;
}

/// Wraps a callable so that exceptions and non-finite values are recorded
/// instead of crossing the C boundary. After the first problem every further
/// call returns 0 so the GSL routine winds down quickly.
class GslCallback {
 public:
  explicit GslCallback(const std::function<double(double)>& f) : f_(f) {
    fn_.function = &GslCallback::call;
    fn_.params = this;
  }
  GslCallback(const GslCallback&) = delete;
  GslCallback& operator=(const GslCallback&) = delete;

  gsl_function* get() { return &fn_; }
  bool non_finite() const noexcept { return non_finite_; }
  void rethrow_if_failed() const {
    if (error_) std::rethrow_exception(error_);
  }
  double last_x() const noexcept { return last_x_; }
  double last_value() const noexcept { return last_value_; }

 private:
  static double call(double x, void* self) {
    auto* cb = static_cast<GslCallback*>(self);
    if (cb->error_ || cb->non_finite_) return 0.0;
    try {
      const double v = cb->f_(x);
      if (!std::isfinite(v)) {
        cb->non_finite_ = true;
        return 0.0;
      }
      cb->last_x_ = x;
      cb->last_value_ = v;
      return v;
    } catch (...) {
      cb->error_ = std::current_exception();
      return 0.0;
    }
  }

  const std::function<double(double)>& f_;
  gsl_function fn_{};
  std::exception_ptr error_;
  bool non_finite_ = false;
  double last_x_ = NAN;
  double last_value_ = NAN;
};

}  // namespace hypiso::detail
