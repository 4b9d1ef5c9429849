#pragma once

#include <functional>

namespace skewfit::detail {

// Library-internal adaptive Simpson rule. `tol` is absolute; panels also stop
// once locally converged to machine precision, so tall peaks terminate.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace skewfit::detail
