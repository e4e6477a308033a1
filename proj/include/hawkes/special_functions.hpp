#pragma once

namespace hawkes::special {

/// Error function, absolute error below 1e-12. Saturates to +-1 for |x| > 6.
[[nodiscard]] double erf(double x) noexcept;

/// Inverse error function on (-1, 1). Throws HawkesError(domain_error) for
/// |y| >= 1 or NaN.
[[nodiscard]] double erfinv(double y);

/// Principal branch W0 of the Lambert-W function, defined for x >= -1/e.
/// Throws HawkesError(domain_error) below the branch point.
[[nodiscard]] double lambert_w0(double x);

} // namespace hawkes::special
