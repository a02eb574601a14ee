#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "navbench/errors.hpp"

namespace navbench {

// Q16.16 saturating fixed point: value = raw / 2^16.  All arithmetic
// saturates to the 32-bit signed range instead of wrapping, and products are
// rounded to nearest, ties to even, at bit 16.  This is the golden model for
// a hardware datapath: identical raw inputs give identical raw outputs on
// every platform.
struct Fx {
  std::int32_t raw{0};

  static constexpr int frac_bits = 16;
  static constexpr std::int64_t one_raw = std::int64_t{1} << frac_bits;

  static constexpr Fx from_raw(std::int32_t r) { return Fx{r}; }
  static constexpr Fx max() { return Fx{std::numeric_limits<std::int32_t>::max()}; }
  static constexpr Fx min() { return Fx{std::numeric_limits<std::int32_t>::min()}; }

  friend constexpr bool operator==(Fx a, Fx b) { return a.raw == b.raw; }
  friend constexpr bool operator<(Fx a, Fx b) { return a.raw < b.raw; }
  friend constexpr bool operator>(Fx a, Fx b) { return a.raw > b.raw; }
};

namespace detail {

inline constexpr std::int32_t saturate32(std::int64_t v) {
  constexpr std::int64_t hi = std::numeric_limits<std::int32_t>::max();
  constexpr std::int64_t lo = std::numeric_limits<std::int32_t>::min();
  return static_cast<std::int32_t>(v > hi ? hi : (v < lo ? lo : v));
}

// Round v / 2^16 to nearest, ties to even.  Works uniformly for negative v
// because the arithmetic shift floors and leaves a non-negative remainder.
inline constexpr std::int64_t rne_shift16(std::int64_t v) {
  std::int64_t q = v >> 16;
  const std::int64_t rem = v & 0xFFFF;
  if (rem > 0x8000 || (rem == 0x8000 && (q & 1))) ++q;
  return q;
}

}  // namespace detail

inline constexpr Fx fx_add(Fx a, Fx b) {
  return Fx{detail::saturate32(std::int64_t{a.raw} + b.raw)};
}

inline constexpr Fx fx_sub(Fx a, Fx b) {
  return Fx{detail::saturate32(std::int64_t{a.raw} - b.raw)};
}

inline constexpr Fx fx_mul(Fx a, Fx b) {
  const std::int64_t p = std::int64_t{a.raw} * std::int64_t{b.raw};
  return Fx{detail::saturate32(detail::rne_shift16(p))};
}

inline constexpr Fx fx_neg(Fx a) { return Fx{detail::saturate32(-std::int64_t{a.raw})}; }

// Round-to-nearest-even of x * 2^16, saturated.  NaN maps to 0.
inline Fx fx_from_real(double x) {
  if (std::isnan(x)) return Fx{0};
  const double scaled = x * 65536.0;
  if (scaled >= 2147483647.0) return Fx::max();
  if (scaled <= -2147483648.0) return Fx::min();
  return Fx{static_cast<std::int32_t>(std::llrint(scaled))};
}

inline constexpr double fx_to_real(Fx a) { return static_cast<double>(a.raw) / 65536.0; }

struct FxPidGains {
  Fx kp{};
  Fx ki{};
  Fx kd{};
  Fx i_clamp{Fx::max()};
};

struct FxPidState {
  Fx integral{};
  Fx prev_error{};
  bool initialized{false};
};

// Kernel configuration; the dt reciprocal is precomputed here so the step
// itself is multiply-add only.
struct FxPidParams {
  FxPidGains gains{};
  Fx dt{};
  Fx inv_dt{};
};

inline FxPidParams make_fx_pid_params(const FxPidGains& gains, Fx dt) {
  if (dt.raw <= 0) throw InvalidStep("fx pid dt must be > 0");
  return {gains, dt, fx_from_real(1.0 / fx_to_real(dt))};
}

struct FxPidResult {
  Fx output{};
  FxPidState state{};
};

inline constexpr Fx fx_clamp_abs(Fx v, Fx bound) {
  if (v.raw > bound.raw) return bound;
  if (v.raw < -std::int64_t{bound.raw}) return Fx{detail::saturate32(-std::int64_t{bound.raw})};
  return v;
}

// Same dataflow as pid_step, every operation in Fx.
inline FxPidResult fx_pid_step(const FxPidParams& params, const FxPidState& st, Fx error) {
  const Fx integral = fx_clamp_abs(fx_add(st.integral, fx_mul(error, params.dt)),
                                   params.gains.i_clamp);
  const Fx deriv = st.initialized
                       ? fx_mul(fx_sub(error, st.prev_error), params.inv_dt)
                       : Fx{0};
  const Fx out = fx_add(fx_add(fx_mul(params.gains.kp, error),
                               fx_mul(params.gains.ki, integral)),
                        fx_mul(params.gains.kd, deriv));
  return {out, {integral, error, true}};
}

struct FxTerms {
  Fx heading{};
  Fx clearance{};
  Fx velocity{};
};

struct FxWeights {
  Fx heading{};
  Fx clearance{};
  Fx velocity{};
};

// Planner objective in fixed point: weighted sum of the normalized terms.
inline constexpr Fx fx_objective(const FxTerms& terms, const FxWeights& weights) {
  return fx_add(fx_add(fx_mul(weights.heading, terms.heading),
                       fx_mul(weights.clearance, terms.clearance)),
                fx_mul(weights.velocity, terms.velocity));
}

}  // namespace navbench
