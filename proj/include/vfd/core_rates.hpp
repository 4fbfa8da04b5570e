// SPDX-License-Identifier: Apache-2.0
//
// vfd-relay: rate simulator and optimizer for virtual full-duplex relaying
// Copyright (C) 2026 The vfd-relay authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef VFD_CORE_RATES_HPP
#define VFD_CORE_RATES_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

// Achievable-rate formulas of a two-path (virtual full-duplex) decode-and-forward
// relay network in which each relay may transmit an improper Gaussian signal.
//
// Slot schedule: odd slots last tau, R1 receives and R2 transmits; even slots
// last 1 - tau with the roles swapped. The source always transmits a proper
// signal; interference is treated as Gaussian noise.
//
// All formulas are templated on the scalar type. The library itself uses
// double; long double is handy as a reference in tests.

namespace vfd
{

/// Route S -> R_i -> D.
enum class Path : int
{
    one = 1,
    two = 2
};

constexpr Path other(Path i) noexcept { return i == Path::one ? Path::two : Path::one; }

template <typename Scalar>
class SystemParamsT
{
  public:
    using scalar_type = Scalar;

    /// Powers in W, noise variance in W. Fails if a power exceeds p_max.
    SystemParamsT(Scalar p_s, Scalar p_r, Scalar sigma_n2,
                  Scalar p_max = std::numeric_limits<Scalar>::infinity())
        : p_s_(p_s), p_r_(p_r), sigma_n2_(sigma_n2), p_max_(p_max)
    {
        if (!(p_s >= Scalar(0)) || !std::isfinite(p_s))
            throw std::invalid_argument("SystemParams: p_s must be finite and >= 0");
        if (!(p_r >= Scalar(0)) || !std::isfinite(p_r))
            throw std::invalid_argument("SystemParams: p_r must be finite and >= 0");
        if (!(sigma_n2 > Scalar(0)) || !std::isfinite(sigma_n2))
            throw std::invalid_argument("SystemParams: sigma_n2 must be finite and > 0");
        if (std::isnan(p_max))
            throw std::invalid_argument("SystemParams: p_max is NaN");
        if (p_s > p_max || p_r > p_max)
            throw std::invalid_argument("SystemParams: transmit power exceeds p_max");
    }

    Scalar p_s() const noexcept { return p_s_; }
    Scalar p_r() const noexcept { return p_r_; }
    Scalar sigma_n2() const noexcept { return sigma_n2_; }
    Scalar p_max() const noexcept { return p_max_; }

  private:
    Scalar p_s_;
    Scalar p_r_;
    Scalar sigma_n2_;
    Scalar p_max_;
};

/// Instantaneous power gains of one channel realization. Only squared
/// magnitudes enter the rates, so phases are not kept.
template <typename Scalar>
class LinkGainsT
{
  public:
    using scalar_type = Scalar;

    LinkGainsT(Scalar h1_sq, Scalar h2_sq, Scalar g1_sq, Scalar g2_sq, Scalar f_sq)
        : h1_sq_(h1_sq), h2_sq_(h2_sq), g1_sq_(g1_sq), g2_sq_(g2_sq), f_sq_(f_sq)
    {
        check(h1_sq, "h1_sq");
        check(h2_sq, "h2_sq");
        check(g1_sq, "g1_sq");
        check(g2_sq, "g2_sq");
        check(f_sq, "f_sq");
    }

    Scalar h1_sq() const noexcept { return h1_sq_; }
    Scalar h2_sq() const noexcept { return h2_sq_; }
    Scalar g1_sq() const noexcept { return g1_sq_; }
    Scalar g2_sq() const noexcept { return g2_sq_; }
    Scalar f_sq() const noexcept { return f_sq_; }

    /// S -> R_i gain.
    Scalar h_sq(Path i) const noexcept { return i == Path::one ? h1_sq_ : h2_sq_; }
    /// R_i -> D gain.
    Scalar g_sq(Path i) const noexcept { return i == Path::one ? g1_sq_ : g2_sq_; }

    /// Relabels the relays (R1 <-> R2).
    LinkGainsT swapped() const { return {h2_sq_, h1_sq_, g2_sq_, g1_sq_, f_sq_}; }

    friend bool operator==(const LinkGainsT &, const LinkGainsT &) = default;

  private:
    static void check(Scalar v, const char *name)
    {
        if (!(v >= Scalar(0)) || !std::isfinite(v))
            throw std::invalid_argument(std::string("LinkGains: ") + name + " must be finite and >= 0");
    }

    Scalar h1_sq_;
    Scalar h2_sq_;
    Scalar g1_sq_;
    Scalar g2_sq_;
    Scalar f_sq_;
};

/// |pseudo-variance| / variance of a zero-mean complex Gaussian signal.
/// 0 is proper, 1 is maximally improper.
template <typename Scalar>
class CircularityT
{
  public:
    using scalar_type = Scalar;

    constexpr CircularityT() = default;
    explicit CircularityT(Scalar value) : value_(value)
    {
        if (!(value >= Scalar(0) && value <= Scalar(1)))
            throw std::invalid_argument("Circularity coefficient must lie in [0, 1]");
    }

    constexpr Scalar value() const noexcept { return value_; }

    friend constexpr bool operator==(CircularityT, CircularityT) = default;

  private:
    Scalar value_ = Scalar(0);
};

/// Design variables (C1, C2, tau).
template <typename Scalar>
class SignalConfigT
{
  public:
    using scalar_type = Scalar;

    SignalConfigT(CircularityT<Scalar> c1, CircularityT<Scalar> c2, Scalar tau)
        : c1_(c1), c2_(c2), tau_(tau)
    {
        if (!(tau >= Scalar(0) && tau <= Scalar(1)))
            throw std::invalid_argument("SignalConfig: tau must lie in [0, 1]");
    }
    SignalConfigT(Scalar c1, Scalar c2, Scalar tau)
        : SignalConfigT(CircularityT<Scalar>(c1), CircularityT<Scalar>(c2), tau)
    {
    }

    CircularityT<Scalar> c1() const noexcept { return c1_; }
    CircularityT<Scalar> c2() const noexcept { return c2_; }
    CircularityT<Scalar> c(Path i) const noexcept { return i == Path::one ? c1_ : c2_; }
    Scalar tau() const noexcept { return tau_; }

    friend bool operator==(const SignalConfigT &, const SignalConfigT &) = default;

  private:
    CircularityT<Scalar> c1_;
    CircularityT<Scalar> c2_;
    Scalar tau_;
};

/// Hop and path rates in bits/s/Hz.
///   r11 = R_{1,1}(C2), r12 = R_{1,2}(C1)   (path 1: first hop, second hop)
///   r21 = R_{2,1}(C1), r22 = R_{2,2}(C2)   (path 2: first hop, second hop)
template <typename Scalar>
struct RateBreakdownT
{
    Scalar r11 = 0;
    Scalar r12 = 0;
    Scalar r21 = 0;
    Scalar r22 = 0;
    Scalar path1 = 0;
    Scalar path2 = 0;
    Scalar total = 0;
};

using SystemParams = SystemParamsT<double>;
using LinkGains = LinkGainsT<double>;
using Circularity = CircularityT<double>;
using SignalConfig = SignalConfigT<double>;
using RateBreakdown = RateBreakdownT<double>;

namespace detail
{
// 0.5 * log2(1 + x), accurate for small x
template <typename Scalar>
inline Scalar half_log2_1p(Scalar x)
{
    using std::log1p;
    return Scalar(0.5) * log1p(x) / std::numbers::ln2_v<Scalar>;
}

// SINR-like argument of the first-hop log: R = 0.5 log2(1 + x)
template <typename Scalar>
inline Scalar first_hop_argument(Scalar c_interferer, Scalar p_s, Scalar p_r, Scalar sigma2, Scalar h_sq,
                                 Scalar f_sq)
{
    const Scalar a = p_s * h_sq;
    const Scalar b = p_r * f_sq;
    const Scalar num = Scalar(2) * a * (b + sigma2) + a * a;
    const Scalar den = (Scalar(1) - c_interferer * c_interferer) * b * b + Scalar(2) * b * sigma2 + sigma2 * sigma2;
    return num / den;
}

template <typename Scalar>
inline Scalar second_hop_argument(Scalar c_own, Scalar p_r, Scalar sigma2, Scalar g_sq)
{
    const Scalar snr = p_r * g_sq / sigma2;
    return Scalar(2) * snr + snr * snr * (Scalar(1) - c_own * c_own);
}
} // namespace detail

/// Rate of a single link carrying improper signals, given the received
/// variance and |pseudo-variance| of the observation y and of the
/// interference-plus-noise z. Negative values are clamped to zero.
template <typename Scalar>
Scalar improper_link_rate(Scalar sigma_y2, Scalar pseudo_y, Scalar sigma_z2, Scalar pseudo_z)
{
    if (!(sigma_y2 > Scalar(0)) || !(sigma_z2 > Scalar(0)))
        throw std::domain_error("improper_link_rate: variances must be > 0");
    if (!(pseudo_y >= Scalar(0)) || !(pseudo_z >= Scalar(0)))
        throw std::domain_error("improper_link_rate: pseudo-variance magnitudes must be >= 0");

    const Scalar num = sigma_y2 * sigma_y2 - pseudo_y * pseudo_y;
    const Scalar den = sigma_z2 * sigma_z2 - pseudo_z * pseudo_z;
    if (!(num > Scalar(0)) || !(den > Scalar(0)))
        throw std::domain_error("improper_link_rate: |pseudo-variance| must be below the variance");

    using std::log2;
    return std::max(Scalar(0), Scalar(0.5) * log2(num / den));
}

/// R_{i,1}: S -> R_i while the other relay transmits with circularity
/// c_interferer over the inter-relay channel.
template <typename Scalar>
Scalar first_hop_rate(Path i, CircularityT<Scalar> c_interferer, const SystemParamsT<Scalar> &params,
                      const LinkGainsT<Scalar> &gains)
{
    return detail::half_log2_1p(detail::first_hop_argument(c_interferer.value(), params.p_s(), params.p_r(),
                                                           params.sigma_n2(), gains.h_sq(i), gains.f_sq()));
}

/// R_{i,2}: R_i -> D with R_i's own circularity.
template <typename Scalar>
Scalar second_hop_rate(Path i, CircularityT<Scalar> c_own, const SystemParamsT<Scalar> &params,
                       const LinkGainsT<Scalar> &gains)
{
    return detail::half_log2_1p(
        detail::second_hop_argument(c_own.value(), params.p_r(), params.sigma_n2(), gains.g_sq(i)));
}

/// Combines tabulated hop rates with slot durations. Every caller that needs
/// bit-identical totals (total_rate, the grid search) goes through here.
template <typename Scalar>
inline RateBreakdownT<Scalar> combine_hops(Scalar tau, Scalar r11, Scalar r12, Scalar r21, Scalar r22)
{
    const Scalar rest = Scalar(1) - tau;
    RateBreakdownT<Scalar> out;
    out.r11 = r11;
    out.r12 = r12;
    out.r21 = r21;
    out.r22 = r22;
    out.path1 = std::min(tau * r11, rest * r12);
    out.path2 = std::min(rest * r21, tau * r22);
    out.total = out.path1 + out.path2;
    return out;
}

/// Effective rate of path i: the smaller of its two hops, each weighted by
/// the duration of the slot in which it happens.
template <typename Scalar>
Scalar path_rate(Path i, const SignalConfigT<Scalar> &config, const SystemParamsT<Scalar> &params,
                 const LinkGainsT<Scalar> &gains)
{
    const Scalar tau = config.tau();
    const Scalar rest = Scalar(1) - tau;
    if (i == Path::one)
        return std::min(tau * first_hop_rate(Path::one, config.c2(), params, gains),
                        rest * second_hop_rate(Path::one, config.c1(), params, gains));
    return std::min(rest * first_hop_rate(Path::two, config.c1(), params, gains),
                    tau * second_hop_rate(Path::two, config.c2(), params, gains));
}

template <typename Scalar>
RateBreakdownT<Scalar> total_rate(const SignalConfigT<Scalar> &config, const SystemParamsT<Scalar> &params,
                                  const LinkGainsT<Scalar> &gains)
{
    return combine_hops(config.tau(), first_hop_rate(Path::one, config.c2(), params, gains),
                        second_hop_rate(Path::one, config.c1(), params, gains),
                        first_hop_rate(Path::two, config.c1(), params, gains),
                        second_hop_rate(Path::two, config.c2(), params, gains));
}

template <typename Scalar>
struct PsiCoefficientsT
{
    Scalar alpha;
    Scalar beta;
    Scalar gamma;
};

/// Coefficients of the circularity threshold of path i at tau = 0.5.
template <typename Scalar>
PsiCoefficientsT<Scalar> psi_coeffs(Path i, const SystemParamsT<Scalar> &params, const LinkGainsT<Scalar> &gains)
{
    const Scalar p_s = params.p_s();
    const Scalar p_r = params.p_r();
    const Scalar s2 = params.sigma_n2();
    const Scalar h = gains.h_sq(i);
    const Scalar g = gains.g_sq(i);
    const Scalar f = gains.f_sq();

    PsiCoefficientsT<Scalar> k;
    k.alpha = Scalar(2) * p_r * p_r * p_r * g * f * f / s2;
    k.beta = p_r * g * (Scalar(2) * p_r * f + s2);
    k.gamma = Scalar(2) * p_s * h * (p_r * f + s2) + p_s * p_s * h * h - Scalar(2) * k.beta;
    return k;
}

/// Threshold function of the tau = 0.5 closed form, evaluated at
/// x = 1 - C_j^2. Path i is first-hop limited iff 1 - C_i^2 >= psi(x).
///
/// psi(x) = sigma^2 / (p_r |g_i|^2) * (gamma - alpha x) / (beta + alpha x / 2)
///
/// The alpha/2 in the denominator follows from equating the two hop
/// arguments directly; it is what makes the branch agree with the direct min.
template <typename Scalar>
Scalar psi(Scalar x, Path i, const SystemParamsT<Scalar> &params, const LinkGainsT<Scalar> &gains)
{
    const Scalar link = params.p_r() * gains.g_sq(i);
    if (!(link > Scalar(0)))
        throw std::domain_error("psi: p_r |g_i|^2 must be > 0");
    const auto k = psi_coeffs(i, params, gains);
    return params.sigma_n2() / link * (k.gamma - k.alpha * x) / (k.beta + Scalar(0.5) * k.alpha * x);
}

enum class HopLimit
{
    first_hop,
    second_hop
};

template <typename Scalar>
struct PiecewiseRateT
{
    Scalar rate;
    HopLimit branch;
};

/// min{R_{i,1}(C_j), R_{i,2}(C_i)} at tau = 0.5, deciding the limiting hop
/// from the endpoint comparisons and the psi threshold and then evaluating
/// only that hop. The slot duration factor 1/2 is not applied.
template <typename Scalar>
PiecewiseRateT<Scalar> piecewise_path_min(Path i, CircularityT<Scalar> c_i, CircularityT<Scalar> c_j,
                                          const SystemParamsT<Scalar> &params, const LinkGainsT<Scalar> &gains)
{
    const Scalar p_s = params.p_s();
    const Scalar p_r = params.p_r();
    const Scalar s2 = params.sigma_n2();
    const Scalar h = gains.h_sq(i);
    const Scalar g = gains.g_sq(i);
    const Scalar f = gains.f_sq();

    const auto first = [&] { return PiecewiseRateT<Scalar>{first_hop_rate(i, c_j, params, gains), HopLimit::first_hop}; };
    const auto second = [&] { return PiecewiseRateT<Scalar>{second_hop_rate(i, c_i, params, gains), HopLimit::second_hop}; };

    if (!(p_r * g > Scalar(0)))
    {
        const Scalar r1 = first_hop_rate(i, c_j, params, gains);
        const Scalar r2 = second_hop_rate(i, c_i, params, gains);
        return r1 <= r2 ? PiecewiseRateT<Scalar>{r1, HopLimit::first_hop} : PiecewiseRateT<Scalar>{r2, HopLimit::second_hop};
    }

    // log is monotone: compare the arguments
    using detail::first_hop_argument;
    using detail::second_hop_argument;
    if (first_hop_argument(Scalar(1), p_s, p_r, s2, h, f) <= second_hop_argument(Scalar(1), p_r, s2, g))
        return first();
    if (second_hop_argument(Scalar(0), p_r, s2, g) <= first_hop_argument(Scalar(0), p_s, p_r, s2, h, f))
        return second();

    const Scalar cj = c_j.value();
    const Scalar bound = Scalar(1) - psi(Scalar(1) - cj * cj, i, params, gains);
    // imaginary threshold: no C_i makes the first hop the bottleneck
    if (bound < Scalar(0))
        return second();
    using std::sqrt;
    return c_i.value() <= sqrt(bound) ? first() : second();
}

} // namespace vfd

#endif // VFD_CORE_RATES_HPP
