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

#include <catch2/catch_amalgamated.hpp>

#include "vfd/core_rates.hpp"

#include <cmath>
#include <random>

using namespace vfd;
using Catch::Approx;

namespace
{
const SystemParams kUnit{1.0, 1.0, 1.0};
const LinkGains kUnitGains{1.0, 1.0, 1.0, 1.0, 1.0};

struct Instance
{
    SystemParams params;
    LinkGains gains;
    Circularity ci;
    Circularity cj;
};

// Gains log-uniform in [-20, 30] dB, powers and noise log-uniform in [-10, 10] dB.
Instance random_instance(std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> gain_db(-20.0, 30.0);
    std::uniform_real_distribution<double> power_db(-10.0, 10.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto lin = [](double db) { return std::pow(10.0, db / 10.0); };
    const double p = lin(power_db(rng));
    SystemParams params(p, lin(power_db(rng)), lin(power_db(rng)));
    LinkGains gains(lin(gain_db(rng)), lin(gain_db(rng)), lin(gain_db(rng)), lin(gain_db(rng)), lin(gain_db(rng)));
    return {params, gains, Circularity(unit(rng)), Circularity(unit(rng))};
}
} // namespace

TEST_CASE("value types enforce their invariants")
{
    CHECK_THROWS_AS(SystemParams(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(2.0, 1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1.0, 2.0, 1.0, 1.0), std::invalid_argument);
    CHECK_NOTHROW(SystemParams(1.0, 1.0, 1.0, 1.0));
    CHECK_NOTHROW(SystemParams(0.0, 0.0, 1.0));

    CHECK_THROWS_AS(LinkGains(1, 1, 1, -1e-9, 1), std::invalid_argument);
    CHECK_THROWS_AS(LinkGains(1, 1, 1, 1, INFINITY), std::invalid_argument);
    CHECK_THROWS_AS(LinkGains(NAN, 1, 1, 1, 1), std::invalid_argument);

    CHECK_THROWS_AS(Circularity(1.0000001), std::invalid_argument);
    CHECK_THROWS_AS(Circularity(-0.1), std::invalid_argument);
    CHECK(Circularity(1.0).value() == 1.0);

    CHECK_THROWS_AS(SignalConfig(0.0, 0.0, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(SignalConfig(0.0, 2.0, 0.5), std::invalid_argument);
}

TEST_CASE("improper_link_rate")
{
    CHECK(improper_link_rate(2.0, 0.0, 1.0, 0.0) == Approx(1.0).epsilon(1e-15));
    CHECK(improper_link_rate(2.0, 1.0, 1.0, 0.0) == Approx(0.792481250360578091).epsilon(1e-14));
    CHECK(improper_link_rate(1.0, 0.5, 1.0, 0.5) == 0.0);

    SECTION("negative rates clamp to zero")
    {
        CHECK(improper_link_rate(1.0, 0.0, 2.0, 0.0) == 0.0);
    }
    SECTION("impropriety at or above the variance is a domain error")
    {
        CHECK_THROWS_AS(improper_link_rate(1.0, 1.0, 1.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(improper_link_rate(1.0, 0.0, 1.0, 1.5), std::domain_error);
        CHECK_THROWS_AS(improper_link_rate(0.0, 0.0, 1.0, 0.0), std::domain_error);
        CHECK_THROWS_AS(improper_link_rate(1.0, -0.1, 1.0, 0.0), std::domain_error);
    }
}

TEST_CASE("first_hop_rate examples")
{
    const SystemParams no_relay(1.0, 0.0, 1.0);
    CHECK(first_hop_rate(Path::one, Circularity(0.0), no_relay, kUnitGains) == Approx(1.0).epsilon(1e-15));
    CHECK(first_hop_rate(Path::one, Circularity(0.0), kUnit, kUnitGains) ==
          Approx(0.584962500721156181).epsilon(1e-14));
    CHECK(first_hop_rate(Path::one, Circularity(1.0), kUnit, kUnitGains) ==
          Approx(0.707518749639421909).epsilon(1e-14));
    // path 2 uses h2
    const LinkGains g(1.0, 3.0, 1.0, 1.0, 0.0);
    CHECK(first_hop_rate(Path::two, Circularity(0.0), kUnit, g) == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("second_hop_rate examples")
{
    CHECK(second_hop_rate(Path::one, Circularity(0.0), kUnit, kUnitGains) == Approx(1.0).epsilon(1e-15));
    CHECK(second_hop_rate(Path::one, Circularity(1.0), kUnit, kUnitGains) ==
          Approx(0.792481250360578091).epsilon(1e-14));
    const SystemParams silent(1.0, 0.0, 1.0);
    for (double c : {0.0, 0.3, 1.0})
        CHECK(second_hop_rate(Path::one, Circularity(c), silent, kUnitGains) == 0.0);
    const LinkGains g(1.0, 1.0, 1.0, 3.0, 1.0);
    CHECK(second_hop_rate(Path::two, Circularity(0.0), kUnit, g) == Approx(2.0).epsilon(1e-15));
}

TEST_CASE("hop rates agree with the general improper link rate")
{
    // Independent route: build the received and interference statistics
    // and feed them through the general formula.
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 5.0), c(0.0, 0.999);
    for (int n = 0; n < 2000; ++n)
    {
        const double p_s = u(rng), p_r = u(rng), s2 = u(rng), h = u(rng), g = u(rng), f = u(rng);
        const double cj = c(rng), ci = c(rng);
        const SystemParams params(p_s, p_r, s2);
        const LinkGains gains(h, h, g, g, f);

        const double interf = p_r * f;
        const double lemma1 = improper_link_rate(p_s * h + interf + s2, cj * interf, interf + s2, cj * interf);
        CHECK(first_hop_rate(Path::one, Circularity(cj), params, gains) == Approx(lemma1).epsilon(1e-10));

        const double sig = p_r * g;
        const double lemma2 = improper_link_rate(sig + s2, ci * sig, s2, 0.0);
        CHECK(second_hop_rate(Path::one, Circularity(ci), params, gains) == Approx(lemma2).epsilon(1e-10));
    }
}

TEST_CASE("proper signaling reduces to log2(1 + SINR)")
{
    std::mt19937_64 rng(1);
    for (int n = 0; n < 10000; ++n)
    {
        const Instance x = random_instance(rng);
        const double s2 = x.params.sigma_n2();
        for (Path i : {Path::one, Path::two})
        {
            const double sinr = x.params.p_s() * x.gains.h_sq(i) / (x.params.p_r() * x.gains.f_sq() + s2);
            const double snr = x.params.p_r() * x.gains.g_sq(i) / s2;
            CHECK(std::abs(first_hop_rate(i, Circularity(0.0), x.params, x.gains) - std::log2(1.0 + sinr)) <= 1e-12);
            CHECK(std::abs(second_hop_rate(i, Circularity(0.0), x.params, x.gains) - std::log2(1.0 + snr)) <= 1e-12);
        }
    }
}

TEST_CASE("hop rates are monotone in circularity")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 0; n < 2000; ++n)
    {
        const Instance x = random_instance(rng);
        double lo = unit(rng), hi = unit(rng);
        if (lo > hi)
            std::swap(lo, hi);
        if (lo == hi)
            continue;
        CHECK(first_hop_rate(Path::one, Circularity(lo), x.params, x.gains) <=
              first_hop_rate(Path::one, Circularity(hi), x.params, x.gains));
        CHECK(second_hop_rate(Path::two, Circularity(lo), x.params, x.gains) >=
              second_hop_rate(Path::two, Circularity(hi), x.params, x.gains));
    }
    // strict with nonzero interference / relay power
    CHECK(first_hop_rate(Path::one, Circularity(0.5), kUnit, kUnitGains) <
          first_hop_rate(Path::one, Circularity(0.6), kUnit, kUnitGains));
    CHECK(second_hop_rate(Path::one, Circularity(0.5), kUnit, kUnitGains) >
          second_hop_rate(Path::one, Circularity(0.6), kUnit, kUnitGains));
}

TEST_CASE("maximally improper interference saturates the first hop")
{
    const SystemParams params(1.0, 1.0, 1.0);
    for (double h : {0.1, 1.0, 3.16, 100.0})
    {
        const LinkGains gains(h, h, 1.0, 1.0, 1e12);
        const double limit = 0.5 * std::log2(1.0 + h);
        CHECK(std::abs(first_hop_rate(Path::one, Circularity(1.0), params, gains) - limit) <= 1e-6);
    }
}

TEST_CASE("path_rate")
{
    CHECK(path_rate(Path::one, SignalConfig(0.3, 0.7, 1.0), kUnit, kUnitGains) == 0.0);
    CHECK(path_rate(Path::two, SignalConfig(0.3, 0.7, 0.0), kUnit, kUnitGains) == 0.0);
    CHECK(path_rate(Path::one, SignalConfig(0.0, 0.0, 0.5), kUnit, kUnitGains) ==
          Approx(0.292481250360578091).epsilon(1e-14));

    const double a = 0.584962500721156181;
    const double tau_star = 1.0 / (1.0 + a);
    CHECK(path_rate(Path::one, SignalConfig(0.0, 0.0, tau_star), kUnit, kUnitGains) ==
          Approx(0.369070246428542563).epsilon(1e-12));

    // path 1 weights R_{1,1}(C2) by tau and R_{1,2}(C1) by 1 - tau
    const SignalConfig cfg(0.2, 0.9, 0.3);
    const double expect = std::min(0.3 * first_hop_rate(Path::one, Circularity(0.9), kUnit, kUnitGains),
                                   0.7 * second_hop_rate(Path::one, Circularity(0.2), kUnit, kUnitGains));
    CHECK(path_rate(Path::one, cfg, kUnit, kUnitGains) == expect);
}

TEST_CASE("total_rate")
{
    const RateBreakdown b = total_rate(SignalConfig(0.0, 0.0, 0.5), kUnit, kUnitGains);
    CHECK(b.total == Approx(0.584962500721156181).epsilon(1e-14));
    CHECK(b.total == b.path1 + b.path2);

    const LinkGains no_iri(1.0, 1.0, 1.0, 1.0, 0.0);
    CHECK(total_rate(SignalConfig(0.0, 0.0, 0.5), kUnit, no_iri).total == Approx(1.0).epsilon(1e-15));

    SECTION("relabeling the relays leaves the total unchanged")
    {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int n = 0; n < 2000; ++n)
        {
            const Instance x = random_instance(rng);
            // dyadic tau so that 1 - tau and 1 - (1 - tau) are exact
            const double c1 = unit(rng), c2 = unit(rng), tau = std::floor(unit(rng) * 1024.0) / 1024.0;
            const RateBreakdown a = total_rate(SignalConfig(c1, c2, tau), x.params, x.gains);
            const RateBreakdown s = total_rate(SignalConfig(c2, c1, 1.0 - tau), x.params, x.gains.swapped());
            // identical operands in swapped roles
            CHECK(a.path1 == s.path2);
            CHECK(a.path2 == s.path1);
            CHECK(a.total == s.total);
        }
    }

    SECTION("every rate finite and non-negative")
    {
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int n = 0; n < 2000; ++n)
        {
            const Instance x = random_instance(rng);
            const RateBreakdown r = total_rate(SignalConfig(unit(rng), unit(rng), unit(rng)), x.params, x.gains);
            for (double v : {r.r11, r.r12, r.r21, r.r22, r.path1, r.path2, r.total})
            {
                CHECK(std::isfinite(v));
                CHECK(v >= 0.0);
            }
            CHECK(r.path1 <= std::max(r.r11, r.r12));
            CHECK(r.path2 <= std::max(r.r21, r.r22));
        }
    }
}

TEST_CASE("psi coefficients and threshold")
{
    const auto k = psi_coeffs(Path::one, kUnit, kUnitGains);
    CHECK(k.alpha == 2.0);
    CHECK(k.beta == 3.0);
    CHECK(k.gamma == -1.0);

    // (gamma - alpha) / (beta + alpha / 2)
    CHECK(psi(1.0, Path::one, kUnit, kUnitGains) == Approx(-0.75).epsilon(1e-15));

    const LinkGains no_iri(2.0, 2.0, 3.0, 3.0, 0.0);
    const auto k0 = psi_coeffs(Path::one, kUnit, no_iri);
    CHECK(k0.alpha == 0.0);
    CHECK(k0.beta == 3.0); // p_r |g|^2 sigma^2
    const double constant = 1.0 * k0.gamma / (3.0 * k0.beta);
    for (double x : {0.0, 0.4, 1.0})
        CHECK(psi(x, Path::one, kUnit, no_iri) == Approx(constant).epsilon(1e-15));

    const SystemParams no_source(0.0, 1.0, 1.0);
    const auto ks = psi_coeffs(Path::two, no_source, kUnitGains);
    CHECK(ks.gamma == -2.0 * ks.beta);

    // numerator root: gamma = alpha x
    const LinkGains strong(1.2, 1.2, 1.0, 1.0, 1.0);
    const auto kr = psi_coeffs(Path::one, kUnit, strong);
    const double root = kr.gamma / kr.alpha;
    REQUIRE(root > 0.0);
    REQUIRE(root <= 1.0);
    CHECK(std::abs(psi(root, Path::one, kUnit, strong)) <= 1e-15);

    CHECK_THROWS_AS(psi(0.5, Path::one, SystemParams(1.0, 0.0, 1.0), kUnitGains), std::domain_error);
    CHECK_THROWS_AS(psi(0.5, Path::one, kUnit, LinkGains(1, 1, 0, 1, 1)), std::domain_error);
}

TEST_CASE("psi threshold marks where the two hops meet")
{
    // At C_i = sqrt(1 - psi(1 - C_j^2)) the hops are equal.
    std::mt19937_64 rng(5);
    int checked = 0;
    for (int n = 0; n < 5000; ++n)
    {
        const Instance x = random_instance(rng);
        const double cj = x.cj.value();
        const double bound = 1.0 - psi(1.0 - cj * cj, Path::one, x.params, x.gains);
        if (!(bound >= 0.0 && bound <= 1.0))
            continue;
        const Circularity ci(std::sqrt(bound));
        const double r1 = first_hop_rate(Path::one, x.cj, x.params, x.gains);
        const double r2 = second_hop_rate(Path::one, ci, x.params, x.gains);
        CHECK(r1 == Approx(r2).epsilon(1e-8).margin(1e-12));
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("piecewise_path_min")
{
    SECTION("unit parameters: first hop limited")
    {
        for (double ci : {0.0, 0.5, 1.0})
        {
            const auto r = piecewise_path_min(Path::one, Circularity(ci), Circularity(0.0), kUnit, kUnitGains);
            CHECK(r.branch == HopLimit::first_hop);
            CHECK(r.rate == Approx(0.584962500721156181).epsilon(1e-14));
        }
    }
    SECTION("second endpoint condition")
    {
        // weak relay-destination link: R_{i,2}(0) <= R_{i,1}(0)
        const LinkGains g(10.0, 10.0, 0.1, 0.1, 1.0);
        const auto r = piecewise_path_min(Path::one, Circularity(0.0), Circularity(0.0), kUnit, g);
        REQUIRE(second_hop_rate(Path::one, Circularity(0.0), kUnit, g) <=
                first_hop_rate(Path::one, Circularity(0.0), kUnit, g));
        CHECK(r.branch == HopLimit::second_hop);
        CHECK(r.rate == second_hop_rate(Path::one, Circularity(0.0), kUnit, g));
    }
    SECTION("no relay power falls back to the direct min")
    {
        const SystemParams silent(1.0, 0.0, 1.0);
        const auto r = piecewise_path_min(Path::two, Circularity(0.4), Circularity(0.2), silent, kUnitGains);
        CHECK(r.rate == 0.0);
        CHECK(r.branch == HopLimit::second_hop);
    }
    SECTION("matches the direct min on random instances")
    {
        std::mt19937_64 rng(6);
        for (int n = 0; n < 10000; ++n)
        {
            const Instance x = random_instance(rng);
            for (Path i : {Path::one, Path::two})
            {
                const double r1 = first_hop_rate(i, x.cj, x.params, x.gains);
                const double r2 = second_hop_rate(i, x.ci, x.params, x.gains);
                const double direct = std::min(r1, r2);
                const auto p = piecewise_path_min(i, x.ci, x.cj, x.params, x.gains);
                CHECK(std::abs(p.rate - direct) <= 1e-9 * std::max(direct, 1e-300));
                const double chosen = p.branch == HopLimit::first_hop ? r1 : r2;
                CHECK(chosen == p.rate);
            }
        }
    }
}

TEST_CASE("formulas instantiate for long double")
{
    const SystemParamsT<long double> p(1.0L, 1.0L, 1.0L);
    const LinkGainsT<long double> g(1.0L, 1.0L, 1.0L, 1.0L, 1.0L);
    const auto r = total_rate(SignalConfigT<long double>(0.0L, 0.0L, 0.5L), p, g);
    CHECK(std::abs(r.total - 0.584962500721156181453738943948L) < 1e-17L);
}
