#pragma once

#include "check.hpp"
#include "pedersen.hpp"

#include <string>
#include <vector>

namespace nilharm
{

struct MultiplierReport
{
    // per test symbol, residuals divided by |u|_1 |phi|_2 (|u|_1 |phi|_2 |psi|_2 for the associativity form)
    std::vector<double> homomorphism; // |T(u * phi) - T(u) T(phi)|_HS
    std::vector<double> homomorphism_raw;
    std::vector<double> inverse_route; // |u * phi - T^{-1}(T(u) T(phi))|_2
    std::vector<double> convolution;   // |u * (phi * psi) - (u * phi) * psi|_2, psi the next test symbol
    std::vector<double> lp_exponents;
    std::vector<double> lp_ratios; // max over the family of |u * phi|_p / |phi|_p
    double max_residual() const
    {
        double m = 0.0;
        for (const auto* v : {&homomorphism, &inverse_route, &convolution})
            for (double r : *v)
                m = std::max(m, r);
        return m;
    }
};

/// M = T(u) and C_M phi = u *_e phi, checked against the test family.
inline MultiplierReport multiplier_check(const TwistedGroup& g, const SampledSymbol& u,
                                         const std::vector<SampledSymbol>& tests, const Grid& line, double density,
                                         const std::vector<double>& exponents = {1.25, 1.5, 2.0})
{
    MultiplierReport r;
    r.lp_exponents = exponents;
    r.lp_ratios.assign(exponents.size(), 0.0);
    const double u1 = lp_norm(u, 1.0, density);
    const auto m = pedersen_transform(u, line, density);
    auto normalized = [](double v, double scale) { return scale > 0.0 ? v / scale : v; };
    for (std::size_t i = 0; i < tests.size(); ++i)
    {
        const auto& phi = tests[i];
        const auto& psi = tests[(i + 1) % tests.size()];
        const double n_phi = l2_norm(phi, density);
        const auto c_phi = twisted_convolve(g, u, phi, density);
        const auto product = m * pedersen_transform(phi, line, density);
        const double raw = (pedersen_transform(c_phi, line, density) - product).hs_norm();
        r.homomorphism_raw.push_back(raw);
        r.homomorphism.push_back(normalized(raw, u1 * n_phi));
        r.inverse_route.push_back(
            normalized(l2_distance(c_phi, pedersen_inverse(product, phi.grid()), density), u1 * n_phi));
        const auto left = twisted_convolve(g, u, twisted_convolve(g, phi, psi, density), density);
        const auto right = twisted_convolve(g, c_phi, psi, density);
        r.convolution.push_back(
            normalized(l2_distance(left, right, density), u1 * n_phi * l2_norm(psi, density)));
        for (std::size_t e = 0; e < exponents.size(); ++e)
        {
            const double den = lp_norm(phi, exponents[e], density);
            if (den > 0.0)
                r.lp_ratios[e] = std::max(r.lp_ratios[e], lp_norm(c_phi, exponents[e], density) / den);
        }
    }
    return r;
}

} // namespace nilharm
