#include "shapeinv/sampler.hpp"

#include <algorithm>
#include <cmath>

namespace shapeinv::sym {

Bindings DomainSampler::draw(int index) {
    const int cap = 256;
    for (int attempt = 0; attempt < cap; ++attempt) {
        Bindings b(mode_);
        for (const auto& [name, r] : ranges_) {
            if (r.lo == r.hi) {
                b.set(name, r.lo);
            } else {
                std::uniform_real_distribution<double> dist(r.lo, r.hi);
                b.set(name, dist(rng_));
            }
        }
        for (const auto& [name, vs] : value_lists_) {
            b.set(name, vs[static_cast<std::size_t>(index) % vs.size()]);
        }
        bool ok = true;
        for (const Expr& c : constraints_) {
            try {
                if (c.evaluate_real(b) <= 0.0) {
                    ok = false;
                    break;
                }
            } catch (const EvalError&) {
                ok = false;
                break;
            }
        }
        if (ok) return b;
    }
    throw SamplerExhaustedError("sampler exhausted: constraints rejected every draw");
}

bool equiv(const Expr& e1, const Expr& e2, DomainSampler& sampler, double atol, double rtol) {
    bool all_close = true;
    sampler.for_each([&](const Bindings& b) {
        const std::complex<double> v1 = e1.evaluate(b);
        const std::complex<double> v2 = e2.evaluate(b);
        const double diff = std::abs(v1 - v2);
        const double scale = std::max(std::abs(v1), std::abs(v2));
        if (diff > atol + rtol * scale) all_close = false;
        return true;
    });
    return all_close;
}

double max_deviation(const Expr& e1, const Expr& e2, DomainSampler& sampler) {
    double worst = 0.0;
    sampler.for_each([&](const Bindings& b) {
        const double diff = std::abs(e1.evaluate(b) - e2.evaluate(b));
        worst = std::max(worst, diff);
        return true;
    });
    return worst;
}

}  // namespace shapeinv::sym
