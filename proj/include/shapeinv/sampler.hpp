#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "shapeinv/expr.hpp"

namespace shapeinv::sym {

// Draws random bindings inside declared per-symbol ranges, rejecting draws
// that violate positivity constraints or that evaluate into a pole. Used by
// equiv() and by all sampled residual checks; a fixed seed makes every run
// reproducible.
class DomainSampler {
  public:
    DomainSampler(unsigned seed, int count) : rng_(seed), count_(count) {}

    DomainSampler& range(const std::string& symbol, double lo, double hi) {
        ranges_[symbol] = {lo, hi};
        return *this;
    }
    DomainSampler& fixed(const std::string& symbol, double v) { return range(symbol, v, v); }
    // Cycles through the listed values sample-by-sample (e.g. an hbar grid).
    DomainSampler& values(const std::string& symbol, std::vector<double> vs) {
        value_lists_[symbol] = std::move(vs);
        return *this;
    }
    // Constraint expressions that must evaluate > 0 at every accepted draw.
    DomainSampler& require_positive(const Expr& e) {
        constraints_.push_back(e);
        return *this;
    }
    DomainSampler& mode(EvalMode m) {
        mode_ = m;
        return *this;
    }

    int count() const { return count_; }
    EvalMode eval_mode() const { return mode_; }

    // One admissible draw; index selects entries from value lists.
    Bindings draw(int index);

    // Runs fn over `count` admissible samples. fn returns false to flag a
    // sample as unusable (pole hit downstream); such samples are redrawn.
    // Throws SamplerExhaustedError when too many draws fail.
    template <typename Fn>
    void for_each(Fn&& fn) {
        int good = 0;
        int attempts = 0;
        const int cap = 64 * count_ + 256;
        while (good < count_) {
            if (++attempts > cap)
                throw SamplerExhaustedError("sampler exhausted: could not find admissible samples");
            Bindings b = draw(good);
            bool ok;
            try {
                ok = fn(b);
            } catch (const EvalError&) {
                ok = false;
            }
            if (ok) ++good;
        }
    }

  private:
    struct Range {
        double lo, hi;
    };
    std::map<std::string, Range> ranges_;
    std::map<std::string, std::vector<double>> value_lists_;
    std::vector<Expr> constraints_;
    std::mt19937_64 rng_;
    int count_;
    EvalMode mode_ = EvalMode::Real;
};

// Probabilistic equality: |e1-e2| <= atol + rtol*max(|e1|,|e2|) at every
// sample. False negatives do not occur; false positives have vanishing
// probability for this function class at >= 32 samples.
bool equiv(const Expr& e1, const Expr& e2, DomainSampler& sampler, double atol = 1e-10,
           double rtol = 1e-9);

// Same check, reporting the worst deviation seen.
double max_deviation(const Expr& e1, const Expr& e2, DomainSampler& sampler);

}  // namespace shapeinv::sym
