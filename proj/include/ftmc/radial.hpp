#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "ftmc/numerics.hpp"
#include "ftmc/quadrature.hpp"

namespace ftmc {

/// |xi|^{-s} for |xi| >= 1 with a smooth monotone cubic fill inside the unit
/// ball: c(r) = 1 + (s/3)(1 - r^3), matching value and first derivative at
/// r = 1 and flat at r = 0.
struct PowerLawProfile {
    double exponent; // s > 0

    double value(double r) const {
        if (r >= 1.0) return std::pow(r, -exponent);
        return 1.0 + exponent / 3.0 * (1.0 - r * r * r);
    }
};

/// Smooth compactly supported bump exp(1 - 1/(1 - (r/R)^2)) on [0, R).
struct BumpProfile {
    double radius;

    double value(double r) const {
        const double u = r / radius;
        if (u >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - u * u));
    }
};

/// Indicator of the shell a <= |xi| <= b.
struct ShellProfile {
    double inner, outer;

    double value(double r) const { return (r >= inner && r <= outer) ? 1.0 : 0.0; }
};

/// Analytic radial profile |ghat|(r) of a spectrum on R^d.
class RadialSpectrum {
public:
    using Rule = std::variant<PowerLawProfile, BumpProfile, ShellProfile>;

    RadialSpectrum(int dim, Rule rule, std::optional<double> support_bound = std::nullopt)
        : dim_(dim), rule_(std::move(rule)), support_(support_bound) {
        if (dim_ < 1) throw std::domain_error("RadialSpectrum: dim must be >= 1");
        if (auto* p = std::get_if<PowerLawProfile>(&rule_); p && !(p->exponent > 0))
            throw std::domain_error("RadialSpectrum: power-law exponent must be positive");
        if (auto* b = std::get_if<BumpProfile>(&rule_)) {
            if (!(b->radius > 0)) throw std::domain_error("RadialSpectrum: bump radius must be positive");
            support_ = b->radius;
        }
        if (auto* s = std::get_if<ShellProfile>(&rule_)) {
            if (!(0 <= s->inner && s->inner < s->outer))
                throw std::domain_error("RadialSpectrum: shell needs 0 <= inner < outer");
            support_ = s->outer;
        }
    }

    int dim() const { return dim_; }
    const Rule& rule() const { return rule_; }
    std::optional<double> support_bound() const { return support_; }

    double profile(double r) const {
        if (r < 0) throw std::domain_error("RadialSpectrum: radius must be nonnegative");
        if (support_ && r > *support_) return 0.0;
        return std::visit([&](const auto& rl) { return rl.value(r); }, rule_);
    }

    bool is_power_law() const { return std::holds_alternative<PowerLawProfile>(rule_); }
    double power_exponent() const { return std::get<PowerLawProfile>(rule_).exponent; }

    /// All built-in profiles are nonincreasing in r, which the sup-form
    /// (p' = inf) tail evaluations rely on.
    bool monotone_nonincreasing() const {
        if (auto* s = std::get_if<ShellProfile>(&rule_)) return s->inner == 0.0;
        return true;
    }

    /// Check g in L^{p'}: the radial integral of profile^{p'} r^{d-1} must
    /// converge.  Power laws are decided analytically (s p' > d); compactly
    /// supported profiles always qualify.  For p' = inf membership means a
    /// finite sup.
    bool in_lp(double pprime) const {
        if (std::isinf(pprime)) return true;
        if (!(pprime >= 1.0)) throw std::domain_error("RadialSpectrum: p' must be >= 1 or inf");
        if (support_) return true;
        return power_exponent() * pprime > double(dim_);
    }

private:
    int dim_;
    Rule rule_;
    std::optional<double> support_;
};

} // namespace ftmc
