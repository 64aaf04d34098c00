#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace cfnet::activation {

enum class SigmoidKind { logistic, tanh, arctan, gompertz };

/// A bounded sigmoidal function: sigma(t) -> 1 as t -> +inf and -> 0 as
/// t -> -inf. All built-ins are monotone nondecreasing with sup norm 1.
class Sigmoid {
public:
    Sigmoid() = default;

    static Sigmoid logistic() { return Sigmoid(SigmoidKind::logistic, 1.0, 1.0); }
    static Sigmoid tanh() { return Sigmoid(SigmoidKind::tanh, 1.0, 1.0); }
    static Sigmoid arctan() { return Sigmoid(SigmoidKind::arctan, 1.0, 1.0); }
    /// exp(-a exp(-b t)); throws unless a, b > 0.
    static Sigmoid gompertz(double a = 1.0, double b = 1.0);

    /// Accepts "logistic", "tanh", "arctan", "gompertz" and "gompertz:a,b".
    static Sigmoid parse(std::string_view name);

    SigmoidKind kind() const noexcept { return kind_; }
    double gompertz_a() const noexcept { return a_; }
    double gompertz_b() const noexcept { return b_; }
    double sup_norm() const noexcept { return 1.0; }

    /// Name that parse() maps back to an identical Sigmoid.
    std::string name() const;

    double operator()(double t) const noexcept;

    /// sigma^{-1}(p) for p in (0,1).
    double inverse(double p) const;

    friend bool operator==(const Sigmoid&, const Sigmoid&) = default;

private:
    Sigmoid(SigmoidKind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

    SigmoidKind kind_ = SigmoidKind::logistic;
    double a_ = 1.0;
    double b_ = 1.0;
};

/// Exponent arguments are clamped to this magnitude before exp().
inline constexpr double exp_clamp = 700.0;

/// Smallest K > 0 with |sigma(t) - 1| < eps for t >= K and |sigma(t)| < eps
/// for t <= -K (closed form for every built-in). Requires 0 < eps < 1/2.
double tail_constant(const Sigmoid& sigma, double epsilon);

/// Smoothness prior used when none is given.
inline constexpr double default_smoothness = 2.0;

/// Width returned for a single center, where w has no effect.
inline constexpr double single_center_width = 1.0;

/// 4 K n^{1/d} with K = tail_constant(sigma, n^{-(s+d)/d}).
double recommended_w(const Sigmoid& sigma, std::size_t n, std::size_t d, double s = default_smoothness);

} // namespace cfnet::activation
