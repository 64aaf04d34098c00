#include "cfnet/activation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cfnet::activation {
namespace {

double clamp_exp_arg(double t) { return std::clamp(t, -exp_clamp, exp_clamp); }

double parse_double(std::string_view s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw std::invalid_argument("Sigmoid: bad number '" + std::string(s) + "'");
    return v;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

} // namespace

Sigmoid Sigmoid::gompertz(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("Sigmoid: gompertz parameters must be positive");
    return Sigmoid(SigmoidKind::gompertz, a, b);
}

Sigmoid Sigmoid::parse(std::string_view name) {
    if (name == "logistic") return logistic();
    if (name == "tanh") return tanh();
    if (name == "arctan") return arctan();
    if (name == "gompertz") return gompertz();
    constexpr std::string_view tag = "gompertz:";
    if (name.starts_with(tag)) {
        auto params = name.substr(tag.size());
        auto comma = params.find(',');
        if (comma == std::string_view::npos) throw std::invalid_argument("Sigmoid: expected gompertz:a,b");
        return gompertz(parse_double(params.substr(0, comma)), parse_double(params.substr(comma + 1)));
    }
    throw std::invalid_argument("Sigmoid: unknown activation '" + std::string(name) + "'");
}

std::string Sigmoid::name() const {
    switch (kind_) {
    case SigmoidKind::logistic: return "logistic";
    case SigmoidKind::tanh: return "tanh";
    case SigmoidKind::arctan: return "arctan";
    case SigmoidKind::gompertz: return "gompertz:" + format_double(a_) + "," + format_double(b_);
    }
    return {};
}

double Sigmoid::operator()(double t) const noexcept {
    switch (kind_) {
    case SigmoidKind::logistic: {
        const double u = clamp_exp_arg(t);
        if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
        const double e = std::exp(u);
        return e / (1.0 + e);
    }
    case SigmoidKind::tanh: return 0.5 * (std::tanh(clamp_exp_arg(t)) + 1.0);
    case SigmoidKind::arctan: return std::atan(t) / std::numbers::pi + 0.5;
    case SigmoidKind::gompertz: return std::exp(-a_ * std::exp(-clamp_exp_arg(b_ * t)));
    }
    return 0.0;
}

double Sigmoid::inverse(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("Sigmoid::inverse: p outside (0,1)");
    switch (kind_) {
    case SigmoidKind::logistic: return std::log(p / (1.0 - p));
    case SigmoidKind::tanh: return std::atanh(2.0 * p - 1.0);
    case SigmoidKind::arctan: return std::tan(std::numbers::pi * (p - 0.5));
    case SigmoidKind::gompertz: return -std::log(-std::log(p) / a_) / b_;
    }
    return 0.0;
}

double tail_constant(const Sigmoid& sigma, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw std::invalid_argument("tail_constant: epsilon must lie in (0, 1/2)");
    // Monotone tails: the upper bound binds at sigma^{-1}(1 - eps), the lower
    // at -sigma^{-1}(eps). K is the larger of the two, kept positive.
    // The forms below avoid evaluating 1 - eps, which rounds for tiny eps.
    const double logit = std::log1p(-epsilon) - std::log(epsilon);
    double upper = 0.0;
    double lower = 0.0;
    switch (sigma.kind()) {
    case SigmoidKind::logistic: upper = lower = logit; break;
    case SigmoidKind::tanh: upper = lower = 0.5 * logit; break; // logistic(2t)
    case SigmoidKind::arctan: upper = lower = 1.0 / std::tan(std::numbers::pi * epsilon); break;
    case SigmoidKind::gompertz:
        upper = std::log(sigma.gompertz_a() / -std::log1p(-epsilon)) / sigma.gompertz_b();
        lower = std::log(-std::log(epsilon) / sigma.gompertz_a()) / sigma.gompertz_b();
        break;
    }
    constexpr double floor = 1e-6;
    return std::max({upper, lower, floor});
}

double recommended_w(const Sigmoid& sigma, std::size_t n, std::size_t d, double s) {
    if (d == 0) throw std::invalid_argument("recommended_w: d must be positive");
    if (!(s > 0.0)) throw std::invalid_argument("recommended_w: s must be positive");
    if (n <= 1) return single_center_width;
    const double nd = static_cast<double>(n);
    const double dd = static_cast<double>(d);
    const double eps = std::pow(nd, -(s + dd) / dd);
    return 4.0 * tail_constant(sigma, eps) * std::pow(nd, 1.0 / dd);
}

} // namespace cfnet::activation
