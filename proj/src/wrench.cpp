#include "forcecast/wrench.hpp"

#include <stdexcept>

namespace forcecast {

void Trace::append(const TimedWrench& s) {
    if (!std::isfinite(s.t_ms) || s.t_ms < 0.0)
        throw std::invalid_argument("trace timestamp must be finite and non-negative");
    if (!samples.empty() && s.t_ms <= samples.back().t_ms)
        throw std::invalid_argument("trace timestamps must be strictly increasing");
    samples.push_back(s);
}

Wrench wrench_linear_combine(std::span<const double> coeffs, std::span<const Wrench> wrenches) {
    if (coeffs.size() != wrenches.size() || coeffs.empty())
        throw std::invalid_argument("coefficient/wrench sequences must have equal nonzero length");
    Wrench out;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out.force += wrenches[i].force * coeffs[i];
        out.torque += wrenches[i].torque * coeffs[i];
    }
    return out;
}

} // namespace forcecast
