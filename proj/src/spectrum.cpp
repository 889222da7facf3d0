#include "bniep/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bniep {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("Spectrum: needs at least one value");
    for (double v : values_)
        if (std::isnan(v)) throw std::invalid_argument("Spectrum: NaN value");
    std::sort(values_.begin(), values_.end(), std::greater<double>());
}

double Spectrum::sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
}

std::size_t Spectrum::nonneg_after_head() const {
    std::size_t m = 0;
    for (std::size_t i = 1; i < values_.size(); ++i)
        if (values_[i] >= 0.0) ++m;
    return m;
}

std::vector<double> Spectrum::negative_tail() const {
    std::vector<double> t;
    for (double v : values_)
        if (v < 0.0) t.push_back(v);
    return t;
}

}  // namespace bniep
