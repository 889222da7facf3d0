#ifndef BNIEP_SPECTRUM_HPP
#define BNIEP_SPECTRUM_HPP

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace bniep {

/// A finite multiset of real numbers kept sorted non-increasing.
class Spectrum {
public:
    explicit Spectrum(std::vector<double> values);
    Spectrum(std::initializer_list<double> values) : Spectrum(std::vector<double>(values)) {}

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

    double sum() const;
    double head() const { return values_.front(); }

    /// Count of nonnegative entries after the head (the paper-style M).
    std::size_t nonneg_after_head() const;

    /// Entries strictly below zero, sorted non-increasing.
    std::vector<double> negative_tail() const;

    bool operator==(const Spectrum& o) const { return values_ == o.values_; }

private:
    std::vector<double> values_;
};

}  // namespace bniep

#endif
