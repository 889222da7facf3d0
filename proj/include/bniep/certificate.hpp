#ifndef BNIEP_CERTIFICATE_HPP
#define BNIEP_CERTIFICATE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bniep/matrix.hpp"

namespace bniep {

/// Replayable record of which construction produced a matrix and with what
/// parameters. replay() re-runs the recorded operations and reproduces the
/// matrix bit-identically.
struct Certificate {
    // small | zero | scalar | pair | user-block | suleimanova-step | glue-ab |
    // center-insert | nest | diag-pad | merge-transfer |
    // borobia-3.4 | borobia-3.5 | borobia-3.6 | soto-3.8 | positive | diagonal
    std::string kind;
    std::map<std::string, double> params;
    std::vector<double> values;   // spectrum / lambda list, kind-dependent
    std::vector<double> aux;      // omega list / diagonal prescription
    std::optional<Matrix> mat;    // explicit matrix payload (user-block, soto B)
    std::vector<Certificate> children;

    bool operator==(const Certificate& o) const;
};

BisymMatrix replay(const Certificate& cert);

}  // namespace bniep

#endif
