#ifndef BNIEP_JSON_IO_HPP
#define BNIEP_JSON_IO_HPP

#include <json.hpp>

#include "bniep/certificate.hpp"
#include "bniep/conditions.hpp"
#include "bniep/core.hpp"
#include "bniep/matrix.hpp"
#include "bniep/spectrum.hpp"

namespace bniep {

// Matrix JSON schema: {"schema": 1, "order": n, "entries": [row-major]}.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const VerificationReport& r);
nlohmann::json verdict_to_json(const ConditionVerdict& v);

/// Aligned decimal grid for human inspection.
std::string matrix_to_text(const Matrix& m, int precision = 6);

}  // namespace bniep

#endif
