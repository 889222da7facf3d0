#include "bniep/json_io.hpp"

#include <iomanip>
#include <sstream>

namespace bniep {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("matrix_to_json: square input required");
    json j;
    j["schema"] = 1;
    j["order"] = m.rows();
    std::vector<double> entries;
    entries.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) entries.push_back(m(i, k));
    j["entries"] = entries;
    return j;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != 1)
        throw std::invalid_argument("matrix_from_json: unsupported or missing schema");
    if (!j.contains("order") || !j["order"].is_number_unsigned())
        throw std::invalid_argument("matrix_from_json: missing order");
    const std::size_t n = j["order"].get<std::size_t>();
    if (n == 0) throw std::invalid_argument("matrix_from_json: order must be positive");
    if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != n * n)
        throw std::invalid_argument("matrix_from_json: entries must hold order^2 numbers");
    Matrix m(n, n);
    std::size_t idx = 0;
    for (const auto& e : j["entries"]) {
        if (!e.is_number()) throw std::invalid_argument("matrix_from_json: non-numeric entry");
        m(idx / n, idx % n) = e.get<double>();
        ++idx;
    }
    return m;
}

json certificate_to_json(const Certificate& c) {
    json j;
    j["kind"] = c.kind;
    j["params"] = json::object();
    for (const auto& [k, v] : c.params) j["params"][k] = v;
    j["values"] = c.values;
    j["aux"] = c.aux;
    j["mat"] = c.mat ? matrix_to_json(*c.mat) : json();
    json kids = json::array();
    for (const Certificate& child : c.children) kids.push_back(certificate_to_json(child));
    j["children"] = std::move(kids);
    return j;
}

Certificate certificate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("certificate_from_json: missing kind");
    Certificate c;
    c.kind = j["kind"].get<std::string>();
    if (j.contains("params"))
        for (const auto& [k, v] : j["params"].items()) c.params[k] = v.get<double>();
    if (j.contains("values")) c.values = j["values"].get<std::vector<double>>();
    if (j.contains("aux")) c.aux = j["aux"].get<std::vector<double>>();
    if (j.contains("mat") && !j["mat"].is_null()) c.mat = matrix_from_json(j["mat"]);
    if (j.contains("children"))
        for (const auto& kid : j["children"]) c.children.push_back(certificate_from_json(kid));
    return c;
}

json report_to_json(const VerificationReport& r) {
    json j;
    j["is_symmetric"] = r.is_symmetric;
    j["is_persymmetric"] = r.is_persymmetric;
    j["min_entry"] = r.min_entry;
    j["spectrum_deviation"] = r.spectrum_deviation;
    j["pass"] = r.pass;
    j["tol_used"] = r.tol_used;
    return j;
}

json verdict_to_json(const ConditionVerdict& v) {
    json j;
    j["name"] = v.name;
    j["holds"] = v.holds;
    j["detail"] = v.detail;
    if (v.witness) {
        json w;
        w["blocks"] = v.witness->blocks;
        j["witness"] = std::move(w);
    } else {
        j["witness"] = json();
    }
    return j;
}

std::string matrix_to_text(const Matrix& m, int precision) {
    std::vector<std::string> cells;
    cells.reserve(m.rows() * m.cols());
    std::size_t width = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::ostringstream os;
            os << std::fixed << std::setprecision(precision) << m(i, j);
            cells.push_back(os.str());
            width = std::max(width, cells.back().size());
        }
    std::ostringstream out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << std::setw(int(width)) << cells[i * m.cols() + j];
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace bniep
