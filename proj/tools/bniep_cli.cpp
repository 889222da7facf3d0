#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bniep/conditions.hpp"
#include "bniep/constructors.hpp"
#include "bniep/core.hpp"
#include "bniep/diagonal.hpp"
#include "bniep/json_io.hpp"
#include "bniep/positive.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

double parse_number(const std::string& token) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        throw usage_error("cannot parse number '" + token + "'");
    }
    if (pos != token.size()) throw usage_error("cannot parse number '" + token + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

/// Comma- and/or whitespace-separated decimals; empty fields are errors.
std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    const bool has_comma = text.find(',') != std::string::npos;
    const std::vector<std::string> pieces = has_comma ? split(text, ',') : std::vector{text};
    for (const std::string& piece : pieces) {
        const std::string t = trim(piece);
        if (t.empty()) {
            if (has_comma) throw usage_error("malformed list '" + text + "'");
            continue;
        }
        std::istringstream is(t);
        std::string token;
        while (is >> token) out.push_back(parse_number(token));
    }
    if (out.empty()) throw usage_error("empty list '" + text + "'");
    return out;
}

std::vector<std::vector<double>> parse_partition(const std::string& text) {
    std::vector<std::vector<double>> blocks;
    for (const std::string& piece : split(text, '|')) blocks.push_back(parse_list(piece));
    return blocks;
}

std::vector<bniep::SotoBlock> parse_blocks(const std::string& text) {
    std::vector<bniep::SotoBlock> blocks;
    for (const std::string& piece : split(text, '|')) {
        const std::vector<std::string> halves = split(piece, '@');
        if (halves.size() != 2)
            throw usage_error("block '" + piece + "' must be 'values@omega'");
        bniep::SotoBlock b;
        b.values = parse_list(halves[0]);
        b.omega = parse_number(trim(halves[1]));
        blocks.push_back(std::move(b));
    }
    return blocks;
}

double default_tol() {
    if (const char* env = std::getenv("BNIEP_TOL")) {
        try {
            return parse_number(env);
        } catch (const usage_error&) {
            throw usage_error("BNIEP_TOL is not a number");
        }
    }
    return 1e-9;
}

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw usage_error("cannot open output file '" + output_path + "'");
    f << text;
}

std::string render_report_text(const bniep::VerificationReport& r) {
    std::ostringstream os;
    os << "symmetric:          " << (r.is_symmetric ? "yes" : "no") << "\n"
       << "persymmetric:       " << (r.is_persymmetric ? "yes" : "no") << "\n"
       << "min entry:          " << r.min_entry << "\n"
       << "spectrum deviation: " << r.spectrum_deviation << "\n"
       << "tolerance:          " << r.tol_used << "\n"
       << "verdict:            " << (r.pass ? "pass" : "fail") << "\n";
    return os.str();
}

std::string render_verdicts_text(const std::vector<bniep::ConditionVerdict>& vs) {
    std::ostringstream os;
    for (const auto& v : vs) {
        os << v.name << ": " << (v.holds ? "holds" : "fails");
        if (!v.detail.empty()) os << " (" << v.detail << ")";
        os << "\n";
    }
    return os.str();
}

json verdicts_json(const std::vector<bniep::ConditionVerdict>& vs) {
    json arr = json::array();
    for (const auto& v : vs) arr.push_back(bniep::verdict_to_json(v));
    return arr;
}

struct Options {
    std::string spectrum_text;
    std::string partition_text;
    std::string blocks_text;
    std::string diag_text;
    std::string matrix_path;
    std::string strategy = "auto";
    std::string format = "text";
    std::string output_path;
    double tol = -1.0;  // resolved after parsing (flag > env > default)
    std::optional<double> epsilon;
};

int run_check(const Options& opt) {
    bniep::Spectrum s(parse_list(opt.spectrum_text));
    std::vector<bniep::ConditionVerdict> verdicts;
    verdicts.push_back(bniep::check_suleimanova(s));
    verdicts.push_back(bniep::check_kellogg(s));
    if (!opt.partition_text.empty()) {
        bniep::PartitionPlan plan =
            bniep::PartitionPlan::make(s, parse_partition(opt.partition_text));
        verdicts.push_back(bniep::check_borobia_bisym(s, plan));
    } else {
        try {
            verdicts.push_back(bniep::check_borobia_reference(s));
            std::optional<bniep::PartitionPlan> plan = bniep::search_partition(s);
            bniep::ConditionVerdict v;
            v.name = "borobia-bisym";
            v.holds = plan.has_value();
            if (plan)
                v.witness = std::move(plan);
            else
                v.detail = "no partition of the negative tail passes";
            verdicts.push_back(std::move(v));
        } catch (const bniep::capacity_error& e) {
            bniep::ConditionVerdict v;
            v.name = "borobia-bisym";
            v.detail = std::string("not evaluated: ") + e.what();
            verdicts.push_back(std::move(v));
        }
    }
    // the merged-list reference condition is informational only: it does not
    // imply bisymmetric realizability, so it never drives the exit code
    bool any = false;
    for (const auto& v : verdicts) any = any || (v.holds && v.name != "borobia-reference");
    if (opt.format == "json") {
        json j;
        j["schema"] = 1;
        j["verdicts"] = verdicts_json(verdicts);
        emit(j.dump(2) + "\n", opt.output_path);
    } else {
        emit(render_verdicts_text(verdicts), opt.output_path);
    }
    return any ? kExitOk : kExitInfeasible;
}

int run_construct(const Options& opt) {
    bniep::Spectrum s(parse_list(opt.spectrum_text));

    std::optional<bniep::PartitionPlan> plan;
    if (!opt.partition_text.empty())
        plan = bniep::PartitionPlan::make(s, parse_partition(opt.partition_text));

    bniep::Construction built = [&]() -> bniep::Construction {
        const std::string& st = opt.strategy;
        if (st == "auto") return bniep::construct_auto(s);
        if (st == "small") return bniep::construct_small(s);
        if (st == "suleimanova") return bniep::construct_suleimanova(s);
        if (st == "borobia") {
            if (!plan) plan = bniep::search_partition(s);
            if (!plan)
                throw bniep::infeasible_error(
                    "no partition of the negative tail passes the odd-partition condition");
            return bniep::construct_borobia(s, *plan);
        }
        if (st == "soto") {
            if (opt.blocks_text.empty())
                throw usage_error("--blocks is required for the soto strategy");
            bniep::SotoResult r = bniep::construct_soto(s, parse_blocks(opt.blocks_text));
            return {std::move(r.matrix), std::move(r.certificate)};
        }
        if (st == "diagonal") {
            if (opt.diag_text.empty())
                throw usage_error("--diag is required for the diagonal strategy");
            bniep::DiagonalSpec spec{s, parse_list(opt.diag_text)};
            return (s.size() % 2 == 1) ? bniep::construct_diag_odd(spec)
                                       : bniep::construct_diag_even(spec);
        }
        if (st == "positive") {
            if (opt.epsilon) {
                std::vector<double> shifted = s.values();
                shifted[0] -= *opt.epsilon;
                bniep::Spectrum s2((shifted));
                bniep::Construction base =
                    plan ? bniep::construct_borobia(s2, *plan) : bniep::construct_auto(s2);
                bniep::Construction lifted = bniep::positify(base.matrix, *opt.epsilon);
                bniep::Certificate cert;
                cert.kind = "positive";
                cert.params["epsilon"] = *opt.epsilon;
                cert.children.push_back(std::move(base.certificate));
                return {std::move(lifted.matrix), std::move(cert)};
            }
            if (!plan) plan = bniep::search_partition(s);
            if (!plan)
                throw bniep::infeasible_error(
                    "no partition of the negative tail passes the odd-partition condition");
            return bniep::construct_positive_borobia(s, *plan);
        }
        throw usage_error("unknown strategy '" + st + "'");
    }();

    const bniep::VerificationReport report =
        bniep::verify_realization(built.matrix, s, opt.tol);

    if (opt.format == "json") {
        json j;
        j["schema"] = 1;
        j["matrix"] = bniep::matrix_to_json(built.matrix.matrix());
        j["certificate"] = bniep::certificate_to_json(built.certificate);
        j["report"] = bniep::report_to_json(report);
        emit(j.dump(2) + "\n", opt.output_path);
    } else {
        std::ostringstream os;
        os << bniep::matrix_to_text(built.matrix.matrix()) << "\n"
           << "certificate: " << built.certificate.kind << "\n"
           << render_report_text(report);
        emit(os.str(), opt.output_path);
    }
    return report.pass ? kExitOk : kExitInfeasible;
}

int run_verify(const Options& opt) {
    bniep::Spectrum s(parse_list(opt.spectrum_text));
    std::ifstream f(opt.matrix_path);
    if (!f) throw usage_error("cannot open matrix file '" + opt.matrix_path + "'");
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw usage_error(std::string("matrix JSON parse error: ") + e.what());
    }
    bniep::Matrix m = bniep::matrix_from_json(j);
    const bniep::VerificationReport report = bniep::verify_matrix(m, s, opt.tol);
    if (opt.format == "json") {
        json out;
        out["schema"] = 1;
        out["report"] = bniep::report_to_json(report);
        emit(out.dump(2) + "\n", opt.output_path);
    } else {
        emit(render_report_text(report), opt.output_path);
    }
    return report.pass ? kExitOk : kExitInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constructive solver for bisymmetric nonnegative spectra"};
    app.require_subcommand(1);

    Options opt;
    double tol_flag = -1.0;
    double epsilon_flag = -1.0;

    CLI::App* check = app.add_subcommand("check", "Evaluate the sufficient conditions");
    check->add_option("--spectrum", opt.spectrum_text, "Target spectrum")->required();
    check->add_option("--partition", opt.partition_text, "Negative-tail partition 'a,b|c'");
    check->add_option("--format", opt.format, "text|json");
    check->add_option("--output", opt.output_path, "Output file (default stdout)");

    CLI::App* construct = app.add_subcommand("construct", "Build a realizing matrix");
    construct->add_option("--spectrum", opt.spectrum_text, "Target spectrum")->required();
    construct
        ->add_option("--strategy", opt.strategy,
                     "auto|small|suleimanova|borobia|soto|diagonal|positive")
        ->check(CLI::IsMember(
            {"auto", "small", "suleimanova", "borobia", "soto", "diagonal", "positive"}));
    construct->add_option("--partition", opt.partition_text, "Negative-tail partition 'a,b|c'");
    construct->add_option("--blocks", opt.blocks_text, "Blocks 'values@omega|values@omega'");
    construct->add_option("--diag", opt.diag_text, "Diagonal prescription a0,a1,...");
    CLI::Option* eps_opt = construct->add_option("--epsilon", epsilon_flag, "Positive shift");
    construct->add_option("--format", opt.format, "text|json");
    construct->add_option("--output", opt.output_path, "Output file (default stdout)");
    construct->add_option("--tol", tol_flag, "Verification tolerance");

    CLI::App* verify = app.add_subcommand("verify", "Verify a matrix against a spectrum");
    verify->add_option("--matrix", opt.matrix_path, "Matrix JSON file")->required();
    verify->add_option("--spectrum", opt.spectrum_text, "Target spectrum")->required();
    verify->add_option("--format", opt.format, "text|json");
    verify->add_option("--output", opt.output_path, "Output file (default stdout)");
    verify->add_option("--tol", tol_flag, "Verification tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (opt.format != "text" && opt.format != "json")
            throw usage_error("--format must be text or json");
        opt.tol = (tol_flag >= 0.0) ? tol_flag : default_tol();
        if (eps_opt->count() > 0) opt.epsilon = epsilon_flag;

        if (check->parsed()) return run_check(opt);
        if (construct->parsed()) return run_construct(opt);
        return run_verify(opt);
    } catch (const bniep::infeasible_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        if (!e.verdicts.empty()) {
            if (opt.format == "json") {
                json j;
                j["schema"] = 1;
                j["verdicts"] = verdicts_json(e.verdicts);
                std::cerr << j.dump(2) << "\n";
            } else {
                std::cerr << render_verdicts_text(e.verdicts);
            }
        }
        return kExitInfeasible;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
