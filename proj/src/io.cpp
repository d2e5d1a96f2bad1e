#include "azr/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace azr::io {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

MatrixFile parse_matrix_json(const std::string& text, bool require_hermitian) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
        throw ParseError("matrix JSON: need fields 'dim' and 'entries'");

    MatrixFile out;
    try {
        out.dim = j.at("dim").get<int>();
        if (out.dim < 1) throw ParseError("matrix JSON: dim must be >= 1");
        const auto& rows = j.at("entries");
        if (!rows.is_array() || static_cast<int>(rows.size()) != out.dim)
            throw ParseError("matrix JSON: entries must hold dim rows");
        out.matrix.resize(out.dim, out.dim);
        for (int i = 0; i < out.dim; ++i) {
            const auto& row = rows.at(i);
            if (!row.is_array() || static_cast<int>(row.size()) != out.dim)
                throw ParseError("matrix JSON: each row must hold dim entries");
            for (int k = 0; k < out.dim; ++k) {
                const auto& cell = row.at(k);
                if (!cell.is_array() || cell.size() != 2)
                    throw ParseError("matrix JSON: entries are [re, im] pairs");
                out.matrix(i, k) = Cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
            }
        }
        if (j.contains("label")) out.label = j.at("label").get<std::string>();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(std::string("matrix JSON: ") + e.what());
    }

    if (!out.matrix.allFinite()) throw ParseError("matrix JSON: entries must be finite");
    if (require_hermitian && matkit::hermiticity_residual(out.matrix) > 1e-8)
        throw ParseError("matrix JSON: state input is not Hermitian within 1e-8");
    return out;
}

MatrixFile load_matrix(const std::string& path, bool require_hermitian) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix_json(ss.str(), require_hermitian);
}

std::string matrix_to_json(const CMat& m, const std::string& label) {
    ordered_json j;
    j["dim"] = static_cast<int>(m.rows());
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    if (!label.empty()) j["label"] = label;
    return j.dump(2) + "\n";
}

void write_matrix(const std::string& path, const CMat& m, const std::string& label) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write matrix file: " + path);
    out << matrix_to_json(m, label);
}

std::string to_json(const channels::DpiReport& report) {
    ordered_json j;
    j["kind"] = "dpi-scan";
    j["dim"] = report.dim;
    j["trials"] = report.trials;
    j["seed"] = report.seed;
    j["rng"] = report.rng_version;
    ordered_json pts = ordered_json::array();
    for (const auto& p : report.points) {
        ordered_json e;
        e["alpha"] = p.alpha;
        e["z"] = p.z;
        e["region_class"] = channels::to_string(p.region);
        e["trials"] = p.trials;
        e["max_violation"] = p.max_violation;
        e["worst_seed"] = p.worst_seed;
        pts.push_back(std::move(e));
    }
    j["points"] = std::move(pts);
    return j.dump(2) + "\n";
}

void write_csv(const channels::DpiReport& report, std::ostream& os) {
    os << "alpha,z,region_class,trials,max_violation,worst_seed\n";
    for (const auto& p : report.points) {
        os << format_double(p.alpha) << ',' << format_double(p.z) << ','
           << channels::to_string(p.region) << ',' << p.trials << ','
           << format_double(p.max_violation) << ',' << p.worst_seed << '\n';
    }
}

std::string to_json(const propcheck::SuiteResult& result) {
    ordered_json j;
    j["suite"] = result.suite_name;
    j["cases_run"] = result.cases_run;
    j["tolerance"] = result.tolerance;
    j["pass"] = result.pass();
    j["conjecture_mode"] = result.conjecture_mode;
    j["warning"] = result.warning;
    if (!result.note.empty()) j["note"] = result.note;
    ordered_json fs = ordered_json::array();
    for (const auto& f : result.failures) {
        ordered_json e;
        e["check"] = f.check;
        e["inputs_digest"] = f.digest;
        e["seed"] = f.seed;
        e["magnitude"] = f.magnitude;
        fs.push_back(std::move(e));
    }
    j["failures"] = std::move(fs);
    return j.dump(2) + "\n";
}

} // namespace azr::io
