#pragma once

/**
 * @file io.hpp
 * @brief JSON and CSV encodings of the numeric types plus atomic file output.
 *
 * Complex numbers are [re, im]; a CoeffSeq is a list of [index, re, im]
 * triples; a TrigPoly is {"period": T, "coeffs": [[n, re, im], ...]}.
 * Text output uses 17 significant digits.
 */

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "specdisp/arith.hpp"
#include "specdisp/polynomial.hpp"
#include "specdisp/types.hpp"

namespace specdisp::io {

using json = nlohmann::json;

inline constexpr int kPrecision = 17;

/// Raised for malformed input documents.
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline json to_json(Complex z) { return json::array({z.real(), z.imag()}); }

/// Accepts a number or [re, im].
inline Complex complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) return {j[0].get<double>(), j[1].get<double>()};
    throw config_error("expected a number or [re, im], got " + j.dump());
}

inline json to_json(const arith::CoeffSeq& s) {
    json out = json::array();
    for (std::size_t n = 1; n <= s.size(); ++n) out.push_back({n, s[n].real(), s[n].imag()});
    return out;
}

inline arith::CoeffSeq coeffseq_from_json(const json& j) {
    if (!j.is_array()) throw config_error("coefficient sequence must be an array of [index, re, im]");
    std::size_t n_max = 0;
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_unsigned() || e[0].get<std::size_t>() == 0)
            throw config_error("coefficient entry must be [index >= 1, re, im], got " + e.dump());
        n_max = std::max(n_max, e[0].get<std::size_t>());
    }
    arith::CoeffSeq s(n_max);
    for (const auto& e : j) s[e[0].get<std::size_t>()] = {e[1].get<double>(), e[2].get<double>()};
    return s;
}

inline json to_json(const arith::TrigPoly& v) {
    json c = json::array();
    for (const auto& [n, a] : v.coeffs()) c.push_back({n, a.real(), a.imag()});
    return {{"period", v.period()}, {"coeffs", c}};
}

inline arith::TrigPoly trigpoly_from_json(const json& j) {
    if (!j.is_object() || !j.contains("coeffs")) throw config_error("potential must be {\"period\", \"coeffs\"}");
    const double period = j.value("period", 2.0 * kPi);
    std::map<int, Complex> c;
    for (const auto& e : j.at("coeffs")) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer())
            throw config_error("potential coefficient must be [n, re, im], got " + e.dump());
        c[e[0].get<int>()] += Complex(e[1].get<double>(), e[2].get<double>());
    }
    if (!(period > 0.0)) throw config_error("potential period must be positive");
    return arith::TrigPoly(std::move(c), period);
}

/// Coefficients in increasing degree, each a number or [re, im].
inline Polynomial polynomial_from_json(const json& j) {
    if (!j.is_array()) throw config_error("polynomial must be an array of coefficients");
    std::vector<Complex> c;
    for (const auto& e : j) c.push_back(complex_from_json(e));
    return Polynomial(std::move(c));
}

inline json to_json(const Polynomial& p) {
    json out = json::array();
    for (const Complex& c : p.coeffs()) out.push_back(to_json(c));
    return out;
}

inline std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(kPrecision) << v;
    return os.str();
}

/// Writes through a temporary sibling and renames it into place.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << content;
        if (!os) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

/// Comma-separated table with a header row.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(const std::vector<double>& row) {
        if (row.size() != header_.size()) throw std::invalid_argument("CsvTable: row width mismatch");
        rows_.push_back(row);
    }
    std::size_t rows() const noexcept { return rows_.size(); }

    std::string str() const {
        std::ostringstream os;
        os << std::setprecision(kPrecision);
        for (std::size_t i = 0; i < header_.size(); ++i) os << (i ? "," : "") << header_[i];
        os << '\n';
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
            os << '\n';
        }
        return os.str();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<double>> rows_;
};

/// Whitespace-separated blocks separated by blank lines, each preceded by a comment line.
struct PlotBlock {
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

inline std::string plotdata(const std::vector<PlotBlock>& blocks, const std::string& header = "specdisp plot data") {
    std::ostringstream os;
    os << std::setprecision(kPrecision);
    os << "# " << header << '\n';
    bool first = true;
    for (const auto& b : blocks) {
        if (!first) os << "\n\n";
        first = false;
        os << "# " << b.title << '\n' << '#';
        for (const auto& c : b.columns) os << ' ' << c;
        os << '\n';
        for (const auto& r : b.rows) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? " " : "") << r[i];
            os << '\n';
        }
    }
    return os.str();
}

inline void emit_plotdata(const std::vector<PlotBlock>& blocks, const std::filesystem::path& path) {
    write_atomic(path, plotdata(blocks));
}

}  // namespace specdisp::io
