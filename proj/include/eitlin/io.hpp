#pragma once

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "eitlin/bounds.hpp"
#include "eitlin/frechet.hpp"
#include "eitlin/zernike.hpp"

namespace eitlin::io {

/// Round-trip-exact decimal rendering of a double (17 significant digits).
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

inline double parse_double(const std::string& s, const std::string& where) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw std::runtime_error(where + ": malformed number '" + s + "'");
    }
    return v;
}

inline int parse_int(const std::string& s, const std::string& where) {
    int v = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw std::runtime_error(where + ": malformed integer '" + s + "'");
    }
    return v;
}

inline std::string loc(const std::string& name, std::size_t line) {
    return name + ":" + std::to_string(line);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// SpectralPerturbation <-> JSON
// {"jmax":J,"kmax":K,"blocks":[{"j":-J,"re":[...],"im":[...]}, ...]}
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const zernike::SpectralPerturbation& table) {
    nlohmann::json blocks = nlohmann::json::array();
    for (int j = -table.jmax(); j <= table.jmax(); ++j) {
        nlohmann::json re = nlohmann::json::array();
        nlohmann::json im = nlohmann::json::array();
        for (int k = 0; k <= table.kmax(); ++k) {
            re.push_back(table.at(j, k).real());
            im.push_back(table.at(j, k).imag());
        }
        blocks.push_back({{"j", j}, {"re", re}, {"im", im}});
    }
    return {{"jmax", table.jmax()}, {"kmax", table.kmax()}, {"blocks", blocks}};
}

inline zernike::SpectralPerturbation spectral_from_json(const nlohmann::json& doc,
                                                        const std::string& name) {
    for (const char* field : {"jmax", "kmax", "blocks"}) {
        if (!doc.contains(field)) {
            throw std::runtime_error(name + ": missing field '" + field + "'");
        }
    }
    const int jmax = doc.at("jmax").get<int>();
    const int kmax = doc.at("kmax").get<int>();
    if (jmax < 0 || kmax < 0) {
        throw std::runtime_error(name + ": jmax/kmax must be nonnegative");
    }
    zernike::SpectralPerturbation table(jmax, kmax);
    std::vector<bool> seen(static_cast<std::size_t>(2 * jmax + 1), false);
    for (const auto& block : doc.at("blocks")) {
        if (!block.contains("j") || !block.contains("re") || !block.contains("im")) {
            throw std::runtime_error(name + ": block missing field 'j', 're' or 'im'");
        }
        const int j = block.at("j").get<int>();
        if (j < -jmax || j > jmax) {
            throw std::runtime_error(name + ": block j=" + std::to_string(j) +
                                     " outside [-jmax, jmax]");
        }
        if (seen[static_cast<std::size_t>(j + jmax)]) {
            throw std::runtime_error(name + ": duplicate block j=" + std::to_string(j));
        }
        seen[static_cast<std::size_t>(j + jmax)] = true;
        const auto& re = block.at("re");
        const auto& im = block.at("im");
        if (static_cast<int>(re.size()) != kmax + 1 ||
            static_cast<int>(im.size()) != kmax + 1) {
            throw std::runtime_error(name + ": block j=" + std::to_string(j) +
                                     " must carry kmax+1 coefficients");
        }
        for (int k = 0; k <= kmax; ++k) {
            const double vr = re.at(static_cast<std::size_t>(k)).get<double>();
            const double vi = im.at(static_cast<std::size_t>(k)).get<double>();
            if (!std::isfinite(vr) || !std::isfinite(vi)) {
                throw std::runtime_error(name + ": nonfinite coefficient at j=" +
                                         std::to_string(j) + " k=" + std::to_string(k));
            }
            table.at(j, k) = {vr, vi};
        }
    }
    for (int j = -jmax; j <= jmax; ++j) {
        if (!seen[static_cast<std::size_t>(j + jmax)]) {
            throw std::runtime_error(name + ": missing block j=" + std::to_string(j));
        }
    }
    return table;
}

inline std::string write_spectral_json(const zernike::SpectralPerturbation& table) {
    return to_json(table).dump(2) + "\n";
}

inline zernike::SpectralPerturbation read_spectral_json(std::istream& in,
                                                        const std::string& name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(name + ": " + e.what());
    }
    return spectral_from_json(doc, name);
}

// ---------------------------------------------------------------------------
// NDPerturbation <-> CSV rows j,m,n,re,im with n = m + j
// ---------------------------------------------------------------------------

inline std::string write_nd_csv(const frechet::NDPerturbation& nd) {
    std::string out = "j,m,n,re,im\n";
    for (const auto& [j, diag] : nd.diagonals()) {
        const auto ms = frechet::NDPerturbation::admissible_m(j, nd.mmax());
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const int m = ms[i];
            out += std::to_string(j) + "," + std::to_string(m) + "," +
                   std::to_string(m + j) + "," + format_double(diag[i].real()) +
                   "," + format_double(diag[i].imag()) + "\n";
        }
    }
    return out;
}

/// Parses j,m,n,re,im rows. mmax < 1 infers the window from the data.
inline frechet::NDPerturbation read_nd_csv(std::istream& in, const std::string& name,
                                           int mmax = -1) {
    struct Row {
        int j, m;
        std::complex<double> v;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    int seen_mmax = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.rfind("j,", 0) == 0) continue;  // header
        const auto fields = detail::split_csv_line(line);
        const std::string where = detail::loc(name, lineno);
        if (fields.size() != 5) {
            throw std::runtime_error(where + ": expected 5 fields j,m,n,re,im, got " +
                                     std::to_string(fields.size()));
        }
        const int j = detail::parse_int(fields[0], where + " field j");
        const int m = detail::parse_int(fields[1], where + " field m");
        const int n = detail::parse_int(fields[2], where + " field n");
        if (n != m + j) {
            throw std::runtime_error(where + ": requires n = m + j");
        }
        if (m == 0 || n == 0) {
            throw std::runtime_error(where + ": Fourier modes must be nonzero");
        }
        const double re = detail::parse_double(fields[3], where + " field re");
        const double im = detail::parse_double(fields[4], where + " field im");
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::runtime_error(where + ": nonfinite value");
        }
        rows.push_back({j, m, {re, im}});
        seen_mmax = std::max({seen_mmax, std::abs(m), std::abs(n)});
    }
    if (mmax < 1) mmax = std::max(seen_mmax, 1);
    if (seen_mmax > mmax) {
        throw std::runtime_error(name + ": row modes exceed mmax=" +
                                 std::to_string(mmax));
    }
    frechet::NDPerturbation nd(mmax);
    std::map<int, std::map<int, std::complex<double>>> grouped;
    for (const auto& row : rows) {
        if (!grouped[row.j].emplace(row.m, row.v).second) {
            throw std::runtime_error(name + ": duplicate entry j=" +
                                     std::to_string(row.j) + " m=" +
                                     std::to_string(row.m));
        }
    }
    for (const auto& [j, by_m] : grouped) {
        const auto ms = frechet::NDPerturbation::admissible_m(j, mmax);
        std::vector<std::complex<double>> diag(ms.size(), {0.0, 0.0});
        for (const auto& [m, v] : by_m) {
            bool placed = false;
            for (std::size_t i = 0; i < ms.size(); ++i) {
                if (ms[i] == m) {
                    diag[i] = v;
                    placed = true;
                    break;
                }
            }
            if (!placed) {
                throw std::runtime_error(name + ": entry j=" + std::to_string(j) +
                                         " m=" + std::to_string(m) +
                                         " outside the admissible window");
            }
        }
        nd.set_diagonal(j, std::move(diag));
    }
    return nd;
}

// ---------------------------------------------------------------------------
// TriangularBlock -> CSV rows m,k,value (lower-triangular positions)
// ---------------------------------------------------------------------------

inline std::string write_block_csv(const frechet::TriangularBlock& block) {
    std::string out = "m,k,value\n";
    for (int m = 1; m <= block.rows; ++m) {
        for (int k = 1; k <= std::min(m, block.cols); ++k) {
            out += std::to_string(m) + "," + std::to_string(k) + "," +
                   format_double(block.value(m, k)) + "\n";
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Figure-1 table -> CSV rows j,m,k,absF,xi
// ---------------------------------------------------------------------------

inline std::string write_figure1_csv(const std::vector<bounds::Figure1Row>& rows) {
    std::string out = "j,m,k,absF,xi\n";
    for (const auto& row : rows) {
        out += std::to_string(row.j) + "," + std::to_string(row.m) + "," +
               std::to_string(row.k) + "," + format_double(row.abs_f) + "," +
               format_double(row.xi) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Disk samples <-> CSV rows r,theta,re,im
// ---------------------------------------------------------------------------

struct DiskSample {
    double r = 0.0;
    double theta = 0.0;
    std::complex<double> value;
};

inline std::string write_samples_csv(const std::vector<DiskSample>& samples) {
    std::string out = "r,theta,re,im\n";
    for (const auto& s : samples) {
        out += format_double(s.r) + "," + format_double(s.theta) + "," +
               format_double(s.value.real()) + "," + format_double(s.value.imag()) +
               "\n";
    }
    return out;
}

inline std::vector<DiskSample> read_samples_csv(std::istream& in,
                                                const std::string& name) {
    std::vector<DiskSample> samples;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        if (lineno == 1 && line.rfind("r,", 0) == 0) continue;
        const auto fields = detail::split_csv_line(line);
        const std::string where = detail::loc(name, lineno);
        if (fields.size() != 4) {
            throw std::runtime_error(where + ": expected 4 fields r,theta,re,im, got " +
                                     std::to_string(fields.size()));
        }
        DiskSample s;
        s.r = detail::parse_double(fields[0], where + " field r");
        s.theta = detail::parse_double(fields[1], where + " field theta");
        s.value = {detail::parse_double(fields[2], where + " field re"),
                   detail::parse_double(fields[3], where + " field im")};
        if (!(s.r >= 0.0 && s.r <= 1.0)) {
            throw std::runtime_error(where + ": r outside [0, 1]");
        }
        samples.push_back(s);
    }
    return samples;
}

// ---------------------------------------------------------------------------
// BoundReport -> JSON
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const bounds::BoundReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name},
                          {"pass", c.pass},
                          {"worst_margin", c.worst_margin},
                          {"worst_value", c.worst_value},
                          {"worst_bound", c.worst_bound},
                          {"at_j", c.at_j},
                          {"at_m", c.at_m},
                          {"at_k", c.at_k}});
    }
    return {{"checks", checks}, {"all_pass", report.all_pass()}};
}

// ---------------------------------------------------------------------------
// Whole-file helpers
// ---------------------------------------------------------------------------

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace eitlin::io
