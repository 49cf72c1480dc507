#include "avqe/integrals.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "avqe/errors.hpp"

namespace avqe {

namespace {

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    return s;
}

/// Split the namelist header into KEY=VALUE chunks (values may be int lists).
struct Header {
    int norb = -1;
    int nelec = 0;
    int ms2 = 0;
    std::vector<int> orbsym;
    bool present = false;
};

Header parse_header(std::istream& in, int& line_no) {
    Header h;
    std::string line;
    // peek: a header starts with '&'
    const auto start = in.tellg();
    if (!std::getline(in, line)) {
        throw ParseError("empty input");
    }
    ++line_no;
    std::string first = line;
    first.erase(0, first.find_first_not_of(" \t"));
    if (first.empty() || first[0] != '&') {
        in.seekg(start);
        --line_no;
        return h;  // headerless property file
    }
    h.present = true;
    std::string blob = line;
    auto is_end = [](const std::string& l) {
        const auto u = upper(l);
        return u.find("&END") != std::string::npos ||
               l.find('/') != std::string::npos;
    };
    while (!is_end(blob)) {
        if (!std::getline(in, line)) {
            throw ParseError("header not terminated by &END (line " + std::to_string(line_no) + ")");
        }
        ++line_no;
        blob += " " + line;
    }
    // tokenize on commas/whitespace, keeping KEY=... associations
    std::string cleaned;
    for (char c : blob) {
        cleaned += (c == ',' || c == '\t' || c == '\n') ? ' ' : c;
    }
    std::istringstream tok(cleaned);
    std::string word;
    std::string key;
    std::vector<std::string> values;
    auto flush = [&]() {
        if (key.empty()) {
            return;
        }
        const auto k = upper(key);
        try {
            if (k == "NORB") {
                h.norb = std::stoi(values.at(0));
            } else if (k == "NELEC") {
                h.nelec = std::stoi(values.at(0));
            } else if (k == "MS2") {
                h.ms2 = std::stoi(values.at(0));
            } else if (k == "ORBSYM") {
                for (const auto& v : values) {
                    h.orbsym.push_back(std::stoi(v));
                }
            }
        } catch (const std::exception&) {
            throw ParseError("malformed header value for " + k);
        }
        key.clear();
        values.clear();
    };
    while (tok >> word) {
        if (word[0] == '&' || word == "/" || upper(word) == "&END") {
            continue;
        }
        const auto eq = word.find('=');
        if (eq != std::string::npos) {
            flush();
            key = word.substr(0, eq);
            const auto rest = word.substr(eq + 1);
            if (!rest.empty()) {
                values.push_back(rest);
            }
        } else if (!key.empty()) {
            values.push_back(word);
        }
    }
    flush();
    if (h.norb < 1) {
        throw ParseError("header must declare NORB >= 1");
    }
    if (h.orbsym.empty()) {
        h.orbsym.assign(static_cast<std::size_t>(h.norb), 1);
    }
    if (static_cast<int>(h.orbsym.size()) != h.norb) {
        throw ParseError("ORBSYM length does not match NORB");
    }
    return h;
}

struct DataLine {
    double value;
    int i, j, k, l;
};

bool read_data_line(std::istream& in, int& line_no, DataLine& out) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        std::string tmp = line;
        // Fortran D exponents
        for (auto& c : tmp) {
            if (c == 'D' || c == 'd') {
                c = 'E';
            }
        }
        std::istringstream ss(tmp);
        if (!(ss >> out.value)) {
            std::string probe;
            std::istringstream chk(line);
            if (!(chk >> probe)) {
                continue;  // blank line
            }
            throw ParseError("malformed data line " + std::to_string(line_no) + ": " + line);
        }
        if (!(ss >> out.i >> out.j >> out.k >> out.l)) {
            throw ParseError("expected four indices on line " + std::to_string(line_no) + ": " + line);
        }
        return true;
    }
    return false;
}

void check_range(int idx, int norb, int line_no) {
    if (idx < 0 || idx > norb) {
        throw BoundsError("orbital index " + std::to_string(idx) + " out of range [0, " +
                          std::to_string(norb) + "] on line " + std::to_string(line_no));
    }
}

constexpr double kDupTol = 1e-12;

}  // namespace

double ValidationReport::worst() const {
    double w = 0.0;
    for (const auto& v : violations) {
        w = std::max(w, v.deviation);
    }
    return w;
}

MolecularIntegrals parse_fcidump(std::istream& in) {
    int line_no = 0;
    const Header h = parse_header(in, line_no);
    if (!h.present) {
        throw ParseError("FCIDUMP must start with an &FCI namelist header");
    }
    MolecularIntegrals mi;
    mi.n_spatial = h.norb;
    mi.n_electrons = h.nelec;
    mi.ms2 = h.ms2;
    mi.orbital_irreps.reserve(h.orbsym.size());
    for (const int s : h.orbsym) {
        mi.orbital_irreps.push_back(s - 1);  // Molpro labels are 1-based
    }
    const int n = mi.n_spatial;
    mi.one_body = Eigen::MatrixXd::Zero(n, n);
    mi.two_body.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);

    std::vector<std::uint8_t> h_seen(static_cast<std::size_t>(n) * n, 0);
    std::vector<std::uint8_t> g_seen(mi.two_body.size(), 0);
    bool core_seen = false;

    DataLine d{};
    while (read_data_line(in, line_no, d)) {
        check_range(d.i, n, line_no);
        check_range(d.j, n, line_no);
        check_range(d.k, n, line_no);
        check_range(d.l, n, line_no);
        if (d.i == 0 && d.j == 0 && d.k == 0 && d.l == 0) {
            if (core_seen && std::abs(mi.core_energy - d.value) > kDupTol) {
                throw ConsistencyError("conflicting core energy on line " + std::to_string(line_no));
            }
            mi.core_energy = d.value;
            core_seen = true;
        } else if (d.k == 0 && d.l == 0) {
            if (d.i == 0 || d.j == 0) {
                throw ParseError("unsupported index slot on line " + std::to_string(line_no));
            }
            const int p = d.i - 1;
            const int q = d.j - 1;
            const auto key = static_cast<std::size_t>(std::max(p, q)) * n + std::min(p, q);
            if (h_seen[key] && std::abs(mi.one_body(p, q) - d.value) > kDupTol) {
                throw ConsistencyError("conflicting one-body entry on line " + std::to_string(line_no));
            }
            h_seen[key] = 1;
            mi.one_body(p, q) = d.value;
            mi.one_body(q, p) = d.value;
        } else if (d.i != 0 && d.j != 0 && d.k != 0 && d.l != 0) {
            const int p = d.i - 1, q = d.j - 1, r = d.k - 1, s = d.l - 1;
            const int pq_lo = std::min(p, q), pq_hi = std::max(p, q);
            const int rs_lo = std::min(r, s), rs_hi = std::max(r, s);
            int a = pq_hi, b = pq_lo, c = rs_hi, e = rs_lo;
            if (a < c || (a == c && b < e)) {
                std::swap(a, c);
                std::swap(b, e);
            }
            const auto key = ((static_cast<std::size_t>(a) * n + b) * n + c) * n + e;
            if (g_seen[key] && std::abs(mi.g(a, b, c, e) - d.value) > kDupTol) {
                throw ConsistencyError("conflicting two-body entry on line " + std::to_string(line_no));
            }
            g_seen[key] = 1;
            const int P[2] = {p, q};
            const int R[2] = {r, s};
            for (int x = 0; x < 2; ++x) {
                for (int y = 0; y < 2; ++y) {
                    mi.g(P[x], P[1 - x], R[y], R[1 - y]) = d.value;
                    mi.g(R[y], R[1 - y], P[x], P[1 - x]) = d.value;
                }
            }
        } else {
            throw ParseError("unsupported index pattern on line " + std::to_string(line_no));
        }
    }
    return mi;
}

MolecularIntegrals parse_fcidump_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return parse_fcidump(in);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

PropertyIntegrals parse_property_integrals(std::istream& in, const std::string& component,
                                           int n_spatial_hint) {
    int line_no = 0;
    const Header h = parse_header(in, line_no);
    int n = h.present ? h.norb : n_spatial_hint;
    if (h.present && n_spatial_hint > 0 && h.norb != n_spatial_hint) {
        throw ConsistencyError("property file NORB does not match parent integrals");
    }
    if (n < 1) {
        throw ParseError("property file needs a NORB header or an n_spatial hint");
    }
    PropertyIntegrals pi;
    pi.component = component;
    pi.one_body = Eigen::MatrixXd::Zero(n, n);
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) * n, 0);
    bool nuc_seen = false;

    DataLine d{};
    while (read_data_line(in, line_no, d)) {
        check_range(d.i, n, line_no);
        check_range(d.j, n, line_no);
        if (d.k != 0 || d.l != 0) {
            throw ParseError("property files hold one-body entries only (line " +
                             std::to_string(line_no) + ")");
        }
        if (d.i == 0 && d.j == 0) {
            if (nuc_seen && std::abs(pi.nuclear_term - d.value) > kDupTol) {
                throw ConsistencyError("conflicting nuclear term on line " + std::to_string(line_no));
            }
            pi.nuclear_term = d.value;
            nuc_seen = true;
        } else if (d.i != 0 && d.j != 0) {
            const int p = d.i - 1;
            const int q = d.j - 1;
            const auto key = static_cast<std::size_t>(std::max(p, q)) * n + std::min(p, q);
            if (seen[key] && std::abs(pi.one_body(p, q) - d.value) > kDupTol) {
                throw ConsistencyError("conflicting entry on line " + std::to_string(line_no));
            }
            seen[key] = 1;
            pi.one_body(p, q) = d.value;
            pi.one_body(q, p) = d.value;
        } else {
            throw ParseError("unsupported index pattern on line " + std::to_string(line_no));
        }
    }
    return pi;
}

PropertyIntegrals parse_property_integrals_file(const std::string& path,
                                                const std::string& component,
                                                int n_spatial_hint) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path);
    }
    try {
        return parse_property_integrals(in, component, n_spatial_hint);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_fcidump(std::ostream& out, const MolecularIntegrals& mi) {
    const int n = mi.n_spatial;
    out << "&FCI NORB=" << n << ",NELEC=" << mi.n_electrons << ",MS2=" << mi.ms2 << ",\n ORBSYM=";
    for (int p = 0; p < n; ++p) {
        out << (mi.orbital_irreps[p] + 1) << (p + 1 < n ? "," : ",\n");
    }
    out << " ISYM=1,\n&END\n";
    char buf[96];
    auto emit = [&](double v, int i, int j, int k, int l) {
        std::snprintf(buf, sizeof(buf), " % .16E %3d %3d %3d %3d\n", v, i, j, k, l);
        out << buf;
    };
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q <= p; ++q) {
            for (int r = 0; r <= p; ++r) {
                const int smax = (r == p) ? q : r;
                for (int s = 0; s <= smax; ++s) {
                    const double v = mi.g(p, q, r, s);
                    if (v != 0.0) {
                        emit(v, p + 1, q + 1, r + 1, s + 1);
                    }
                }
            }
        }
    }
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q <= p; ++q) {
            if (mi.one_body(p, q) != 0.0) {
                emit(mi.one_body(p, q), p + 1, q + 1, 0, 0);
            }
        }
    }
    emit(mi.core_energy, 0, 0, 0, 0);
}

ValidationReport validate_integrals(const MolecularIntegrals& mi) {
    ValidationReport report;
    const int n = mi.n_spatial;
    if (n < 1) {
        report.violations.push_back({"n_spatial >= 1", 1.0});
        return report;
    }
    double gmax = 0.0;
    for (const double v : mi.two_body) {
        gmax = std::max(gmax, std::abs(v));
    }
    const double scale = std::max(1.0, gmax);

    double dev = (mi.one_body - mi.one_body.transpose()).cwiseAbs().maxCoeff();
    if (dev > 1e-12 * std::max(1.0, mi.one_body.cwiseAbs().maxCoeff())) {
        report.violations.push_back({"one_body hermiticity", dev});
    }
    double worst8 = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            for (int r = 0; r < n; ++r) {
                for (int s = 0; s < n; ++s) {
                    const double ref = mi.g(p, q, r, s);
                    const double alts[3] = {mi.g(q, p, r, s), mi.g(p, q, s, r), mi.g(r, s, p, q)};
                    for (const double a : alts) {
                        worst8 = std::max(worst8, std::abs(a - ref));
                    }
                }
            }
        }
    }
    if (worst8 > 1e-12 * scale) {
        report.violations.push_back({"two_body 8-fold permutational symmetry", worst8});
    }
    for (const int s : mi.orbital_irreps) {
        if (s < 0 || s > 7) {
            report.violations.push_back({"orbital irrep labels in declared abelian group", 1.0});
            break;
        }
    }
    return report;
}

}  // namespace avqe
