#include "aggar/csv_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <system_error>

#include "aggar/errors.hpp"

namespace aggar::io {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_number(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) throw ValidationError("not a number: '" + s + "'");
    return v;
}

void write_header_comment(std::ostream& os, const std::string& json_text) { os << "# " << json_text << '\n'; }

void write_moments_csv(std::ostream& os, const MomentSequence& u) {
    os << "k,u_k\n";
    for (std::size_t k = 1; k <= u.order(); ++k) os << k << ',' << format_number(u[k]) << '\n';
}

void write_ar_csv(std::ostream& os, const ARCoefficients& a) {
    os << "k,a_k,S_k\n";
    for (std::size_t k = 1; k <= a.order(); ++k) {
        os << k << ',' << format_number(a[k]) << ',' << format_number(a.partial_sums[k]) << '\n';
    }
}

void write_abel_csv(std::ostream& os, const std::vector<AbelRow>& table) {
    os << "j,r_j,a_r\n";
    for (const auto& row : table) os << row.j << ',' << format_number(row.r) << ',' << format_number(row.a) << '\n';
}

void write_path_csv(std::ostream& os, std::span<const double> path) {
    os << "t,X\n";
    for (std::size_t t = 0; t < path.size(); ++t) os << t + 1 << ',' << format_number(path[t]) << '\n';
}

void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples) {
    os << "re_z,im_z,re_m,im_m,re_a,im_a\n";
    for (const auto& s : samples) {
        os << format_number(s.z.real()) << ',' << format_number(s.z.imag()) << ',' << format_number(s.m.real())
           << ',' << format_number(s.m.imag()) << ',' << format_number(s.a.real()) << ','
           << format_number(s.a.imag()) << '\n';
    }
}

MomentsFile read_moments_csv(std::istream& is) {
    MomentsFile out;
    std::vector<double> u{1.0};
    std::string line;
    bool seen_columns = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (!out.header_json) {
                const auto start = line.find_first_not_of("# ");
                if (start != std::string::npos) out.header_json = line.substr(start);
            }
            continue;
        }
        if (!seen_columns) {
            if (line != "k,u_k") throw ValidationError("moments CSV: expected header 'k,u_k', got '" + line + "'");
            seen_columns = true;
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ValidationError("moments CSV line " + std::to_string(lineno) + ": expected 'k,u_k'");
        }
        const double k = parse_number(line.substr(0, comma));
        if (k != static_cast<double>(u.size())) {
            throw ValidationError("moments CSV line " + std::to_string(lineno) + ": expected k = " +
                                  std::to_string(u.size()));
        }
        u.push_back(parse_number(line.substr(comma + 1)));
    }
    if (!seen_columns) throw ValidationError("moments CSV: missing 'k,u_k' header");
    out.moments = moment_sequence_from_values(std::move(u));
    return out;
}

}  // namespace aggar::io
