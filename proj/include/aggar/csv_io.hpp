#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aggar/complexfn.hpp"
#include "aggar/moments.hpp"
#include "aggar/wold.hpp"

namespace aggar::io {

/// Shortest decimal form that parses back to the same double.
[[nodiscard]] std::string format_number(double v);

/// Whole-string decimal parse; throws ValidationError on junk.
[[nodiscard]] double parse_number(const std::string& s);

/// "# <json>" first line carrying the resolved configuration.
void write_header_comment(std::ostream& os, const std::string& json_text);

/// "k,u_k", rows k = 1..K.
void write_moments_csv(std::ostream& os, const MomentSequence& u);
/// "k,a_k,S_k", rows k = 1..K.
void write_ar_csv(std::ostream& os, const ARCoefficients& a);
/// "j,r_j,a_r".
void write_abel_csv(std::ostream& os, const std::vector<AbelRow>& table);
/// "t,X", t = 1..T.
void write_path_csv(std::ostream& os, std::span<const double> path);
/// "re_z,im_z,re_m,im_m,re_a,im_a".
void write_grid_csv(std::ostream& os, const std::vector<GridSample>& samples);

struct MomentsFile {
    /// Text of the "# {...}" header comment, if the file had one.
    std::optional<std::string> header_json;
    MomentSequence moments;
};

/// Parses the output of write_moments_csv (optionally preceded by header
/// comments). Rows must be k = 1, 2, ... in order; u_0 = 1 is implied.
[[nodiscard]] MomentsFile read_moments_csv(std::istream& is);

}  // namespace aggar::io
