// Input formats: XYZ molecules, CSV point lists, and the plain-text complex
// format.
//
// Complex format, one simplex per line:
//     [value] v0 v1 ... vk
// '#' starts a comment. The optional leading value is recognised by being a
// non-integer literal (it contains '.', an exponent, or is inf); otherwise
// every token is a vertex id and the value is 0. Missing faces are added at
// the smallest value of their listed cofaces.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "mayer/simplicial.hpp"

namespace mayer {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

PointCloud parse_xyz(std::istream& in);
PointCloud parse_xyz(const std::filesystem::path& path);

PointCloud parse_points(std::istream& in);
PointCloud parse_points(const std::filesystem::path& path);

/// Warnings (face completion) go to `warnings` if given, else to stderr.
FilteredComplex parse_complex(std::istream& in, std::vector<std::string>* warnings = nullptr);
FilteredComplex parse_complex(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

/// Writes every simplex with an explicit value; parse_complex reads it back
/// to an identical complex.
std::string serialize_complex(const FilteredComplex& k);

/// Shortest round-trip decimal; always carries a '.', exponent, or "inf".
std::string format_value(double v);

}  // namespace mayer
