#pragma once

// CSV and JSON readers/writers for distributions.
//
// Univariate CSV has the header `value,prob`, bivariate CSV `x,y,prob` (long
// form). JSON files mirror them as {"support": [...], "probs": [...]} and
// {"x_support": [...], "y_support": [...], "pmf": [[...]]}. Files whose mass
// column holds only integers are read as integer weights; any other numbers
// must be probabilities summing to one.

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "stochord/distribution.hpp"

namespace stochord::io {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads a file by extension (.json, otherwise CSV). With `require_weights`
/// the mass column must be integral.
UnivariateDist read_univariate(const std::string& path, bool require_weights = false);
BivariateDist read_bivariate(const std::string& path, bool require_weights = false);

UnivariateDist parse_univariate_csv(std::istream& in, bool require_weights = false);
BivariateDist parse_bivariate_csv(std::istream& in, bool require_weights = false);

/// Integer weights are written when present, otherwise probabilities with 17
/// significant digits. Bivariate output lists every cell, zeros included.
void write_univariate_csv(std::ostream& out, const UnivariateDist& q);
void write_bivariate_csv(std::ostream& out, const BivariateDist& r);

/// "fnv1a64:" followed by 16 hex digits of the file contents.
std::string file_digest(const std::string& path);

}  // namespace stochord::io
