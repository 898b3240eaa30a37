#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "circjoin/join.hpp"

namespace circjoin::cli {

/// Malformed input text. Line and column are 1-based; zero when the error
/// is structural rather than syntactic (see `path`).
class ParseError : public Error {
  public:
    ParseError(const std::string& message, std::size_t line, std::size_t column, std::string path = {});

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& path() const { return path_; }

  private:
    std::size_t line_;
    std::size_t column_;
    std::string path_;
};

/// A join as written by users:
///
///     {"blocks": [[0, 1, 0], [0, 1, 1, 1, 1]],
///      "couplings": [[0, 1], [1, 0]],
///      "labels": ["G", "H"]}
///
/// Entries are bare reals or [re, im] pairs. `couplings` may be omitted for
/// a single block; its diagonal is ignored.
struct JoinDocument {
    JoinSpec spec;
    std::vector<std::string> labels;
};

JoinDocument parse_document(std::string_view text);

/// Canonical form: two-space indented JSON, keys in the order blocks,
/// couplings, labels, integral values written without a fraction. Parsing
/// the output and emitting again gives the same bytes.
std::string emit_document(const JoinDocument& document);

/// Phase vector file: a JSON array of reals or an object with a "theta" array.
std::vector<double> parse_phase_state(std::string_view text);

/// 17 significant digits, '.' as decimal separator regardless of locale.
/// Negative zero prints as 0.
std::string format_real(double value);

/// "re+imi" / "re-imi" with 17 significant digits.
std::string format_complex(Complex value);

} // namespace circjoin::cli
