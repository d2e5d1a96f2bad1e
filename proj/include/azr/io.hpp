#ifndef AZR_IO_HPP
#define AZR_IO_HPP

/*
 * File formats shared by the CLI and the tests.
 *
 * Matrices travel as JSON:
 *   { "dim": d, "entries": [[[re,im], ...], ...], "label": "optional" }
 * Doubles are serialized with shortest-round-trip precision, so a value
 * written by any command re-parses to the identical bits.
 *
 * Scan reports serialize to CSV (one row per grid point) and JSON; suite
 * results to JSON.  Serialization is fully deterministic: fixed key
 * order, no timestamps.
 */

#include <iosfwd>
#include <string>

#include "azr/channels.hpp"
#include "azr/matkit.hpp"
#include "azr/propcheck.hpp"

namespace azr::io {

struct MatrixFile {
    int dim = 0;
    CMat matrix;
    std::string label;
};

// Throws ParseError on malformed input.  require_hermitian enforces the
// state-input gate (residual above 1e-8 rejected).
MatrixFile parse_matrix_json(const std::string& text, bool require_hermitian = false);
MatrixFile load_matrix(const std::string& path, bool require_hermitian = false);

std::string matrix_to_json(const CMat& m, const std::string& label = "");
void write_matrix(const std::string& path, const CMat& m, const std::string& label = "");

std::string to_json(const channels::DpiReport& report);
void write_csv(const channels::DpiReport& report, std::ostream& os);

std::string to_json(const propcheck::SuiteResult& result);

// %.17g rendering used in CSV output; parses back to identical bits.
std::string format_double(double x);

} // namespace azr::io

#endif
