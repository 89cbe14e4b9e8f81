#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace treebed {

// All arithmetic in the library is exact. Rat never touches floating point.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class Errc {
    parse,        // malformed input text
    invalid_tree, // cycle, disconnected, bad weight, duplicate edge
    not_on_tree,  // TreePoint does not belong to the tree
    bound,        // leaf-count bound violated / impossible instance
    dimension,    // dimension or shape mismatch
    geometry,     // invalid polyline / not a geodesic / bad splice range
    guard,        // precondition on a search/sweep configuration
    internal,     // invariant breach that signals a bug, not bad input
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Parses "p", "p/q" or a plain decimal like "1.25" into an exact rational.
Rat parse_rational(std::string_view text);

/// Renders as "p" or "p/q" (denominator omitted when 1). Never decimal.
std::string format_rational(const Rat& r);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int sign_of(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

} // namespace treebed
