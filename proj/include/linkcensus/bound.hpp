#pragma once

#include <string>

namespace linkcensus {

/// Lower bound on the number of connected combinatorial triangulations of
/// n tetrahedra up to isomorphism: (2n+1)! 6^(2n) / (2 n! 24^n).
struct BoundValue {
    std::string numerator;    // of the reduced fraction
    std::string denominator;  // "1" when the value is an integer
    std::string scientific;   // e.g. "6.4435e+12", rounded from the exact value
    double approx = 0;
};

/// Throws PreconditionError for n < 1.
BoundValue bound(int n, int digits = 4);  // digits after the decimal point

}  // namespace linkcensus
