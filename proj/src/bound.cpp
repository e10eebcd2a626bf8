#include "linkcensus/bound.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

#include "linkcensus/errors.hpp"

namespace linkcensus {

namespace mp = boost::multiprecision;

BoundValue bound(int n, int digits) {
    if (n < 1) throw PreconditionError("bound needs n >= 1");
    mp::cpp_int top = 1, bottom = 2;
    for (int k = 2; k <= 2 * n + 1; ++k) top *= k;
    for (int k = 0; k < 2 * n; ++k) top *= 6;
    for (int k = 2; k <= n; ++k) bottom *= k;
    for (int k = 0; k < n; ++k) bottom *= 24;
    const mp::cpp_rational value(top, bottom);

    BoundValue out;
    out.numerator = mp::numerator(value).str();
    out.denominator = mp::denominator(value).str();
    // Decimal rendering only: a wide binary float holds the quotient far
    // beyond the printed precision.
    const mp::cpp_bin_float_100 q = mp::cpp_bin_float_100(mp::numerator(value)) / mp::cpp_bin_float_100(mp::denominator(value));
    out.scientific = q.str(digits, std::ios_base::scientific);
    out.approx = q.convert_to<double>();
    return out;
}

}  // namespace linkcensus
