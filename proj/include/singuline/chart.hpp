#pragma once

#include "singuline/box.hpp"
#include "singuline/mpoly.hpp"

namespace singuline {

// Charts covering R^2 by three copies of [-1,1]^2:
//   Identity: (x, y) = (u, v)
//   ChartU:   (x, y) = (1/u, v/u)   covers |x| >= max(1, |y|)
//   ChartV:   (x, y) = (u/v, 1/v)   covers |y| >= max(1, |x|)
enum class ChartId { Identity, ChartU, ChartV };

const char* chart_name(ChartId c);

// Index of the chart coordinate whose power clears denominators
// (-1 none, 0 first coordinate, 1 second coordinate).
int chart_clear_axis(ChartId c);

// Numerator polynomial of p composed with the chart map, after multiplying
// by the smallest power of the clearing coordinate that clears all
// denominators. exponent records that power; the clearing coordinate does
// not divide poly. z is untouched.
struct ClearedPoly {
    MPoly poly;
    int exponent = 0;
};
ClearedPoly chart_clear(const MPoly& p, ChartId c);

// Division num/den over extended reals: infinite endpoints appear when den
// touches 0. The result is the interval hull of the true image, intended
// only for reporting and overlap tests, never for further arithmetic.
DInterval extended_div(const DInterval& num, const DInterval& den);

// Chart box mapped back to original (x, y) coordinates; boxes touching the
// chart boundary (clearing coordinate = 0) get infinite endpoints.
Box2 back_map_box(const Box2& b, ChartId c);

} // namespace singuline
