#pragma once

#include <cstdint>

#include <boost/rational.hpp>

namespace fiber {

/// Exact scalar for small-rational checks: Element<Rational>, Tensor<Rational>.
using Rational = boost::rational<std::int64_t>;

}  // namespace fiber
