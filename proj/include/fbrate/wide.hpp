#pragma once

#include <boost/multiprecision/float128.hpp>

namespace fbrate {

/// IEEE binary128. The closed-form route switches to it when its
/// partial-fraction sum cancels too strongly for binary64.
using WideReal = boost::multiprecision::float128;

}  // namespace fbrate
