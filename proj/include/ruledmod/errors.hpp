#pragma once

#include <stdexcept>

namespace ruledmod {

// Invalid argument values: malformed rationals, ranks out of range,
// non-integral classes where integral ones are required, empty ranges.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed input that falls outside the hypotheses backing the
// requested computation (for example an existence query at genus != 1).
// The message states the failed hypothesis.
class hypothesis_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ruledmod
