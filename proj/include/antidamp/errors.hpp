#pragma once

#include <stdexcept>

namespace antidamp {

/// A computation could not deliver a result within its stated accuracy
/// (step-size underflow, rejected fit, overflow, unsound truncation).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace antidamp
