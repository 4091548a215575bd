#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace buchset {

// A dense bit window would exceed the configured allocation cap.
class window_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The complement of a would-be gapset is not closed under addition.
// Carries a witness pair x, y with x + y landing in the gapset.
class closure_error : public std::runtime_error {
public:
    closure_error(std::int64_t x, std::int64_t y)
        : std::runtime_error("complement not closed under addition: " +
                             std::to_string(x) + "+" + std::to_string(y) + "=" +
                             std::to_string(x + y) + " is a gap"),
          x_(x), y_(y) {}

    std::int64_t x() const { return x_; }
    std::int64_t y() const { return y_; }
    std::int64_t sum() const { return x_ + y_; }

private:
    std::int64_t x_;
    std::int64_t y_;
};

// No midpoint-anchored interval decomposition exists at the requested n.
class decomposition_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or mismatched survey checkpoint file.
class checkpoint_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace buchset
